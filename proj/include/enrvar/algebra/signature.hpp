#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "enrvar/relcore.hpp"
#include "enrvar/syntax/terms.hpp"

namespace enrvar::algebra {

using relcore::FinStructure;
using syntax::Arity;

struct EnrichedOp {
  std::string name;
  Arity input;
  std::size_t output = 0;
  FinStructure param;
};

// One ordinary symbol σ@p of the underlying classical signature.
struct ClassicalSymbol {
  std::string name;
  std::size_t op = 0;
  std::size_t p = 0;
};

class EnrichedSignature {
 public:
  EnrichedSignature(syntax::SortSet sorts, relcore::HornTheory base, std::vector<EnrichedOp> ops);
  // Every parameter terminal.
  static EnrichedSignature classical(syntax::SortSet sorts, relcore::HornTheory base, const std::vector<syntax::OpDecl>& ops);

  const syntax::SortSet& sorts() const { return sorts_; }
  const relcore::HornTheory& base() const { return base_; }
  const relcore::SignaturePtr& rel_signature() const { return base_.signature_ptr(); }
  const std::vector<EnrichedOp>& ops() const { return ops_; }
  const EnrichedOp& op(std::size_t i) const { return ops_[i]; }
  std::optional<std::size_t> find_op(std::string_view name) const;

  const std::vector<ClassicalSymbol>& symbols() const { return symbols_; }
  const ClassicalSymbol* find_symbol(std::string_view name) const;
  std::size_t symbol_index(std::size_t op, std::size_t p) const { return symbol_offset_[op] + p; }
  const std::string& symbol_name(std::size_t op, std::size_t p) const { return symbols_[symbol_index(op, p)].name; }
  const syntax::ClassicalSignature& classical_signature() const { return classical_; }
  bool all_terminal() const;

 private:
  syntax::SortSet sorts_;
  relcore::HornTheory base_;
  std::vector<EnrichedOp> ops_;
  std::vector<ClassicalSymbol> symbols_;
  std::vector<std::size_t> symbol_offset_;
  std::map<std::string, std::size_t, std::less<>> symbol_index_;
  syntax::ClassicalSignature classical_;
};

using SignaturePtr = std::shared_ptr<const EnrichedSignature>;

// Name of σ@p; the bare name when the parameter is terminal.
std::string classical_name(const EnrichedOp& op, std::size_t p);
syntax::ClassicalSignature underlying_classical(const EnrichedSignature& sig);

struct EnrichedTheory {
  SignaturePtr signature;
  std::vector<syntax::Equation> equations;
  std::string name;
  void check() const;
};

struct ClassicalTheoryWithRelations {
  SignaturePtr signature;
  std::vector<syntax::RelationAtom> relations;
  std::vector<syntax::Equation> equations;
  std::vector<syntax::ChainRelation> chains;
  std::string name;
  void check() const;
};

using AnyTheory = std::variant<EnrichedTheory, ClassicalTheoryWithRelations>;

const EnrichedSignature& signature_of(const AnyTheory& t);
SignaturePtr signature_ptr_of(const AnyTheory& t);
const std::vector<syntax::Equation>& equations_of(const AnyTheory& t);
const std::string& name_of(const AnyTheory& t);

// Bases usable in ω-cpo mode: partial orders.
bool is_poset_base(const relcore::HornTheory& base);

}  // namespace enrvar::algebra
