#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enrvar/algebra/signature.hpp"

namespace enrvar::algebra {

using relcore::Map;
using Table = std::vector<int>;

// Cartesian power of carriers over the given argument sorts (first most
// significant in the index); empty list gives the terminal structure.
FinStructure power(const std::vector<FinStructure>& carriers, const std::vector<std::size_t>& sorts,
                   const relcore::SignaturePtr& rel_sig);
FinStructure power(const std::vector<FinStructure>& carriers, const Arity& j, const relcore::SignaturePtr& rel_sig);
FinStructure context_power(const std::vector<FinStructure>& carriers, const syntax::Context& ctx,
                           const relcore::SignaturePtr& rel_sig);

class Algebra {
 public:
  Algebra() = default;
  // tables[op][p] is σ@p over the power of the op's input sorts. Checks
  // shapes and ranges only; see validate_algebra for the enriched laws.
  Algebra(SignaturePtr sig, std::vector<FinStructure> carriers, std::vector<std::vector<Table>> tables);

  const EnrichedSignature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  const std::vector<FinStructure>& carriers() const { return carriers_; }
  const FinStructure& carrier(std::size_t sort) const { return carriers_[sort]; }
  const std::vector<std::vector<Table>>& tables() const { return tables_; }
  const Table& table(std::size_t op, std::size_t p) const { return tables_[op][p]; }
  const Table& table(std::string_view symbol) const;
  std::vector<std::size_t> domain_sizes(std::size_t op) const;
  // Value of σ@p at an argument tuple (element indices, flattened order).
  int apply(std::size_t op, std::size_t p, const std::vector<int>& args) const;

  bool operator==(const Algebra& o) const { return carriers_ == o.carriers_ && tables_ == o.tables_; }

 private:
  SignaturePtr sig_;
  std::vector<FinStructure> carriers_;
  std::vector<std::vector<Table>> tables_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
};
ValidationReport validate_algebra(const Algebra& a);

// Table over context_power(carriers, ctx), index in context order.
Table interpret_term(const Algebra& a, const syntax::Context& ctx, const syntax::Term& t);
int evaluate_term(const Algebra& a, const syntax::Term& t, const std::vector<int>& point);

bool satisfies_equation(const Algebra& a, const syntax::Equation& e);
bool satisfies_relation(const Algebra& a, const syntax::RelationAtom& r);
bool satisfies_chain_relation(const Algebra& a, const syntax::ChainRelation& c, std::size_t bound = 64);
bool satisfies_theory(const Algebra& a, const AnyTheory& t);

struct HomWitness {
  std::size_t op = 0, p = 0;
  std::vector<int> args;
};
struct HomCheck {
  bool ok = true;
  std::string reason;
  std::optional<HomWitness> witness;
  explicit operator bool() const { return ok; }
};
// f[sort] maps A's carrier to B's.
HomCheck is_homomorphism(const std::vector<Map>& f, const Algebra& a, const Algebra& b);

struct HomFamily {
  FinStructure object;
  std::vector<std::vector<Map>> families;  // element -> per-sort maps
};
HomFamily hom_family(const std::vector<FinStructure>& x, const std::vector<FinStructure>& y,
                     const relcore::HornTheory& base);

struct HomObject {
  FinStructure object;
  std::vector<std::vector<Map>> homs;
};
HomObject hom_object(const Algebra& a, const Algebra& b);
HomObject hom_object(const Algebra& a, const Algebra& b, const HomFamily& family);

// The same algebra viewed over the underlying classical signature.
Algebra underlying_algebra(const Algebra& a);
SignaturePtr underlying_signature(const EnrichedSignature& sig);

std::string to_string(const Algebra& a);

}  // namespace enrvar::algebra
