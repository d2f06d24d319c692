#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "enrvar/algebra/algebra.hpp"
#include "enrvar/cpo/presentation.hpp"
#include "enrvar/monad/relmonad.hpp"

namespace enrvar::dsl {

struct TheoryBlock {
  algebra::AnyTheory theory;
  std::vector<std::string> param_names;  // per op; empty for terminal parameters
};

struct ModelBlock {
  std::string name;
  relcore::HornTheory base;
  relcore::FinStructure structure;
};

struct AlgebraBlock {
  std::string name, theory;
  algebra::Algebra algebra;
};

struct MonadBlock {
  monad::RelMonadData monad;
};

struct PresentBlock {
  std::string name;
  cpo::CpoPresentation presentation;
};

using Block = std::variant<TheoryBlock, ModelBlock, AlgebraBlock, MonadBlock, PresentBlock>;

struct TheoryFile {
  std::vector<Block> blocks;

  const TheoryBlock* theory(std::string_view name = {}) const;  // empty name: the first one
  const ModelBlock* model(std::string_view name = {}) const;
  const AlgebraBlock* algebra(std::string_view name = {}) const;
  const MonadBlock* monad(std::string_view name = {}) const;
  const PresentBlock* presentation(std::string_view name = {}) const;
  template <class B>
  std::vector<const B*> all() const {
    std::vector<const B*> out;
    for (const auto& b : blocks)
      if (const auto* p = std::get_if<B>(&b)) out.push_back(p);
    return out;
  }
};

struct ParseOptions {
  // Base for model and presentation-free blocks that omit `base`.
  std::optional<relcore::HornTheory> default_base;
  // Theories visible to `algebra ... of NAME` besides the file's own.
  std::vector<TheoryBlock> theories;
};

// Lex, parse and sort-check; every failure is a ParseError with line and column.
TheoryFile parse_theory(std::string_view text, const ParseOptions& opts = {});
std::string print_theory(const TheoryFile& f);

// Printing single blocks, for tools that emit one object.
std::string print_block(const Block& b);
TheoryBlock theory_block(const algebra::AnyTheory& t);

// Structural equality of the abstract syntax.
bool same_syntax(const TheoryFile& a, const TheoryFile& b);
bool same_theory(const algebra::AnyTheory& a, const algebra::AnyTheory& b);

}  // namespace enrvar::dsl
