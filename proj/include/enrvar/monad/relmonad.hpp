#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enrvar/algebra/search.hpp"
#include "enrvar/translate/translate.hpp"

namespace enrvar::monad {

using algebra::Algebra;
using algebra::EnrichedTheory;
using relcore::FinStructure;
using relcore::Map;
using syntax::Arity;

// Finite truncation of a relative monad on the arities in `arities`.
// A morphism k : J -> TK is a tuple over J's variables in flattened order
// (J is a coproduct of terminals); its index is mixed radix with the first
// variable most significant.
struct RelMonadData {
  relcore::HornTheory base;
  syntax::SortSet sorts;
  std::vector<Arity> arities;
  std::vector<std::vector<FinStructure>> T;    // [J][sort]
  std::vector<std::vector<int>> unit;          // [J][variable] -> element of T[J][its sort]
  std::vector<std::vector<std::vector<std::vector<Map>>>> ext;  // [J][K][k][sort]
  std::string name;

  std::size_t index_of(const Arity& j) const;
  // Radices of Hom(J, TK): the size of (TK)_s for each variable of J.
  std::vector<std::size_t> hom_radices(std::size_t j, std::size_t k) const;
  std::size_t hom_count(std::size_t j, std::size_t k) const;
  std::vector<int> decode(std::size_t j, std::size_t k, std::size_t index) const;
  std::size_t encode(std::size_t j, std::size_t k, const std::vector<int>& tuple) const;
};

// J as an object: per sort, the coproduct of n_S terminals.
std::vector<FinStructure> arity_object(const relcore::HornTheory& base, const syntax::SortSet& sorts, const Arity& j);

struct LawReport {
  bool ok = true;
  bool well_formed = true;  // shapes valid, so the laws could be checked
  std::vector<std::string> failures;
  std::size_t checked = 0;
};
// Shapes, unit laws, associativity and admissibility of ext.
LawReport check_relative_monad(const RelMonadData& m);

// σ_{J,S} of type (J, S, (TJ)_S), named sig_<J>_<S>; equations from every
// Kleisli extension and every unit. No law check: callers that need the
// precondition run check_relative_monad first.
EnrichedTheory theory_from_monad(const RelMonadData& m);
std::string monad_op_name(const RelMonadData& m, std::size_t j, std::size_t sort);

// table[J][S][p][x] = σ_{J,S}(p, x), x indexed over A^J.
struct TjAlgebra {
  std::vector<FinStructure> carrier;
  std::vector<std::vector<std::vector<std::vector<int>>>> table;
};

struct TjCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};
TjCheck is_tj_algebra(const TjAlgebra& a, const RelMonadData& m);

Algebra to_theory_algebra(const TjAlgebra& a, const RelMonadData& m, const algebra::SignaturePtr& sig);
TjAlgebra from_theory_algebra(const Algebra& a, const RelMonadData& m);

// TK with σ_J(x) = x*: the Kleisli self-algebra on K.
TjAlgebra kleisli_algebra(const RelMonadData& m, std::size_t k);

// All Tj-algebras on fixed carriers, found from the algebra laws directly.
std::vector<TjAlgebra> enumerate_tj_algebras(const RelMonadData& m, const std::vector<FinStructure>& carriers,
                                             std::uint64_t node_budget = 200'000'000);

// f : A -> B commutes with every σ_J.
bool is_tj_homomorphism(const std::vector<Map>& f, const TjAlgebra& a, const TjAlgebra& b, const RelMonadData& m);

struct PresentationReport {
  translate::EquivalenceReport equivalence;
  LawReport laws;
  std::vector<std::string> failing_equations;  // equations false in some Kleisli self-algebra
  bool pass = true;
};
PresentationReport verify_presentation(const RelMonadData& m, const translate::VerifyOptions& opts = {});

// Builtin truncations over the given arities.
RelMonadData identity_monad(const relcore::HornTheory& base, const syntax::SortSet& sorts, std::vector<Arity> arities);
// TJ = J ⊔ E with E a discrete set of `exceptions` names per sort.
RelMonadData exception_monad(const relcore::HornTheory& base, const syntax::SortSet& sorts, std::vector<Arity> arities,
                             const std::vector<std::vector<std::string>>& exceptions);

// Arities of total size at most n, sort-lexicographic.
std::vector<Arity> arities_up_to(std::size_t sorts, std::size_t n);

}  // namespace enrvar::monad
