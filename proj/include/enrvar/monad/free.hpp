#pragma once

#include <optional>
#include <vector>

#include "enrvar/monad/relmonad.hpp"

namespace enrvar::monad {

// Bounded free algebra on the generators of J: terms in canonical_context(J)
// up to depth_bound, quotiented by ground congruence closure of the
// equations and the base chase over induced edges.
struct FreeAlgebra {
  bool saturated = false;
  std::optional<Algebra> algebra;                // present iff saturated
  std::vector<FinStructure> carriers;            // the closure reached, saturated or not
  std::vector<std::vector<syntax::Term>> representatives;  // [sort][element], first-created term
  std::vector<int> generators;                   // variable of J -> element of its sort
  std::size_t rounds = 0;
};

// Throws SizeBoundExceeded once the closure holds more than size_bound
// classes, InvalidTheory for theories with chain relations.
FreeAlgebra free_algebra(const algebra::AnyTheory& t, const Arity& j, std::size_t depth_bound = 6,
                         std::size_t size_bound = 4096);

struct MonadFromTheory {
  RelMonadData monad;
  std::vector<FreeAlgebra> free;  // per arity
};

// TJ is the free algebra on J and k* the homomorphism extending k, got by
// evaluating representatives. Throws NotSaturated naming the arity.
MonadFromTheory monad_from_theory(const algebra::AnyTheory& t, std::vector<Arity> arities, std::size_t depth_bound = 6,
                                  std::size_t size_bound = 4096);

// Definitions relating t and theory_from_monad(m.monad): forward defines
// sig_<J>_<S>@p by p's representative, backward defines each symbol f of t
// as sig_<J>_<S>@[f(v)](v). Throws NoCorrespondence when an arity of t is
// missing from the truncation.
struct RoundTrip {
  translate::Definitions forward, backward;
};
RoundTrip round_trip_definitions(const algebra::AnyTheory& t, const MonadFromTheory& m);

}  // namespace enrvar::monad
