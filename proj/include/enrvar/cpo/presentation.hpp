#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enrvar/relcore.hpp"

namespace enrvar::cpo {

using relcore::FinStructure;
using relcore::Map;

// p ◁ U with U a nonempty chain of the preorder.
struct Cover {
  int element = 0;
  std::vector<int> chain;
  bool operator==(const Cover&) const = default;
};

struct CpoPresentation {
  FinStructure preorder;  // over the single relation "<="
  std::vector<Cover> covers;
  // Throws InvalidPresentation unless the preorder is one and every cover
  // ranges over a nonempty chain.
  void check() const;
};

struct FreeCpo {
  FinStructure poset;
  Map unit;
};

// Adds p ≤ max U for each cover until stable, then takes the poset
// reflection. Finite posets are their own ω-cpos.
FreeCpo free_omega_cpo(const CpoPresentation& p);

// A ≤-greatest element of the chain under the preorder.
int chain_top(const FinStructure& preorder, const std::vector<int>& chain);

struct MorphismCheck {
  bool ok = true;
  std::string reason;
  std::optional<std::size_t> cover;  // index of a violated cover
  explicit operator bool() const { return ok; }
};

// Monotone and preserves covers: f(p) ◁' f[U] in q.
MorphismCheck is_presentation_morphism(const Map& f, const CpoPresentation& p, const CpoPresentation& q);
// Target poset regarded as a presentation: p ◁ U iff p ≤ ⋁U.
MorphismCheck is_presentation_morphism(const Map& f, const CpoPresentation& p, const FinStructure& poset);

// All covers a poset carries when regarded as a presentation.
CpoPresentation as_presentation(const FinStructure& poset);

}  // namespace enrvar::cpo
