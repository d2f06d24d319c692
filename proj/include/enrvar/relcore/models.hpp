#pragma once

#include <functional>
#include <vector>

#include "enrvar/relcore/horn.hpp"

namespace enrvar::relcore {

// Every model of t on the carrier "0".."n-1" (labelled), in a deterministic order.
void for_each_model(const HornTheory& t, std::size_t n, const std::function<bool(const FinStructure&)>& fn);
std::vector<FinStructure> enumerate_models(const HornTheory& t, std::size_t n);

// Canonical relabelling under carrier permutations: two structures are
// isomorphic iff their canonical forms are equal. Intended for small carriers.
FinStructure canonical_form(const FinStructure& x);
bool are_isomorphic(const FinStructure& a, const FinStructure& b);

// Models of t with exactly n elements, one per isomorphism class, each in
// canonical form; ordered by canonical form.
std::vector<FinStructure> models_up_to_iso(const HornTheory& t, std::size_t n);
// Same for sizes 0..max_n (or 1..max_n when include_empty is false).
std::vector<FinStructure> models_up_to_iso_upto(const HornTheory& t, std::size_t max_n, bool include_empty = true);

// All Π-structures with n elements up to isomorphism.
std::vector<FinStructure> structures_up_to_iso(const SignaturePtr& sig, std::size_t n);

}  // namespace enrvar::relcore
