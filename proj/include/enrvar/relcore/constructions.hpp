#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "enrvar/relcore/horn.hpp"

namespace enrvar::relcore {

// Componentwise product. Element index is mixed radix, first factor most
// significant. The empty family gives the terminal structure.
FinStructure product(const SignaturePtr& sig, std::span<const FinStructure> family);
FinStructure product(const FinStructure& a, const FinStructure& b);
std::vector<int> product_index_to_components(std::size_t index, std::span<const std::size_t> sizes);
std::size_t product_components_to_index(std::span<const int> comps, std::span<const std::size_t> sizes);

// Calls fn on every Π-morphism x -> y in lexicographic order of the value
// vector. Stops when fn returns false.
void for_each_morphism(const FinStructure& x, const FinStructure& y, const std::function<bool(const Map&)>& fn);
// Same with some values fixed in advance (entries >= 0 in fixed).
void for_each_morphism_extending(const FinStructure& x, const FinStructure& y, const Map& fixed,
                                 const std::function<bool(const Map&)>& fn);
std::vector<Map> enumerate_morphisms(const FinStructure& x, const FinStructure& y);
std::size_t count_morphisms(const FinStructure& x, const FinStructure& y);

// The edge clause of the candidate exponential: (f1..fn) is an R-edge of
// [x,y] iff every R-edge of x is sent componentwise to an R-edge of y.
bool exp_edge_holds(const FinStructure& x, const FinStructure& y, std::size_t rel,
                    std::span<const Map* const> maps);

// Candidate exponential [x,y] with its underlying maps.
struct InternalHom {
  FinStructure object;
  std::vector<Map> maps;
  std::map<Map, int> lookup;
  int index_of(const Map& f) const;
};

// Builds and certifies [x,y]: it must be a model of t and the evaluation
// map x × [x,y] -> y must be a morphism. Throws NotClosed otherwise.
InternalHom internal_hom(const FinStructure& x, const FinStructure& y, const HornTheory& t);
InternalHom internal_hom_unchecked(const FinStructure& x, const FinStructure& y);
FinStructure exponential(const FinStructure& x, const FinStructure& y, const HornTheory& t);

// f : z × x -> y (product index z * |x| + x) to g : z -> [x,y].
Map curry(const Map& f, const FinStructure& z, const FinStructure& x, const FinStructure& y, const InternalHom& hom);
Map curry(const Map& f, const FinStructure& z, const FinStructure& x, const FinStructure& y, const HornTheory& t);
Map uncurry(const Map& g, const FinStructure& z, const FinStructure& x, const InternalHom& hom);

}  // namespace enrvar::relcore
