#include "enrvar/cpo/presentation.hpp"

#include <algorithm>
#include <set>

#include "enrvar/errors.hpp"

namespace enrvar::cpo {

namespace {

const relcore::HornTheory& preorders() {
  static const relcore::HornTheory t = relcore::theory_preord();
  return t;
}
const relcore::HornTheory& posets() {
  static const relcore::HornTheory t = relcore::theory_pos();
  return t;
}

bool leq(const FinStructure& x, int a, int b) { return x.has_edge(0, {a, b}); }

void check_order_signature(const FinStructure& x, const char* what) {
  if (!relcore::same_signature(x.signature_ptr(), preorders().signature_ptr()))
    throw InvalidPresentation(std::string(what) + " must be over the single relation '<='");
}

}  // namespace

int chain_top(const FinStructure& preorder, const std::vector<int>& chain) {
  if (chain.empty()) throw InvalidPresentation("cover over an empty chain");
  int top = chain.front();
  for (int u : chain)
    if (leq(preorder, top, u)) top = u;
  return top;
}

void CpoPresentation::check() const {
  check_order_signature(preorder, "presentation preorder");
  if (!relcore::is_model(preorder, preorders())) throw InvalidPresentation("presentation order is not a preorder");
  const int n = static_cast<int>(preorder.size());
  for (const auto& c : covers) {
    if (c.element < 0 || c.element >= n) throw InvalidPresentation("cover element outside the carrier");
    if (c.chain.empty()) throw InvalidPresentation("cover over an empty set");
    for (int u : c.chain) {
      if (u < 0 || u >= n) throw InvalidPresentation("cover chain element outside the carrier");
      for (int v : c.chain)
        if (!leq(preorder, u, v) && !leq(preorder, v, u))
          throw InvalidPresentation("cover of '" + preorder.id(c.element) + "' is not over a chain: '" + preorder.id(u) +
                                    "' and '" + preorder.id(v) + "' are incomparable");
    }
  }
}

FreeCpo free_omega_cpo(const CpoPresentation& p) {
  p.check();
  const std::size_t n = p.preorder.size();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (const auto& t : p.preorder.edges(0)) le[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = 1;
  // Tops are taken in the original preorder; extensions only add pairs, so a
  // chain's top stays its top.
  std::vector<std::pair<std::size_t, std::size_t>> forced;
  for (const auto& c : p.covers)
    forced.push_back({static_cast<std::size_t>(c.element), static_cast<std::size_t>(chain_top(p.preorder, c.chain))});
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : forced)
      if (!le[a][b]) {
        le[a][b] = 1;
        changed = true;
      }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (le[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (le[k][j] && !le[i][j]) {
              le[i][j] = 1;
              changed = true;
            }
  }
  std::vector<relcore::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) edges.push_back({0, {static_cast<int>(i), static_cast<int>(j)}});
  std::vector<std::string> ids(p.preorder.carrier().begin(), p.preorder.carrier().end());
  FinStructure closed(p.preorder.signature_ptr(), ids, std::move(edges));
  auto r = relcore::chase(closed, posets());
  return {std::move(r.model), std::move(r.unit)};
}

MorphismCheck is_presentation_morphism(const Map& f, const CpoPresentation& p, const CpoPresentation& q) {
  MorphismCheck res;
  if (!relcore::is_pi_morphism(f, p.preorder, q.preorder)) {
    res.ok = false;
    res.reason = "map is not monotone";
    return res;
  }
  for (std::size_t i = 0; i < p.covers.size(); ++i) {
    const auto& c = p.covers[i];
    std::set<int> image;
    for (int u : c.chain) image.insert(f[static_cast<std::size_t>(u)]);
    bool found = false;
    for (const auto& d : q.covers) {
      if (d.element != f[static_cast<std::size_t>(c.element)]) continue;
      if (std::set<int>(d.chain.begin(), d.chain.end()) == image) {
        found = true;
        break;
      }
    }
    if (!found) {
      res.ok = false;
      res.reason = "cover of '" + p.preorder.id(c.element) + "' is not preserved";
      res.cover = i;
      return res;
    }
  }
  return res;
}

MorphismCheck is_presentation_morphism(const Map& f, const CpoPresentation& p, const FinStructure& poset) {
  MorphismCheck res;
  check_order_signature(poset, "target");
  if (!relcore::is_pi_morphism(f, p.preorder, poset)) {
    res.ok = false;
    res.reason = "map is not monotone";
    return res;
  }
  for (std::size_t i = 0; i < p.covers.size(); ++i) {
    const auto& c = p.covers[i];
    std::vector<int> image;
    for (int u : c.chain) image.push_back(f[static_cast<std::size_t>(u)]);
    if (!leq(poset, f[static_cast<std::size_t>(c.element)], chain_top(poset, image))) {
      res.ok = false;
      res.reason = "'" + p.preorder.id(c.element) + "' is not below the supremum of its cover";
      res.cover = i;
      return res;
    }
  }
  return res;
}

CpoPresentation as_presentation(const FinStructure& poset) {
  check_order_signature(poset, "poset");
  CpoPresentation out{poset, {}};
  const std::size_t n = poset.size();
  if (n > 16) throw SizeBoundExceeded("as_presentation: carrier too large to list every chain");
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> chain;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) chain.push_back(static_cast<int>(i));
    bool is_chain = true;
    for (int a : chain)
      for (int b : chain) is_chain = is_chain && (leq(poset, a, b) || leq(poset, b, a));
    if (!is_chain) continue;
    int top = chain_top(poset, chain);
    for (std::size_t p = 0; p < n; ++p)
      if (leq(poset, static_cast<int>(p), top)) out.covers.push_back({static_cast<int>(p), chain});
  }
  return out;
}

}  // namespace enrvar::cpo
