#include "enrvar/relcore/constructions.hpp"

#include <algorithm>

#include "enrvar/errors.hpp"

namespace enrvar::relcore {

std::vector<int> product_index_to_components(std::size_t index, std::span<const std::size_t> sizes) {
  std::vector<int> comps(sizes.size());
  for (std::size_t k = sizes.size(); k-- > 0;) {
    comps[k] = static_cast<int>(index % sizes[k]);
    index /= sizes[k];
  }
  return comps;
}

std::size_t product_components_to_index(std::span<const int> comps, std::span<const std::size_t> sizes) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) index = index * sizes[k] + static_cast<std::size_t>(comps[k]);
  return index;
}

FinStructure product(const SignaturePtr& sig, std::span<const FinStructure> family) {
  if (family.empty()) return terminal(sig);
  for (const auto& f : family)
    if (!same_signature(f.signature_ptr(), sig)) throw SignatureMismatch("product of structures over different signatures");
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& f : family) {
    sizes.push_back(f.size());
    total *= f.size();
  }
  std::vector<std::string> ids;
  ids.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto comps = product_index_to_components(i, sizes);
    std::string id = "<";
    for (std::size_t k = 0; k < comps.size(); ++k) id += (k ? "," : "") + family[k].id(comps[k]);
    ids.push_back(id + ">");
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < sig->size(); ++r) {
    const std::size_t ar = (*sig)[r].arity;
    // Choose one edge per factor; the product edge is their componentwise zip.
    std::vector<std::size_t> pick(family.size(), 0);
    bool any_empty = std::any_of(family.begin(), family.end(), [&](const FinStructure& f) { return f.edges(r).empty(); });
    if (any_empty) continue;
    for (;;) {
      Tuple t(ar);
      std::vector<int> comps(family.size());
      for (std::size_t pos = 0; pos < ar; ++pos) {
        for (std::size_t k = 0; k < family.size(); ++k) comps[k] = family[k].edges(r)[pick[k]][pos];
        t[pos] = static_cast<int>(product_components_to_index(comps, sizes));
      }
      edges.push_back({r, std::move(t)});
      std::size_t k = family.size();
      while (k > 0) {
        if (++pick[k - 1] < family[k - 1].edges(r).size()) break;
        pick[--k] = 0;
      }
      if (k == 0) break;
    }
  }
  return FinStructure(sig, std::move(ids), std::move(edges));
}

FinStructure product(const FinStructure& a, const FinStructure& b) {
  std::vector<FinStructure> fam{a, b};
  return product(a.signature_ptr(), fam);
}

void for_each_morphism_extending(const FinStructure& x, const FinStructure& y, const Map& fixed,
                                 const std::function<bool(const Map&)>& fn) {
  if (!same_signature(x.signature_ptr(), y.signature_ptr())) throw SignatureMismatch("morphisms between different signatures");
  const std::size_t n = x.size();
  const auto& sig = x.signature();
  // Nullary edges.
  for (std::size_t r = 0; r < sig.size(); ++r)
    if (sig[r].arity == 0 && !x.edges(r).empty() && y.edges(r).empty()) return;
  // Edges grouped by their largest entry, checked as soon as it is assigned.
  std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> due(n);
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (const auto& t : x.edges(r))
      if (!t.empty()) due[static_cast<std::size_t>(*std::max_element(t.begin(), t.end()))].push_back({r, &t});
  // Dense membership tables for y, indexed by the tuple read in base |y|.
  const std::size_t m = y.size();
  std::vector<std::vector<char>> dense(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < sig[r].arity && cells <= (1u << 20); ++k) cells *= m;
    if (sig[r].arity == 0 || cells > (1u << 20)) continue;
    dense[r].assign(cells, 0);
    for (const auto& t : y.edges(r)) {
      std::size_t code = 0;
      for (int a : t) code = code * m + static_cast<std::size_t>(a);
      dense[r][code] = 1;
    }
  }
  Map f(n, -1);
  Tuple img;
  auto fits = [&](std::size_t i) {
    for (const auto& [r, t] : due[i]) {
      if (!dense[r].empty()) {
        std::size_t code = 0;
        for (int a : *t) code = code * m + static_cast<std::size_t>(f[static_cast<std::size_t>(a)]);
        if (!dense[r][code]) return false;
        continue;
      }
      img.clear();
      for (int a : *t) img.push_back(f[static_cast<std::size_t>(a)]);
      if (!y.has_edge(r, img)) return false;
    }
    return true;
  };
  auto lo = [&](std::size_t i) { return i < fixed.size() && fixed[i] >= 0 ? fixed[i] : 0; };
  auto hi = [&](std::size_t i) { return i < fixed.size() && fixed[i] >= 0 ? fixed[i] + 1 : static_cast<int>(m); };
  if (n == 0) {
    fn(f);
    return;
  }
  // Iterative backtracking: position i holds its next candidate value.
  std::size_t i = 0;
  f[0] = lo(0) - 1;
  while (true) {
    if (++f[i] >= hi(i)) {
      f[i] = -1;
      if (i == 0) return;
      --i;
      continue;
    }
    if (!fits(i)) continue;
    if (i + 1 == n) {
      if (!fn(f)) return;
      continue;
    }
    ++i;
    f[i] = lo(i) - 1;
  }
}

void for_each_morphism(const FinStructure& x, const FinStructure& y, const std::function<bool(const Map&)>& fn) {
  for_each_morphism_extending(x, y, {}, fn);
}

std::vector<Map> enumerate_morphisms(const FinStructure& x, const FinStructure& y) {
  std::vector<Map> out;
  for_each_morphism(x, y, [&](const Map& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::size_t count_morphisms(const FinStructure& x, const FinStructure& y) {
  std::size_t c = 0;
  for_each_morphism(x, y, [&](const Map&) {
    ++c;
    return true;
  });
  return c;
}

bool exp_edge_holds(const FinStructure& x, const FinStructure& y, std::size_t rel, std::span<const Map* const> maps) {
  Tuple img(maps.size());
  for (const auto& t : x.edges(rel)) {
    for (std::size_t k = 0; k < t.size(); ++k) img[k] = (*maps[k])[static_cast<std::size_t>(t[k])];
    if (!y.has_edge(rel, img)) return false;
  }
  return true;
}

int InternalHom::index_of(const Map& f) const {
  auto it = lookup.find(f);
  if (it == lookup.end()) throw NotAMorphism("map is not a morphism of the exponent");
  return it->second;
}

InternalHom internal_hom_unchecked(const FinStructure& x, const FinStructure& y) {
  InternalHom hom;
  hom.maps = enumerate_morphisms(x, y);
  const std::size_t m = hom.maps.size();
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) {
    std::string id = "[";
    for (std::size_t k = 0; k < hom.maps[i].size(); ++k) id += (k ? "," : "") + y.id(hom.maps[i][k]);
    ids.push_back(id + "]");
    hom.lookup.emplace(hom.maps[i], static_cast<int>(i));
  }
  std::vector<Edge> edges;
  const auto& sig = x.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t ar = sig[r].arity;
    if (ar == 0) {
      if (x.edges(r).empty() || !y.edges(r).empty()) edges.push_back({r, {}});
      continue;
    }
    if (m == 0) continue;
    Tuple pick(ar, 0);
    std::vector<const Map*> chosen(ar);
    for (;;) {
      for (std::size_t k = 0; k < ar; ++k) chosen[k] = &hom.maps[static_cast<std::size_t>(pick[k])];
      if (exp_edge_holds(x, y, r, chosen)) edges.push_back({r, pick});
      std::size_t k = ar;
      while (k > 0) {
        if (++pick[k - 1] < static_cast<int>(m)) break;
        pick[--k] = 0;
      }
      if (k == 0) break;
    }
  }
  hom.object = FinStructure(x.signature_ptr(), std::move(ids), std::move(edges));
  return hom;
}

InternalHom internal_hom(const FinStructure& x, const FinStructure& y, const HornTheory& t) {
  InternalHom hom = internal_hom_unchecked(x, y);
  if (!is_model(hom.object, t)) throw NotClosed("candidate exponential is not a model of the theory");
  // Evaluation x × [x,y] -> y.
  FinStructure dom = product(x, hom.object);
  Map eval(dom.size());
  for (std::size_t xi = 0; xi < x.size(); ++xi)
    for (std::size_t fi = 0; fi < hom.maps.size(); ++fi) eval[xi * hom.maps.size() + fi] = hom.maps[fi][xi];
  if (!is_pi_morphism(eval, dom, y)) throw NotClosed("evaluation is not a morphism");
  return hom;
}

FinStructure exponential(const FinStructure& x, const FinStructure& y, const HornTheory& t) {
  return internal_hom(x, y, t).object;
}

Map curry(const Map& f, const FinStructure& z, const FinStructure& x, const FinStructure& y, const InternalHom& hom) {
  FinStructure dom = product(z, x);
  if (!is_pi_morphism(f, dom, y)) throw NotAMorphism("curry: f is not a morphism z × x -> y");
  Map g(z.size());
  for (std::size_t zi = 0; zi < z.size(); ++zi) {
    Map row(f.begin() + static_cast<std::ptrdiff_t>(zi * x.size()),
            f.begin() + static_cast<std::ptrdiff_t>((zi + 1) * x.size()));
    auto it = hom.lookup.find(row);
    if (it == hom.lookup.end()) throw NotClosed("curry: a section of f is not a morphism");
    g[zi] = it->second;
  }
  if (!is_pi_morphism(g, z, hom.object)) throw NotClosed("curry: transpose is not a morphism");
  return g;
}

Map curry(const Map& f, const FinStructure& z, const FinStructure& x, const FinStructure& y, const HornTheory& t) {
  return curry(f, z, x, y, internal_hom(x, y, t));
}

Map uncurry(const Map& g, const FinStructure& z, const FinStructure& x, const InternalHom& hom) {
  if (!is_pi_morphism(g, z, hom.object)) throw NotAMorphism("uncurry: g is not a morphism z -> [x,y]");
  Map f(z.size() * x.size());
  for (std::size_t zi = 0; zi < z.size(); ++zi)
    for (std::size_t xi = 0; xi < x.size(); ++xi)
      f[zi * x.size() + xi] = hom.maps[static_cast<std::size_t>(g[zi])][xi];
  return f;
}

}  // namespace enrvar::relcore
