#pragma once

// Shared builders and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's search code: they enumerate every
// function or valuation directly.

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "enrvar/relcore.hpp"

namespace testing {

using namespace enrvar::relcore;

inline FinStructure chain_poset(const SignaturePtr& sig, std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) edges.push_back({0, {static_cast<int>(i), static_cast<int>(j)}});
  return FinStructure(sig, n, std::move(edges));
}

inline FinStructure discrete(const SignaturePtr& sig, std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < sig->size(); ++r)
    for (std::size_t i = 0; i < n; ++i) edges.push_back({r, Tuple((*sig)[r].arity, static_cast<int>(i))});
  return FinStructure(sig, n, std::move(edges));
}

inline FinStructure random_structure(const SignaturePtr& sig, std::size_t n, std::mt19937& rng, double density = 0.4) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < sig->size(); ++r) {
    const std::size_t ar = (*sig)[r].arity;
    std::size_t count = 1;
    for (std::size_t k = 0; k < ar; ++k) count *= n;
    for (std::size_t key = 0; key < count; ++key) {
      if (!coin(rng)) continue;
      Tuple t(ar);
      std::size_t rest = key;
      for (std::size_t p = ar; p-- > 0;) {
        t[p] = static_cast<int>(rest % n);
        rest /= n;
      }
      edges.push_back({r, t});
    }
  }
  return FinStructure(sig, n, std::move(edges));
}

// Every function |x| -> |y| as index vectors, in lexicographic order.
inline std::vector<Map> all_functions(std::size_t from, std::size_t to) {
  std::vector<Map> out;
  if (from == 0) return {Map{}};
  if (to == 0) return {};
  Map f(from, 0);
  for (;;) {
    out.push_back(f);
    std::size_t k = from;
    while (k > 0) {
      if (++f[k - 1] < static_cast<int>(to)) break;
      f[--k] = 0;
    }
    if (k == 0) break;
  }
  return out;
}

inline bool naive_morphism(const Map& f, const FinStructure& x, const FinStructure& y) {
  for (const auto& e : x.all_edges()) {
    Tuple img;
    for (int a : e.args) img.push_back(f[static_cast<std::size_t>(a)]);
    bool found = false;
    for (const auto& t : y.edges(e.rel)) found = found || t == img;
    if (!found) return false;
  }
  return true;
}

inline std::vector<Map> naive_morphisms(const FinStructure& x, const FinStructure& y) {
  std::vector<Map> out;
  for (const auto& f : all_functions(x.size(), y.size()))
    if (naive_morphism(f, x, y)) out.push_back(f);
  return out;
}

inline bool naive_satisfies(const FinStructure& x, const HornFormula& phi) {
  const std::size_t k = phi.var_names.size();
  for (const auto& val : all_functions(k, x.size())) {
    auto holds = [&](const HornAtom& a) {
      if (a.rel == kEquality) return val[a.vars[0]] == val[a.vars[1]];
      Tuple t;
      for (auto v : a.vars) t.push_back(val[v]);
      for (const auto& e : x.edges(a.rel))
        if (e == t) return true;
      return false;
    };
    bool all = true;
    for (const auto& p : phi.premises) all = all && holds(p);
    if (all && !holds(phi.conclusion)) return false;
  }
  return true;
}

inline bool naive_model(const FinStructure& x, const HornTheory& t) {
  for (const auto& f : t.axioms())
    if (!naive_satisfies(x, f)) return false;
  return true;
}

// All models of t on n labelled elements, by brute force over edge subsets.
inline std::vector<FinStructure> naive_models(const HornTheory& t, std::size_t n) {
  std::vector<Edge> slots;
  const auto& sig = t.signature_ptr();
  for (std::size_t r = 0; r < sig->size(); ++r)
    for (const auto& tup : all_functions((*sig)[r].arity, n)) slots.push_back({r, tup});
  std::vector<FinStructure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) edges.push_back(slots[i]);
    FinStructure x(sig, n, edges);
    if (naive_model(x, t)) out.push_back(x);
  }
  return out;
}

inline std::string fixture_dir() {
  const char* env = std::getenv("ENRVAR_FIXTURES");
  return env ? env : "fixtures";
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_dir() + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testing
