#include "enrvar/relcore/builtin.hpp"

#include <algorithm>
#include <charconv>

#include "enrvar/errors.hpp"

namespace enrvar::relcore {

namespace {

HornFormula reflexivity(std::size_t rel, std::size_t arity) {
  return {{"v"}, {}, {rel, std::vector<std::size_t>(arity, 0)}};
}

HornFormula transitivity(std::size_t r1, std::size_t r2, std::size_t out) {
  return {{"v1", "v2", "v3"}, {{r1, {0, 1}}, {r2, {1, 2}}}, {out, {0, 2}}};
}

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size()) throw UnknownTheory("bad " + std::string(what) + " '" + std::string(s) + "'");
  return n;
}

}  // namespace

FiniteHeytingAlgebra::FiniteHeytingAlgebra(std::vector<std::string> elements,
                                           const std::vector<std::pair<std::string, std::string>>& order)
    : names_(std::move(elements)) {
  const std::size_t n = names_.size();
  if (n == 0) throw LatticeError("a lattice needs at least one element");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw LatticeError("duplicate lattice element '" + names_[i] + "'");
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : order) leq_[index_of(a)][index_of(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq_[i][j] && leq_[j][i]) throw LatticeError("order is not antisymmetric");

  auto bound = [&](std::size_t a, std::size_t b, bool upper) -> std::size_t {
    std::vector<std::size_t> cands;
    for (std::size_t c = 0; c < n; ++c)
      if (upper ? (leq_[a][c] && leq_[b][c]) : (leq_[c][a] && leq_[c][b])) cands.push_back(c);
    for (auto c : cands) {
      bool best = std::all_of(cands.begin(), cands.end(),
                              [&](std::size_t d) { return upper ? leq_[c][d] : leq_[d][c]; });
      if (best) return c;
    }
    throw LatticeError(std::string("missing ") + (upper ? "join" : "meet") + " of '" + names_[a] + "' and '" + names_[b] + "'");
  };
  meet_.assign(n, std::vector<std::size_t>(n));
  join_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      meet_[a][b] = bound(a, b, false);
      join_[a][b] = bound(a, b, true);
    }
  top_ = bottom_ = 0;
  for (std::size_t a = 0; a < n; ++a) {
    top_ = join_[top_][a];
    bottom_ = meet_[bottom_][a];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (meet_[a][join_[b][c]] != join_[meet_[a][b]][meet_[a][c]])
          throw LatticeError("lattice is not distributive, so not a Heyting algebra");
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> order;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("q" + std::to_string(i));
    if (i) order.emplace_back(names[i - 1], names[i]);
  }
  return FiniteHeytingAlgebra(std::move(names), order);
}

std::size_t FiniteHeytingAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw LatticeError("unknown lattice element '" + std::string(name) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteHeytingAlgebra::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c)
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

std::string qcat_relation_name(const std::string& q) { return "~" + q; }
std::string simp_relation_name(std::size_t m) { return "R" + std::to_string(m); }

HornTheory theory_set() { return HornTheory(make_signature({}), {}, "set"); }

HornTheory theory_preord() {
  auto sig = make_signature({{std::string(kLeq), 2}});
  return HornTheory(sig, {reflexivity(0, 2), transitivity(0, 0, 0)}, "preord");
}

HornTheory theory_pos() {
  auto sig = make_signature({{std::string(kLeq), 2}});
  HornFormula antisym{{"v1", "v2"}, {{0, {0, 1}}, {0, {1, 0}}}, {kEquality, {0, 1}}};
  return HornTheory(sig, {reflexivity(0, 2), transitivity(0, 0, 0), antisym}, "pos");
}

HornTheory theory_qcat(const FiniteHeytingAlgebra& q) {
  const std::size_t n = q.size();
  std::vector<RelSymbol> symbols;
  for (std::size_t i = 0; i < n; ++i) symbols.push_back({qcat_relation_name(q.name(i)), 2});
  auto sig = make_signature(std::move(symbols));
  std::vector<HornFormula> axioms;
  for (std::size_t i = 0; i < n; ++i) axioms.push_back(reflexivity(i, 2));
  // Downward closure.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && q.leq(b, a)) axioms.push_back({{"v1", "v2"}, {{a, {0, 1}}}, {b, {0, 1}}});
  // Suprema of every finite family, i.e. every subset of Q (the empty one
  // relates everything at the bottom element).
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    HornFormula f{{"v1", "v2"}, {}, {}};
    std::size_t sup = q.bottom();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) {
        f.premises.push_back({i, {0, 1}});
        sup = q.join(sup, i);
      }
    if (f.premises.size() == 1) continue;  // trivial
    f.conclusion = {sup, {0, 1}};
    axioms.push_back(std::move(f));
  }
  axioms.push_back({{"v"}, {}, {q.top(), {0, 0}}});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) axioms.push_back(transitivity(a, b, q.meet(a, b)));
  return HornTheory(sig, std::move(axioms), "qcat");
}

HornTheory theory_simp(std::size_t n) {
  if (n == 0) throw UnknownTheory("simp needs n >= 1");
  std::vector<RelSymbol> symbols;
  for (std::size_t m = 1; m <= n; ++m) symbols.push_back({simp_relation_name(m), m});
  auto sig = make_signature(std::move(symbols));
  std::vector<HornFormula> axioms;
  for (std::size_t m = 1; m <= n; ++m) axioms.push_back(reflexivity(m - 1, m));
  for (std::size_t m = 1; m <= n; ++m)
    for (std::size_t k = 1; k <= n; ++k) {
      // Every h : {1..k} -> {1..m}.
      std::vector<std::size_t> h(k, 0);
      for (;;) {
        HornFormula f;
        for (std::size_t i = 1; i <= m; ++i) f.var_names.push_back("v" + std::to_string(i));
        std::vector<std::size_t> prem(m);
        for (std::size_t i = 0; i < m; ++i) prem[i] = i;
        f.premises.push_back({m - 1, prem});
        f.conclusion = {k - 1, h};
        axioms.push_back(std::move(f));
        std::size_t pos = k;
        while (pos > 0 && ++h[pos - 1] == m) h[--pos] = 0;
        if (pos == 0) break;
      }
    }
  return HornTheory(sig, std::move(axioms), "simp" + std::to_string(n));
}

HornTheory builtin_theory(std::string_view spec) {
  if (spec == "set") return theory_set();
  if (spec == "preord") return theory_preord();
  if (spec == "pos") return theory_pos();
  if (spec.starts_with("simp")) {
    auto rest = spec.substr(4);
    if (rest.starts_with(":")) rest.remove_prefix(1);
    return theory_simp(parse_count(rest, "simp arity"));
  }
  if (spec.starts_with("qcat:chain")) {
    auto t = theory_qcat(FiniteHeytingAlgebra::chain(parse_count(spec.substr(10), "chain length")));
    return HornTheory(t.signature_ptr(), t.axioms(), std::string(spec));
  }
  throw UnknownTheory("unknown builtin theory '" + std::string(spec) + "'");
}

std::size_t order_relation(const RelSignature& sig) {
  auto r = sig.find(kLeq);
  if (!r || sig[*r].arity != 2) throw SignatureMismatch("signature has no binary '<=' relation");
  return *r;
}

}  // namespace enrvar::relcore
