#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "enrvar/errors.hpp"
#include "support.hpp"

using namespace enrvar::relcore;
using testing::chain_poset;
using testing::discrete;

namespace {

const HornTheory& pos() {
  static const HornTheory t = theory_pos();
  return t;
}
const HornTheory& preord() {
  static const HornTheory t = theory_preord();
  return t;
}

FinStructure leq_structure(const SignaturePtr& sig, std::vector<std::string> ids,
                           const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> e;
  for (auto [a, b] : pairs) e.push_back({0, {a, b}});
  return FinStructure(sig, std::move(ids), std::move(e));
}

}  // namespace

TEST_CASE("signature and structure validation") {
  CHECK_THROWS_AS(RelSignature({{"R", 2}, {"R", 1}}), enrvar::InvalidTheory);
  CHECK_THROWS_AS(RelSignature({{"≐", 2}}), enrvar::InvalidTheory);
  auto sig = pos().signature_ptr();
  CHECK_THROWS_AS(FinStructure(sig, std::vector<std::string>{"a", "a"}, {}), enrvar::InvalidStructure);
  CHECK_THROWS_AS(FinStructure(sig, 2, {{0, {0, 2}}}), enrvar::InvalidStructure);
  CHECK_THROWS_AS(FinStructure(sig, 2, {{0, {0}}}), enrvar::InvalidStructure);
  FinStructure x(sig, 2, {{0, {1, 0}}, {0, {1, 0}}});
  CHECK(x.edge_count() == 1);
  CHECK(x.has_edge(0, {1, 0}));
  CHECK_FALSE(x.has_edge(0, {0, 1}));
}

TEST_CASE("theory requires reflexivity axioms") {
  auto sig = make_signature({{"R", 2}});
  CHECK_THROWS_AS(HornTheory(sig, {}), enrvar::InvalidTheory);
  HornFormula refl{{"v"}, {}, {0, {0, 0}}};
  CHECK_NOTHROW(HornTheory(sig, {refl}));
  HornFormula notrefl{{"v", "w"}, {}, {0, {0, 1}}};
  CHECK_THROWS_AS(HornTheory(sig, {notrefl}), enrvar::InvalidTheory);
}

TEST_CASE("is_pi_morphism") {
  auto sig = pos().signature_ptr();
  auto c2 = chain_poset(sig, 2);
  CHECK(is_pi_morphism({0, 1}, c2, c2));
  auto d2 = discrete(sig, 2);
  CHECK_FALSE(is_pi_morphism({0, 1}, c2, d2));
  CHECK_THROWS_AS(is_pi_morphism({0}, c2, c2), enrvar::NotTotal);
  CHECK_THROWS_AS(is_pi_morphism({0, 5}, c2, c2), enrvar::NotTotal);
  auto other = make_signature({{"<=", 2}, {"S", 1}});
  FinStructure o(other, 1, {});
  CHECK_THROWS_AS(is_pi_morphism({0, 0}, c2, o), enrvar::SignatureMismatch);

  // Constant maps between models of reflexive theories are morphisms.
  std::mt19937 rng(7);
  for (const auto& t : {theory_preord(), theory_simp(2), theory_qcat(FiniteHeytingAlgebra::chain(2))}) {
    auto ms = enumerate_models(t, 3);
    for (int trial = 0; trial < 30; ++trial) {
      const auto& x = ms[rng() % ms.size()];
      const auto& y = ms[rng() % ms.size()];
      int c = static_cast<int>(rng() % 3);
      CHECK(is_pi_morphism(Map(3, c), x, y));
    }
  }
}

TEST_CASE("satisfies_formula examples") {
  auto sig = pos().signature_ptr();
  CHECK(satisfies_formula(chain_poset(sig, 3), pos().axioms()[1]));
  FinStructure indiscrete(sig, 2, {{0, {0, 0}}, {0, {1, 1}}, {0, {0, 1}}, {0, {1, 0}}});
  CHECK_FALSE(satisfies_formula(indiscrete, pos().axioms()[2]));
  FinStructure missing(sig, 2, {{0, {0, 0}}});
  CHECK_FALSE(satisfies_formula(missing, pos().axioms()[0]));
  auto v = find_violation(missing, pos());
  REQUIRE(v);
  CHECK(v->axiom == 0);
  CHECK(v->valuation == std::vector<int>{1});
}

TEST_CASE("satisfies_formula agrees with the all-valuations oracle") {
  std::mt19937 rng(12345);
  auto sig = make_signature({{"R", 2}, {"U", 1}, {"T", 3}});
  int cases = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto x = testing::random_structure(sig, n, rng, 0.35);
    HornFormula f;
    std::size_t nv = 1 + rng() % 4;
    for (std::size_t i = 0; i < nv; ++i) f.var_names.push_back("v" + std::to_string(i));
    auto random_atom = [&](bool allow_eq) {
      std::size_t pick = rng() % (allow_eq ? 4 : 3);
      HornAtom a;
      std::size_t arity = 2;
      if (pick == 3) a.rel = kEquality;
      else {
        a.rel = pick;
        arity = (*sig)[pick].arity;
      }
      for (std::size_t k = 0; k < arity; ++k) a.vars.push_back(rng() % nv);
      return a;
    };
    std::size_t np = rng() % 4;
    for (std::size_t i = 0; i < np; ++i) f.premises.push_back(random_atom(true));
    f.conclusion = random_atom(true);
    CHECK(satisfies_formula(x, f) == testing::naive_satisfies(x, f));
    ++cases;
  }
  CHECK(cases >= 1000);
}

TEST_CASE("is_model examples") {
  for (const auto& t : {theory_set(), theory_preord(), theory_pos(), theory_simp(3),
                        theory_qcat(FiniteHeytingAlgebra::chain(3))})
    CHECK(is_model(terminal(t.signature_ptr()), t));
  auto sig = pos().signature_ptr();
  CHECK(is_model(chain_poset(sig, 2), pos()));
  FinStructure nontrans(sig, 3, {{0, {0, 0}}, {0, {1, 1}}, {0, {2, 2}}, {0, {0, 1}}, {0, {1, 2}}});
  CHECK_FALSE(is_model(nontrans, preord()));
  CHECK_THROWS_AS(is_model(nontrans, theory_simp(1)), enrvar::SignatureMismatch);
}

TEST_CASE("chase examples") {
  auto sig = pos().signature_ptr();
  auto x = leq_structure(sig, {"a", "b", "c"}, {{0, 1}, {1, 2}});
  auto r = chase(x, preord());
  CHECK(r.model.size() == 3);
  CHECK(r.model.has_edge(0, {0, 2}));
  CHECK(r.model.edge_count() == 6);
  CHECK(r.unit == Map{0, 1, 2});

  auto y = leq_structure(sig, {"a", "b"}, {{0, 1}, {1, 0}});
  auto r2 = chase(y, pos());
  CHECK(r2.model.size() == 1);
  CHECK(r2.model.carrier() == std::vector<std::string>{"a"});
  CHECK(r2.unit == Map{0, 0});

  auto c3 = chain_poset(sig, 3);
  auto r3 = chase(c3, pos());
  CHECK(r3.model == c3);
  CHECK(r3.unit == Map{0, 1, 2});
}

TEST_CASE("chase matches a naive closure oracle for preorders") {
  std::mt19937 rng(99);
  auto sig = preord().signature_ptr();
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto x = testing::random_structure(sig, n, rng, 0.25);
    // Warshall closure plus loops.
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (const auto& t : x.edges(0)) m[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m[i][k] && m[k][j]) m[i][j] = true;
    auto r = chase(x, preord());
    REQUIRE(r.model.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(r.model.has_edge(0, {static_cast<int>(i), static_cast<int>(j)}) == m[i][j]);

    // For posets the classes are the strongly connected components.
    auto rp = chase(x, pos());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK((rp.unit[i] == rp.unit[j]) == (m[i][j] && m[j][i]));
    CHECK(is_model(rp.model, pos()));
  }
}

TEST_CASE("chase is idempotent and has the reflection property") {
  std::mt19937 rng(2024);
  for (const auto& t : {theory_preord(), theory_pos(), theory_simp(2)}) {
    auto models = models_up_to_iso_upto(t, 3);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng() % 4;
      auto x = testing::random_structure(t.signature_ptr(), n, rng, 0.2);
      auto r = chase(x, t);
      CHECK(is_model(r.model, t));
      CHECK(is_pi_morphism(r.unit, x, r.model));
      auto again = chase(r.model, t);
      CHECK(again.model == r.model);
      for (const auto& m : models) {
        auto from_free = enumerate_morphisms(r.model, m);
        auto from_x = enumerate_morphisms(x, m);
        std::set<Map> composed;
        for (const auto& h : from_free) {
          Map c(n);
          for (std::size_t i = 0; i < n; ++i) c[i] = h[static_cast<std::size_t>(r.unit[i])];
          composed.insert(c);
        }
        CHECK(composed.size() == from_free.size());
        CHECK(composed == std::set<Map>(from_x.begin(), from_x.end()));
      }
    }
  }
}

TEST_CASE("product") {
  auto sig = pos().signature_ptr();
  auto t = product(sig, {});
  CHECK(is_terminal(t));
  CHECK(t.carrier() == std::vector<std::string>{"*"});

  auto c2 = chain_poset(sig, 2);
  auto c3 = chain_poset(sig, 3);
  CHECK(are_isomorphic(product(c3, terminal(sig)), c3));

  auto diamond = product(c2, c2);
  CHECK(diamond.size() == 4);
  // (0,0) <= (0,1),(1,0) <= (1,1); (0,1) and (1,0) incomparable.
  CHECK(diamond.has_edge(0, {0, 1}));
  CHECK(diamond.has_edge(0, {0, 2}));
  CHECK(diamond.has_edge(0, {0, 3}));
  CHECK_FALSE(diamond.has_edge(0, {1, 2}));
  CHECK_FALSE(diamond.has_edge(0, {2, 1}));
  CHECK(diamond.edge_count() == 9);
  CHECK(is_model(diamond, pos()));
}

TEST_CASE("product projections and pairing") {
  std::mt19937 rng(5);
  for (const auto& th : {theory_pos(), theory_simp(2)}) {
    auto ms = models_up_to_iso_upto(th, 2, false);
    for (const auto& x : ms)
      for (const auto& y : ms) {
        auto xy = product(x, y);
        Map p1(xy.size()), p2(xy.size());
        for (std::size_t i = 0; i < xy.size(); ++i) {
          p1[i] = static_cast<int>(i / y.size());
          p2[i] = static_cast<int>(i % y.size());
        }
        CHECK(is_pi_morphism(p1, xy, x));
        CHECK(is_pi_morphism(p2, xy, y));
        const auto& z = ms[rng() % ms.size()];
        auto hx = enumerate_morphisms(z, x), hy = enumerate_morphisms(z, y);
        auto hxy = enumerate_morphisms(z, xy);
        CHECK(hxy.size() == hx.size() * hy.size());
        std::set<Map> paired;
        for (const auto& f : hx)
          for (const auto& g : hy) {
            Map h(z.size());
            for (std::size_t i = 0; i < z.size(); ++i)
              h[i] = f[i] * static_cast<int>(y.size()) + g[i];
            paired.insert(h);
          }
        CHECK(paired == std::set<Map>(hxy.begin(), hxy.end()));
      }
  }
}

TEST_CASE("enumerate_morphisms") {
  auto sig = pos().signature_ptr();
  auto c2 = chain_poset(sig, 2);
  CHECK(enumerate_morphisms(c2, terminal(sig)).size() == 1);
  CHECK(enumerate_morphisms(c2, c2).size() == 3);
  auto d2 = discrete(sig, 2);
  auto c3 = chain_poset(sig, 3);
  CHECK(enumerate_morphisms(d2, c3).size() == 9);
  auto ms = enumerate_morphisms(c2, c3);
  CHECK(std::is_sorted(ms.begin(), ms.end()));

  std::mt19937 rng(17);
  auto sig2 = make_signature({{"R", 2}, {"U", 1}, {"N", 0}});
  for (int trial = 0; trial < 300; ++trial) {
    auto x = testing::random_structure(sig2, rng() % 4, rng, 0.4);
    auto y = testing::random_structure(sig2, rng() % 4, rng, 0.6);
    CHECK(enumerate_morphisms(x, y) == testing::naive_morphisms(x, y));
  }
}

TEST_CASE("exponential examples") {
  auto sig = pos().signature_ptr();
  auto c2 = chain_poset(sig, 2);
  auto e = exponential(c2, c2, pos());
  REQUIRE(e.size() == 3);
  CHECK(e.carrier() == std::vector<std::string>{"[0,0]", "[0,1]", "[1,1]"});
  CHECK(e.has_edge(0, {0, 1}));
  CHECK(e.has_edge(0, {1, 2}));
  CHECK(e.has_edge(0, {0, 2}));
  CHECK_FALSE(e.has_edge(0, {1, 0}));
  CHECK(e.edge_count() == 6);

  auto c3 = chain_poset(sig, 3);
  CHECK(are_isomorphic(exponential(terminal(sig), c3, pos()), c3));

  // The carrier is the hom-set.
  for (const auto& x : models_up_to_iso_upto(pos(), 3))
    for (const auto& y : models_up_to_iso_upto(pos(), 2)) {
      auto h = internal_hom(x, y, pos());
      CHECK(h.maps == testing::naive_morphisms(x, y));
    }
}

TEST_CASE("an inclusion axiom breaks closure of the candidate exponential") {
  // Reflexive R and S with S ⊆ R. Maps f=(p,q), g=(q,r) form an S-edge of
  // [x,y] pointwise, but (f 0, g 1) = (p,r) is not an R-edge although (0,1) is.
  auto sig = make_signature({{"R", 2}, {"S", 2}});
  HornTheory t(sig, {{{"v"}, {}, {0, {0, 0}}}, {{"v"}, {}, {1, {0, 0}}}, {{"a", "b"}, {{1, {0, 1}}}, {0, {0, 1}}}});
  FinStructure x(sig, 2, {{0, {0, 0}}, {0, {1, 1}}, {0, {0, 1}}, {1, {0, 0}}, {1, {1, 1}}});
  std::vector<Edge> ye;
  for (int i = 0; i < 3; ++i) {
    ye.push_back({0, {i, i}});
    ye.push_back({1, {i, i}});
  }
  for (std::size_t r : {0u, 1u}) {
    ye.push_back({r, {0, 1}});
    ye.push_back({r, {1, 2}});
  }
  FinStructure y(sig, std::vector<std::string>{"p", "q", "r"}, ye);
  REQUIRE(is_model(x, t));
  REQUIRE(is_model(y, t));
  CHECK_THROWS_AS(internal_hom(x, y, t), enrvar::NotClosed);
  CHECK_NOTHROW(internal_hom_unchecked(x, y));
}

TEST_CASE("currying") {
  auto sig = pos().signature_ptr();
  auto c2 = chain_poset(sig, 2);
  auto c3 = chain_poset(sig, 3);
  // Projection z × x -> x curries to the constant at the identity.
  auto hom = internal_hom(c2, c2, pos());
  Map proj(c3.size() * c2.size());
  for (std::size_t i = 0; i < proj.size(); ++i) proj[i] = static_cast<int>(i % 2);
  auto g = curry(proj, c3, c2, c2, hom);
  int id = hom.index_of({0, 1});
  CHECK(g == Map(3, id));
  // Not a morphism.
  Map bad(6, 0);
  bad[1] = 1;
  bad[3] = 0;
  bad[0] = 1;
  CHECK_THROWS_AS(curry(bad, c3, c2, c2, hom), enrvar::NotAMorphism);

  // eval curries to the identity of [x,y].
  FinStructure ex = hom.object;
  Map eval(ex.size() * c2.size());
  for (std::size_t fi = 0; fi < ex.size(); ++fi)
    for (std::size_t xi = 0; xi < c2.size(); ++xi) eval[fi * c2.size() + xi] = hom.maps[fi][xi];
  Map ident(ex.size());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<int>(i);
  CHECK(curry(eval, ex, c2, c2, hom) == ident);

  // Round trips on all small posets.
  auto ms = models_up_to_iso_upto(pos(), 2);
  for (const auto& z : ms)
    for (const auto& x : ms)
      for (const auto& y : ms) {
        auto h = internal_hom(x, y, pos());
        auto zx = product(z, x);
        auto fs = enumerate_morphisms(zx, y);
        auto gs = enumerate_morphisms(z, h.object);
        CHECK(fs.size() == gs.size());
        for (const auto& f : fs) CHECK(uncurry(curry(f, z, x, y, h), z, x, h) == f);
      }
}

TEST_CASE("builtin theories") {
  auto p = builtin_theory("pos");
  REQUIRE(p.axioms().size() == 3);
  CHECK(p.axioms()[0].premises.empty());
  CHECK(p.axioms()[2].conclusion.rel == kEquality);
  auto s = builtin_theory("set");
  CHECK(s.signature().size() == 0);
  CHECK(s.axioms().empty());
  auto s2 = builtin_theory("simp2");
  CHECK(s2.signature().size() == 2);
  // Two reflexivity axioms plus one axiom per h : {1..k} -> {1..m}: 1 + 1 + 2 + 4.
  CHECK(s2.axioms().size() == 10);
  CHECK(builtin_theory("simp:3").signature().size() == 3);
  CHECK_THROWS_AS(builtin_theory("nope"), enrvar::UnknownTheory);
  CHECK_THROWS_AS(builtin_theory("simp0"), enrvar::UnknownTheory);
  auto q = builtin_theory("qcat:chain3");
  CHECK(q.signature().size() == 3);
}

TEST_CASE("Heyting algebra validation") {
  auto c = FiniteHeytingAlgebra::chain(3);
  CHECK(c.top() == 2);
  CHECK(c.bottom() == 0);
  CHECK(c.meet(1, 2) == 1);
  CHECK(c.join(0, 1) == 1);
  // Two incomparable elements without a join.
  CHECK_THROWS_AS(FiniteHeytingAlgebra({"a", "b"}, {}), enrvar::LatticeError);
  // The diamond M3 is a lattice but not distributive.
  CHECK_THROWS_AS(FiniteHeytingAlgebra({"0", "a", "b", "c", "1"},
                                       {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}),
                  enrvar::LatticeError);
  // N5 likewise.
  CHECK_THROWS_AS(FiniteHeytingAlgebra({"0", "a", "b", "c", "1"},
                                       {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}}),
                  enrvar::LatticeError);
  // The four-element Boolean algebra is fine.
  FiniteHeytingAlgebra b4({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
  CHECK(b4.meet(1, 2) == 0);
  CHECK(b4.join(1, 2) == 3);
  CHECK_THROWS_AS(FiniteHeytingAlgebra({"a", "b"}, {{"a", "b"}, {"b", "a"}}), enrvar::LatticeError);
}

TEST_CASE("qcat models are Q-categories") {
  auto q = FiniteHeytingAlgebra::chain(3);
  auto t = theory_qcat(q);
  // Oracle: a model on n points is a map d : n×n -> Q (the largest q with
  // x ~q y) with d(x,x)=top and d(x,z) >= d(x,y) ∧ d(y,z).
  for (std::size_t n = 1; n <= 2; ++n) {
    std::size_t expected = 0;
    for (const auto& d : testing::all_functions(n * n, q.size())) {
      bool ok = true;
      for (std::size_t x = 0; x < n; ++x) ok = ok && static_cast<std::size_t>(d[x * n + x]) == q.top();
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) {
            auto m = q.meet(static_cast<std::size_t>(d[x * n + y]), static_cast<std::size_t>(d[y * n + z]));
            ok = ok && q.leq(m, static_cast<std::size_t>(d[x * n + z]));
          }
      if (ok) ++expected;
    }
    CHECK(enumerate_models(t, n).size() == expected);
  }
}

TEST_CASE("model enumeration counts") {
  // Labelled counts checked against brute force over all edge subsets.
  for (const auto& t : {theory_preord(), theory_pos(), theory_simp(2)})
    for (std::size_t n = 0; n <= 3; ++n) {
      auto fast = enumerate_models(t, n);
      auto slow = testing::naive_models(t, n);
      std::set<std::vector<Edge>> a, b;
      for (const auto& m : fast) a.insert(m.all_edges());
      for (const auto& m : slow) b.insert(m.all_edges());
      CHECK(a == b);
      CHECK(fast.size() == slow.size());
    }
  CHECK(enumerate_models(theory_pos(), 4).size() == 219);
  CHECK(enumerate_models(theory_preord(), 4).size() == 355);
  CHECK(models_up_to_iso(theory_pos(), 3).size() == 5);
  CHECK(models_up_to_iso(theory_pos(), 4).size() == 16);
  CHECK(models_up_to_iso(theory_preord(), 3).size() == 9);
  CHECK(models_up_to_iso(theory_preord(), 4).size() == 33);
  CHECK(models_up_to_iso(theory_set(), 3).size() == 1);
  CHECK(models_up_to_iso(theory_set(), 0).size() == 1);
}

TEST_CASE("isomorphism classes are exhaustive and disjoint") {
  auto t = theory_preord();
  auto classes = models_up_to_iso(t, 3);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) CHECK_FALSE(are_isomorphic(classes[i], classes[j]));
  for (const auto& m : enumerate_models(t, 3)) {
    int hits = 0;
    for (const auto& c : classes) hits += are_isomorphic(m, c) ? 1 : 0;
    CHECK(hits == 1);
  }
  auto structs = structures_up_to_iso(t.signature_ptr(), 2);
  // Digraphs with loops allowed on 2 unlabelled vertices: 10.
  CHECK(structs.size() == 10);
}
