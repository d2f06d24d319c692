// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "cpo_oracle.hpp"
#include "enrvar/algebra/search.hpp"
#include "enrvar/dsl.hpp"
#include "enrvar/errors.hpp"
#include "enrvar/monad.hpp"
#include "enrvar/translate.hpp"
#include "theories.hpp"

using namespace testing;
namespace alg = enrvar::algebra;
namespace rc = enrvar::relcore;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit = 0;  // seconds; 0 means untimed
};

#define EXPECT(cond, msg)        \
  do {                           \
    if (!(cond)) {               \
      out.pass = false;          \
      out.detail = msg;          \
      return out;                \
    }                            \
  } while (0)

// ---- 1: currying is a bijection Hom(Z×X, Y) ≅ Hom(Z, [X, Y])

// Brute-force edge condition on maps u_1..u_k : X -> Y: every r-edge of X is
// sent to an r-edge of Y componentwise. Edges of Z×X are exactly pairs of a
// Z-edge and an X-edge, so f is a morphism iff each Z-edge is sent by its
// curried form to a tuple meeting this condition; with Z reflexive the same
// holds for the curried map into [X, Y] iff [X, Y] has exactly these edges.
bool componentwise(const FinStructure& x, const FinStructure& y, std::size_t r, const std::vector<const Map*>& us) {
  for (const auto& t : x.edges(r)) {
    Tuple img;
    for (std::size_t i = 0; i < t.size(); ++i) img.push_back((*us[i])[std::size_t(t[i])]);
    if (!y.has_edge(r, img)) return false;
  }
  return true;
}

bool reflexive(const FinStructure& z) {
  const auto& sig = z.signature();
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (std::size_t e = 0; e < z.size(); ++e)
      if (!z.has_edge(r, Tuple(sig[r].arity, int(e)))) return false;
  return true;
}

// Exact for every triple through the edge condition above, and by literally
// currying every morphism where the hom-sets are small enough to list.
Outcome cartesian_closure() {
  Outcome out{true, "", 60};
  std::size_t triples = 0, literal = 0, maps = 0;
  for (const char* spec : {"set", "preord", "pos", "simp2", "qcat:chain3"}) {
    auto t = rc::builtin_theory(spec);
    auto ms = rc::models_up_to_iso_upto(t, 3);
    const bool small = std::string(spec).rfind("qcat", 0) != 0;
    for (const auto& z : ms) EXPECT(reflexive(z), std::string(spec) + ": a model is not reflexive");
    for (const auto& x : ms)
      for (const auto& y : ms) {
        auto h = rc::internal_hom(x, y, t);
        EXPECT(rc::is_model(h.object, t), std::string(spec) + ": [X,Y] is not a model");
        auto homs = rc::enumerate_morphisms(x, y);
        EXPECT(homs.size() == h.object.size(), std::string(spec) + ": [X,Y] is not Hom(X,Y)");
        const auto& sig = x.signature();
        for (std::size_t r = 0; r < sig.size(); ++r) {
          const std::size_t k = sig[r].arity;
          std::vector<std::size_t> pick(k, 0);
          for (bool more = !homs.empty() || k == 0; more;) {
            std::vector<const Map*> us;
            Tuple idx;
            for (auto p : pick) us.push_back(&h.maps[p]), idx.push_back(int(p));
            if (componentwise(x, y, r, us) != h.object.has_edge(r, idx))
              EXPECT(false, std::string(spec) + ": an edge of [X,Y] differs from the componentwise condition");
            std::size_t i = k;
            while (i > 0 && ++pick[i - 1] == homs.size()) pick[--i] = 0;
            more = i > 0;
          }
        }
        for (const auto& z : ms) {
          ++triples;
          if (!small && (z.size() == 3 || x.size() * y.size() > 6)) continue;
          auto zx = rc::product(z, x);
          auto gs = rc::enumerate_morphisms(z, h.object);
          std::set<Map> targets(gs.begin(), gs.end()), image;
          std::size_t count = 0;
          bool ok = true;
          rc::for_each_morphism(zx, y, [&](const Map& f) {
            auto g = rc::curry(f, z, x, y, h);
            ok = ok && targets.count(g);
            for (std::size_t zi = 0; ok && zi < z.size(); ++zi)
              for (std::size_t xi = 0; xi < x.size(); ++xi) ok = ok && h.maps[std::size_t(g[zi])][xi] == f[zi * x.size() + xi];
            image.insert(std::move(g));
            ++count;
            return ok;
          });
          EXPECT(ok, std::string(spec) + ": a curried map is not a morphism or does not uncurry back");
          EXPECT(count == gs.size() && image.size() == gs.size(), std::string(spec) + ": currying is not a bijection");
          ++literal;
          maps += count;
        }
      }
  }
  out.detail = std::to_string(triples) + " model triples exact by edge condition; " + std::to_string(literal) +
               " of them by currying all " + std::to_string(maps) + " maps";
  return out;
}

// ---- 2: restriction along the chase unit is a bijection of hom-sets

Outcome chase_reflection() {
  Outcome out{true, "", 60};
  std::size_t cases = 0;
  for (const auto& t : {rc::theory_preord(), rc::theory_pos()}) {
    auto models = rc::models_up_to_iso_upto(t, 3);
    for (std::size_t n = 0; n <= 4; ++n)
      for (const auto& x : rc::structures_up_to_iso(t.signature_ptr(), n)) {
        auto r = rc::chase(x, t);
        EXPECT(rc::is_model(r.model, t), "chase result is not a model");
        EXPECT(rc::is_pi_morphism(r.unit, x, r.model), "unit is not a morphism");
        for (const auto& m : models) {
          auto from_free = rc::enumerate_morphisms(r.model, m);
          auto from_x = rc::enumerate_morphisms(x, m);
          std::set<Map> restricted;
          for (const auto& h : from_free) {
            Map c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = h[static_cast<std::size_t>(r.unit[i])];
            restricted.insert(c);
          }
          EXPECT(restricted.size() == from_free.size(), t.name() + ": restriction is not injective");
          EXPECT(restricted == std::set<Map>(from_x.begin(), from_x.end()), t.name() + ": restriction is not onto");
          ++cases;
        }
      }
  }
  out.detail = std::to_string(cases) + " (structure, model) pairs";
  return out;
}

bool exact(const enrvar::translate::EquivalenceReport& r) {
  if (!r.pass || r.hom_mismatches) return false;
  for (const auto& c : r.carriers)
    if (!c.ok || c.left != c.right || c.bijection.size() != c.left) return false;
  return true;
}

std::size_t left_total(const enrvar::translate::EquivalenceReport& r) {
  std::size_t n = 0;
  for (const auto& c : r.carriers) n += c.left;
  return n;
}

// ---- 3: enriched ordered monoid against its relational translation

Outcome enriched_to_relational() {
  Outcome out{true, "", 120};
  auto e = ordmonoid_enriched();
  auto rel = enrvar::translate::enriched_to_relational(e);
  auto r = enrvar::translate::verify_theory_equivalence(e, rel, {3});
  EXPECT(exact(r), "reports differ: " + (r.failures.empty() ? std::string("counts") : r.failures.front()));
  EXPECT(r.carriers.size() == 9, "expected the 9 posets of size at most 3");
  EXPECT(r.hom_pairs > 0, "no hom-objects compared");
  out.detail = std::to_string(left_total(r)) + " algebras in 9 carrier families, " + std::to_string(r.hom_pairs) +
               " hom-objects isomorphic";
  return out;
}

// ---- 4: classical theory with x <= x*x through relational_to_enriched

Outcome relational_round_trip() {
  Outcome out;
  auto t = ordmonoid_classical();
  auto e = enrvar::translate::relational_to_enriched(t);
  auto r = enrvar::translate::verify_theory_equivalence(t, e, {3});
  EXPECT(exact(r), "classical and enriched algebras differ");
  // The inequation matters: without it some carrier has more algebras.
  ClassicalTheoryWithRelations loose{t.signature, {}, t.equations, {}, "loose"};
  auto lr = enrvar::translate::verify_theory_equivalence(loose, e, {3});
  EXPECT(!lr.pass, "the inequation was vacuous");
  out.detail = std::to_string(left_total(r)) + " algebras matched by bijection on " + std::to_string(r.carriers.size()) +
               " carriers; dropping the inequation breaks it";
  return out;
}

// ---- 5: identity and exception truncations against their theories

Outcome monad_presentation() {
  Outcome out;
  const enrvar::syntax::SortSet one({"S"});
  enrvar::translate::VerifyOptions three;
  three.max_carrier = 3;
  auto ar = enrvar::monad::arities_up_to(1, 2);
  auto id = enrvar::monad::verify_presentation(enrvar::monad::identity_monad(rc::theory_set(), one, ar), three);
  EXPECT(id.pass && exact(id.equivalence), "identity truncation is not presented by its theory");
  for (const auto& c : id.equivalence.carriers) EXPECT(c.left == 1, "identity: expected one algebra per carrier");
  auto ex =
      enrvar::monad::verify_presentation(enrvar::monad::exception_monad(rc::theory_set(), one, ar, {{"e"}}), three);
  EXPECT(ex.pass && exact(ex.equivalence), "exception truncation is not presented by its theory");
  EXPECT(ex.equivalence.carriers.size() == 4, "expected carriers of size 0..3");
  for (std::size_t n = 0; n < 4; ++n) {
    // Pointed structures on an n-element set: one per choice of point.
    std::size_t pointed = all_functions(1, n).size();
    EXPECT(ex.equivalence.carriers[n].left == pointed, "exception count differs from pointed sets");
  }
  out.detail = "identity 1,1,1,1; exception 0,1,2,3 = pointed sets; hom-objects " +
               std::to_string(id.equivalence.hom_pairs + ex.equivalence.hom_pairs) + " pairs isomorphic";
  return out;
}

// ---- 6: free semilattices

std::vector<Map> homs(const Algebra& a, const Algebra& b) {
  std::vector<Map> out;
  for (const auto& f : all_functions(a.carrier(0).size(), b.carrier(0).size()))
    if (alg::is_homomorphism({f}, a, b)) out.push_back(f);
  return out;
}

// Nonempty subsets of n generators under union, as bitmasks 1..2^n-1.
Algebra subset_model(const alg::SignaturePtr& sig, std::size_t n) {
  const std::size_t m = (std::size_t{1} << n) - 1;
  Table join(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) join[a * m + b] = static_cast<int>(((a + 1) | (b + 1)) - 1);
  return Algebra(sig, {discrete(rc::theory_set().signature_ptr(), m)}, {{join}});
}

Outcome free_semilattice() {
  Outcome out;
  auto t = semilattice(rc::theory_set());
  std::vector<Algebra> targets;
  for (const auto& c : alg::carrier_families(rc::theory_set(), 1, 3))
    for (auto& b : alg::enumerate_algebras(t, c)) targets.push_back(b);
  std::size_t checks = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    auto f = enrvar::monad::free_algebra(t, unary_sort(n));
    EXPECT(f.saturated && f.algebra, "free semilattice did not saturate");
    const std::size_t expect = (std::size_t{1} << n) - 1;
    auto oracle = subset_model(t.signature, n);
    EXPECT(alg::satisfies_theory(oracle, t), "subset model is not a semilattice");
    EXPECT(f.carriers[0].size() == expect, "free semilattice has the wrong size");
    // The generator assignment extends to an isomorphism onto the subset model.
    std::size_t isos = 0;
    for (const auto& h : homs(*f.algebra, oracle)) {
      bool gens = true;
      for (std::size_t v = 0; v < n; ++v) gens = gens && h[static_cast<std::size_t>(f.generators[v])] == int((1u << v) - 1);
      isos += gens && std::set<int>(h.begin(), h.end()).size() == expect;
    }
    EXPECT(isos == 1, "free semilattice is not the subset model");
    for (const auto& b : targets)
      for (const auto& g : all_functions(n, b.carrier(0).size())) {
        std::size_t extending = 0;
        for (const auto& h : homs(*f.algebra, b)) {
          bool ok = true;
          for (std::size_t v = 0; v < n; ++v) ok = ok && h[static_cast<std::size_t>(f.generators[v])] == g[v];
          extending += ok;
        }
        EXPECT(extending == 1, "universal property fails");
        ++checks;
      }
  }
  out.detail = "sizes 0,1,3,7; " + std::to_string(targets.size()) + " targets, " + std::to_string(checks) +
               " generator assignments extend uniquely";
  return out;
}

// ---- 7: free ω-cpo unique factorization

Outcome free_cpo() {
  Outcome out;
  auto preord = rc::theory_preord();
  auto targets = rc::models_up_to_iso_upto(rc::theory_pos(), 4);
  std::size_t exhaustive = 0, sampled = 0;
  // A cover p ◁ U acts only through the top of U, and covers with p below that
  // top are redundant, so single-element covers of the gaps give every case.
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& pre : rc::models_up_to_iso(preord, n)) {
      std::vector<std::pair<int, int>> gaps;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (!pre.has_edge(0, {int(a), int(b)})) gaps.push_back({int(a), int(b)});
      for (std::size_t mask = 0; mask < (std::size_t{1} << gaps.size()); ++mask) {
        enrvar::cpo::CpoPresentation p{pre, {}};
        for (std::size_t i = 0; i < gaps.size(); ++i)
          if (mask >> i & 1) p.covers.push_back({gaps[i].first, {gaps[i].second}});
        auto f = enrvar::cpo::free_omega_cpo(p);
        EXPECT(rc::is_model(f.poset, rc::theory_pos()), "free ω-cpo is not a poset");
        for (const auto& x : targets) EXPECT(factors_uniquely(p, f, x), "unique factorization fails");
        ++exhaustive;
      }
    }
  // Longer chains, checked directly rather than through the reduction.
  std::mt19937 rng(7);
  auto pres = rc::models_up_to_iso_upto(preord, 4);
  while (sampled < 1500) {
    const auto& pre = pres[rng() % pres.size()];
    const std::size_t n = pre.size();
    if (n < 2) continue;
    enrvar::cpo::CpoPresentation p{pre, {}};
    for (std::size_t k = 0, covers = 1 + rng() % 3; k < covers; ++k) {
      std::vector<int> chain{int(rng() % n)};
      for (std::size_t tries = 0; tries < n; ++tries) {
        int u = int(rng() % n);
        if (pre.has_edge(0, {chain.back(), u}) && std::find(chain.begin(), chain.end(), u) == chain.end()) chain.push_back(u);
      }
      p.covers.push_back({int(rng() % n), chain});
    }
    auto f = enrvar::cpo::free_omega_cpo(p);
    for (const auto& x : targets) EXPECT(factors_uniquely(p, f, x), "unique factorization fails on a chain cover");
    ++sampled;
  }
  out.detail = std::to_string(exhaustive) + " presentations exhaustively and " + std::to_string(sampled) +
               " with chain covers, against " + std::to_string(targets.size()) + " posets";
  return out;
}

// ---- 8: with base set, agreement with a plain classical evaluator

struct PlainOp {
  std::string name;
  std::size_t arity;
};

// Tables are row-major with the first argument most significant.
int plain_eval(const std::vector<PlainOp>& ops, const std::vector<Table>& tabs, std::size_t n, const Term& t,
               const std::vector<int>& pt) {
  if (t.is_var()) return pt[t.var_index()];
  std::size_t op = 0;
  while (ops[op].name != t.op()) ++op;
  std::size_t idx = 0;
  for (const auto& a : t.args()) idx = idx * n + static_cast<std::size_t>(plain_eval(ops, tabs, n, a, pt));
  return tabs[op][idx];
}

bool plain_satisfies(const std::vector<PlainOp>& ops, const std::vector<Table>& tabs, std::size_t n,
                     const std::vector<enrvar::syntax::Equation>& eqs) {
  for (const auto& e : eqs)
    for (const auto& pt : all_functions(e.context.size(), n))
      if (plain_eval(ops, tabs, n, e.lhs, pt) != plain_eval(ops, tabs, n, e.rhs, pt)) return false;
  return true;
}

std::size_t power_of(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  while (k--) r *= n;
  return r;
}

// Every table family on an n-element set satisfying the equations.
std::vector<std::vector<Table>> plain_models(const std::vector<PlainOp>& ops, std::size_t n,
                                             const std::vector<enrvar::syntax::Equation>& eqs) {
  std::vector<std::vector<Table>> out;
  std::vector<Table> tabs;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ops.size()) {
      if (plain_satisfies(ops, tabs, n, eqs)) out.push_back(tabs);
      return;
    }
    for (auto f : all_functions(power_of(n, ops[i].arity), n)) {
      tabs.push_back(Table(f.begin(), f.end()));
      rec(i + 1);
      tabs.pop_back();
    }
  };
  rec(0);
  return out;
}

bool plain_hom(const Map& h, const std::vector<PlainOp>& ops, const std::vector<Table>& a, std::size_t na,
               const std::vector<Table>& b, std::size_t nb) {
  for (std::size_t op = 0; op < ops.size(); ++op)
    for (const auto& xs : all_functions(ops[op].arity, na)) {
      std::size_t ia = 0, ib = 0;
      for (int x : xs) ia = ia * na + std::size_t(x), ib = ib * nb + std::size_t(h[std::size_t(x)]);
      if (h[std::size_t(a[op][ia])] != b[op][ib]) return false;
    }
  return true;
}

Term random_term(std::mt19937& rng, const std::vector<PlainOp>& ops, std::size_t nvars, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    if (nvars > 0 && rng() % 4 != 0) return V(rng() % nvars);
    for (const auto& o : ops)
      if (o.arity == 0) return A(o.name);
    return V(rng() % std::max<std::size_t>(nvars, 1));
  }
  const auto& o = ops[rng() % ops.size()];
  std::vector<Term> args;
  for (std::size_t i = 0; i < o.arity; ++i) args.push_back(random_term(rng, ops, nvars, depth - 1));
  return A(o.name, std::move(args));
}

struct RandomTheory {
  std::vector<PlainOp> ops;
  std::vector<enrvar::syntax::Equation> eqs;
  EnrichedTheory theory;
};

RandomTheory random_theory(std::mt19937& rng, std::size_t max_eqs, int depth) {
  const std::vector<PlainOp> pool{{"f", 2}, {"g", 1}, {"c", 0}};
  RandomTheory r;
  for (const auto& o : pool)
    if (rng() % 2) r.ops.push_back(o);
  if (r.ops.empty()) r.ops.push_back(pool[rng() % pool.size()]);
  std::vector<std::pair<std::string, std::size_t>> decl;
  for (const auto& o : r.ops) decl.push_back({o.name, o.arity});
  for (std::size_t i = 0, k = 1 + rng() % max_eqs; i < k; ++i) r.eqs.push_back(eq(2, random_term(rng, r.ops, 2, depth), random_term(rng, r.ops, 2, depth)));
  r.theory = EnrichedTheory{one_sorted(rc::theory_set(), decl), r.eqs, "random"};
  return r;
}

std::vector<Table> tables_of(const Algebra& a) {
  std::vector<Table> out;
  for (std::size_t op = 0; op < a.signature().ops().size(); ++op) out.push_back(a.table(op, 0));
  return out;
}

Outcome base_set_degeneration() {
  Outcome out;
  std::mt19937 rng(1234);
  const auto set_sig = rc::theory_set().signature_ptr();
  std::size_t sat = 0, counts = 0, frees = 0, unsaturated = 0;

  // Satisfaction of random equations in random algebras.
  while (sat < 500) {
    auto rt = random_theory(rng, 1, 3);
    const std::size_t n = 1 + rng() % 3;
    std::vector<Table> tabs;
    std::vector<std::vector<Table>> at;
    for (const auto& o : rt.ops) {
      Table t(power_of(n, o.arity));
      for (auto& v : t) v = int(rng() % n);
      tabs.push_back(t);
      at.push_back({t});
    }
    Algebra a(rt.theory.signature, {discrete(set_sig, n)}, at);
    EXPECT(alg::satisfies_theory(a, rt.theory) == plain_satisfies(rt.ops, tabs, n, rt.eqs), "satisfaction disagrees");
    ++sat;
  }

  // Algebra counts on each carrier size.
  while (counts < 300) {
    auto rt = random_theory(rng, 2, 2);
    for (std::size_t n = 0; n <= 2; ++n) {
      auto plain = plain_models(rt.ops, n, rt.eqs).size();
      EXPECT(alg::count_algebras(rt.theory, {discrete(set_sig, n)}) == plain, "algebra counts disagree");
    }
    ++counts;
  }

  // Free algebras: equations hold, generated by the generators, and the
  // universal property against every plain model of size at most 2.
  while (frees < 250) {
    auto rt = random_theory(rng, 2, 2);
    const std::size_t g = rng() % 3;
    enrvar::monad::FreeAlgebra f;
    try {
      f = enrvar::monad::free_algebra(rt.theory, unary_sort(g), 6, 64);
    } catch (const enrvar::SizeBoundExceeded&) {
      ++unsaturated;
      continue;
    }
    if (!f.saturated) {
      ++unsaturated;
      continue;
    }
    const auto& fa = *f.algebra;
    const std::size_t m = fa.carrier(0).size();
    auto ft = tables_of(fa);
    EXPECT(plain_satisfies(rt.ops, ft, m, rt.eqs), "free algebra fails an equation");
    std::set<int> reach(f.generators.begin(), f.generators.end());
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t op = 0; op < rt.ops.size(); ++op)
        for (const auto& xs : all_functions(rt.ops[op].arity, m)) {
          bool inside = true;
          std::size_t idx = 0;
          for (int x : xs) inside = inside && reach.count(x), idx = idx * m + std::size_t(x);
          if (inside && reach.insert(ft[op][idx]).second) grew = true;
        }
    }
    EXPECT(reach.size() == m, "free algebra is not generated by its generators");
    for (std::size_t n = 0; n <= 2; ++n)
      for (const auto& b : plain_models(rt.ops, n, rt.eqs)) {
        auto maps = all_functions(m, n);
        for (const auto& gen : all_functions(g, n)) {
          std::size_t ext = 0;
          for (const auto& h : maps) {
            bool fits = true;
            for (std::size_t v = 0; v < g; ++v) fits = fits && h[std::size_t(f.generators[v])] == gen[v];
            ext += fits && plain_hom(h, rt.ops, ft, m, b, n);
          }
          EXPECT(ext == 1, "free algebra universal property fails against a plain model");
        }
      }
    ++frees;
  }
  out.detail = std::to_string(sat + counts + frees) + " cases: " + std::to_string(sat) + " satisfaction, " +
               std::to_string(counts) + " theories counted on sizes 0..2, " + std::to_string(frees) +
               " free algebras (" + std::to_string(unsaturated) + " unsaturated draws skipped)";
  return out;
}

// ---- 9: print then parse is a fixed point on the fixture corpus

Outcome dsl_round_trip() {
  Outcome out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(fixture_dir()))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  enrvar::dsl::ParseOptions opts;
  opts.default_base = rc::theory_pos();
  std::size_t theories = 0;
  for (const auto& p : files) {
    auto f = enrvar::dsl::parse_theory(read_fixture(p.filename().string()), opts);
    theories += f.all<enrvar::dsl::TheoryBlock>().size();
    auto printed = enrvar::dsl::print_theory(f);
    auto again = enrvar::dsl::parse_theory(printed);
    EXPECT(enrvar::dsl::same_syntax(f, again), p.filename().string() + " changes under print then parse");
    EXPECT(enrvar::dsl::print_theory(again) == printed, p.filename().string() + " printing is not stable");
  }
  EXPECT(theories >= 20, "fewer than 20 theories in the corpus");
  out.detail = std::to_string(files.size()) + " files, " + std::to_string(theories) + " theories";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cartesian closure of set, preord, pos, simp2, qcat:chain3", cartesian_closure},
      {"chase reflection for preord and pos", chase_reflection},
      {"enriched ordered monoid vs its relational translation", enriched_to_relational},
      {"classical theory with an inequation round-trips", relational_round_trip},
      {"identity and exception truncations are presented", monad_presentation},
      {"free semilattices: 2^n - 1 and the universal property", free_semilattice},
      {"free omega-cpo unique factorization", free_cpo},
      {"base set agrees with a plain evaluator", base_set_degeneration},
      {"DSL print/parse fixed point on the corpus", dsl_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && o.limit > 0 && secs > o.limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(int(o.limit)) + " s limit";
    }
    failed += !o.pass;
    std::printf("[%s] %zu. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
