#include "enrvar/translate/translate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "enrvar/cpo.hpp"
#include "enrvar/errors.hpp"

namespace enrvar::translate {

using algebra::EnrichedOp;
using algebra::EnrichedSignature;
using algebra::SignaturePtr;
using relcore::FinStructure;
using syntax::Arity;
using syntax::Context;
using syntax::Equation;
using syntax::Term;

namespace {

std::vector<Term> variables(std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Term::var(i));
  return out;
}

std::string fresh_name(const EnrichedSignature& sig, const std::vector<EnrichedOp>& taken, std::string name) {
  auto used = [&](const std::string& n) {
    if (sig.find_op(n) || sig.find_symbol(n)) return true;
    for (const auto& o : taken)
      if (o.name == n) return true;
    return false;
  };
  while (used(name)) name += "_";
  return name;
}

// Terms of one (J, S) group, indexed by first occurrence.
struct Group {
  Arity arity;
  std::size_t sort = 0;
  std::vector<Term> terms;
  std::map<Term, int> index;
  std::vector<relcore::Edge> edges;
  std::vector<int> occurrences;  // every argument position, in order
  std::vector<cpo::Cover> covers;

  int add(const Term& t) {
    auto [it, fresh] = index.emplace(t, static_cast<int>(terms.size()));
    if (fresh) terms.push_back(t);
    return it->second;
  }
};

Group& group_for(std::vector<Group>& groups, const Arity& j, std::size_t sort) {
  for (auto& g : groups)
    if (g.arity == j && g.sort == sort) return g;
  groups.push_back(Group{j, sort, {}, {}, {}, {}, {}});
  return groups.back();
}

std::vector<std::string> term_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("t" + std::to_string(i + 1));
  return ids;
}

std::vector<EnrichedOp> copied_ops(const EnrichedSignature& sig) { return sig.ops(); }

// Equations σ@η(t)(v⃗) ≐ t for each recorded occurrence.
void adjoin(EnrichedTheory& out, const Group& g, const EnrichedOp& op, const relcore::Map& unit) {
  const Context ctx = syntax::canonical_context(g.arity);
  const auto vs = variables(ctx.size());
  for (int i : g.occurrences) {
    auto name = algebra::classical_name(op, static_cast<std::size_t>(unit[static_cast<std::size_t>(i)]));
    out.equations.push_back({ctx, Term::app(name, vs), g.terms[static_cast<std::size_t>(i)], g.sort});
  }
}

}  // namespace

ClassicalTheoryWithRelations enriched_to_relational(const EnrichedTheory& t) {
  t.check();
  const auto& sig = *t.signature;
  ClassicalTheoryWithRelations out;
  out.signature = algebra::underlying_signature(sig);
  out.equations = t.equations;
  out.name = t.name.empty() ? "" : t.name + "_relational";
  const auto& rs = sig.base().signature();
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& op = sig.op(i);
    const Context ctx = syntax::canonical_context(op.input);
    const auto vs = variables(ctx.size());
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (const auto& e : op.param.edges(r)) {
        std::vector<Term> args;
        for (int p : e) args.push_back(Term::app(sig.symbol_name(i, static_cast<std::size_t>(p)), vs));
        out.relations.push_back({ctx, rs[r].name, std::move(args), op.output});
      }
  }
  return out;
}

EnrichedTheory relational_to_enriched(const ClassicalTheoryWithRelations& t, std::vector<TermStructure>* trace) {
  t.check();
  if (!t.chains.empty()) throw InvalidTheory("chain relations need the ω-cpo translation");
  const auto& sig = *t.signature;
  const auto& base = sig.base();
  std::vector<Group> groups;
  for (const auto& r : t.relations) {
    auto perm = syntax::canonical_order(r.context);
    Group& g = group_for(groups, r.context.arity(), r.sort);
    relcore::Edge e{base.signature().index_of(r.relation), {}};
    for (const auto& a : r.args) {
      int idx = g.add(syntax::rename(a, perm));
      e.args.push_back(idx);
      g.occurrences.push_back(idx);
    }
    g.edges.push_back(std::move(e));
  }
  EnrichedTheory out;
  out.name = t.name.empty() ? "" : t.name + "_enriched";
  out.equations = t.equations;
  auto ops = copied_ops(sig);
  std::vector<std::pair<const Group*, relcore::Map>> added;
  std::vector<TermStructure> traces;
  for (const auto& g : groups) {
    FinStructure p(base.signature_ptr(), term_ids(g.terms.size()), g.edges);
    auto chased = relcore::chase(p, base);
    std::string name = fresh_name(sig, ops, "rel_" + g.arity.to_string(sig.sorts()) + "_" + sig.sorts().name(g.sort));
    ops.push_back({name, g.arity, g.sort, chased.model});
    added.push_back({&g, chased.unit});
    traces.push_back({g.arity, g.sort, g.terms, p, chased.model, chased.unit, name});
  }
  out.signature = std::make_shared<const EnrichedSignature>(sig.sorts(), base, ops);
  for (std::size_t k = 0; k < added.size(); ++k)
    adjoin(out, *added[k].first, ops[sig.ops().size() + k], added[k].second);
  if (trace) *trace = std::move(traces);
  out.check();
  return out;
}

std::vector<std::vector<int>> maximal_chains(const FinStructure& poset) {
  const int n = static_cast<int>(poset.size());
  auto lt = [&](int a, int b) { return a != b && poset.has_edge(0, {a, b}); };
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c) cover = !(lt(a, c) && lt(c, b));
      if (cover) succ[static_cast<std::size_t>(a)].push_back(b);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  auto walk = [&](auto&& self, int a) -> void {
    path.push_back(a);
    if (succ[static_cast<std::size_t>(a)].empty()) out.push_back(path);
    for (int b : succ[static_cast<std::size_t>(a)]) self(self, b);
    path.pop_back();
  };
  for (int a = 0; a < n; ++a) {
    bool minimal = true;
    for (int c = 0; c < n && minimal; ++c) minimal = !lt(c, a);
    if (minimal) walk(walk, a);
  }
  return out;
}

ClassicalTheoryWithRelations cpo_enriched_to_classical(const EnrichedTheory& t) {
  t.check();
  const auto& sig = *t.signature;
  if (!algebra::is_poset_base(sig.base())) throw InvalidTheory("the ω-cpo translation needs the poset base");
  ClassicalTheoryWithRelations out;
  out.signature = algebra::underlying_signature(sig);
  out.equations = t.equations;
  out.name = t.name.empty() ? "" : t.name + "_cpo_classical";
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& op = sig.op(i);
    const Context ctx = syntax::canonical_context(op.input);
    const auto vs = variables(ctx.size());
    for (const auto& chain : maximal_chains(op.param)) {
      syntax::ExplicitChain ex;
      for (int p : chain) ex.terms.push_back(Term::app(sig.symbol_name(i, static_cast<std::size_t>(p)), vs));
      Term limit = ex.terms.back();
      out.chains.push_back({ctx, op.output, std::move(ex), std::move(limit)});
    }
  }
  out.check();
  return out;
}

EnrichedTheory cpo_classical_to_enriched(const ClassicalTheoryWithRelations& t, std::size_t unfold_bound,
                                         std::vector<TermStructure>* trace) {
  t.check();
  const auto& sig = *t.signature;
  if (!algebra::is_poset_base(sig.base())) throw InvalidTheory("the ω-cpo translation needs the poset base");
  if (!t.relations.empty())
    throw InvalidTheory("the ω-cpo translation takes chain relations only; translate relation atoms separately");
  const auto& base = sig.base();
  std::vector<Group> groups;
  for (const auto& c : t.chains) {
    auto perm = syntax::canonical_order(c.context);
    perm.push_back(c.context.size());  // the hole stays last
    syntax::ChainRelation r{syntax::canonical_context(c.context.arity()), c.sort, c.chain, syntax::rename(c.limit, perm)};
    if (auto* ex = std::get_if<syntax::ExplicitChain>(&r.chain)) {
      for (auto& term : ex->terms) term = syntax::rename(term, perm);
    } else {
      auto& it = std::get<syntax::IteratedChain>(r.chain);
      it.seed = syntax::rename(it.seed, perm);
      it.step = syntax::rename(it.step, perm);
    }
    std::vector<Term> seq;
    if (auto* ex = std::get_if<syntax::ExplicitChain>(&r.chain)) seq = ex->terms;
    else seq = syntax::unfold_chain(r, unfold_bound);
    Group& g = group_for(groups, c.context.arity(), c.sort);
    std::vector<int> idx;
    for (const auto& term : seq) idx.push_back(g.add(term));
    int lim = g.add(r.limit);
    for (std::size_t n = 0; n < idx.size(); ++n) {
      if (n + 1 < idx.size()) g.edges.push_back({0, {idx[n], idx[n + 1]}});
      g.edges.push_back({0, {idx[n], lim}});
    }
    std::vector<int> chain = idx;
    std::sort(chain.begin(), chain.end());
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    g.covers.push_back({lim, chain});
    g.occurrences.insert(g.occurrences.end(), idx.begin(), idx.end());
    g.occurrences.push_back(lim);
  }
  static const relcore::HornTheory preord = relcore::theory_preord();
  EnrichedTheory out;
  out.name = t.name.empty() ? "" : t.name + "_cpo_enriched";
  out.equations = t.equations;
  auto ops = copied_ops(sig);
  std::vector<std::pair<const Group*, relcore::Map>> added;
  std::vector<TermStructure> traces;
  for (const auto& g : groups) {
    std::vector<relcore::Edge> edges = g.edges;
    for (std::size_t i = 0; i < g.terms.size(); ++i) edges.push_back({0, {static_cast<int>(i), static_cast<int>(i)}});
    FinStructure p(base.signature_ptr(), term_ids(g.terms.size()), edges);
    auto pre = relcore::chase(p, preord).model;
    auto free = cpo::free_omega_cpo({pre, g.covers});
    std::string name = fresh_name(sig, ops, "cpo_" + g.arity.to_string(sig.sorts()) + "_" + sig.sorts().name(g.sort));
    ops.push_back({name, g.arity, g.sort, free.poset});
    added.push_back({&g, free.unit});
    traces.push_back({g.arity, g.sort, g.terms, pre, free.poset, free.unit, name});
  }
  out.signature = std::make_shared<const EnrichedSignature>(sig.sorts(), base, ops);
  for (std::size_t k = 0; k < added.size(); ++k)
    adjoin(out, *added[k].first, ops[sig.ops().size() + k], added[k].second);
  if (trace) *trace = std::move(traces);
  out.check();
  return out;
}

namespace {

bool uses_only(const Term& t, const EnrichedSignature& sig) {
  if (t.is_var()) return true;
  if (!sig.find_symbol(t.op())) return false;
  for (const auto& a : t.args())
    if (!uses_only(a, sig)) return false;
  return true;
}

bool is_defining_side(const Term& t, const std::string& name, std::size_t n) {
  if (t.is_var() || t.op() != name || t.args().size() != n) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (!t.args()[k].is_var() || t.args()[k].var_index() != k) return false;
  return true;
}

}  // namespace

Definitions definitions_between(const AnyTheory& from, const AnyTheory& to) {
  const auto& src = algebra::signature_of(from);
  const auto& dst = algebra::signature_of(to);
  Definitions defs;
  for (const auto& sym : dst.symbols()) {
    const auto& op = dst.op(sym.op);
    if (const auto* s = src.find_symbol(sym.name)) {
      const auto& sop = src.op(s->op);
      if (sop.input != op.input || sop.output != op.output)
        throw NoCorrespondence("symbol '" + sym.name + "' has different types on the two sides");
      defs[sym.name] = {syntax::canonical_context(op.input), Term::app(sym.name, variables(op.input.total()))};
      continue;
    }
    bool found = false;
    for (const auto& e : algebra::equations_of(to)) {
      const std::size_t n = e.context.size();
      if (is_defining_side(e.lhs, sym.name, n) && uses_only(e.rhs, src)) defs[sym.name] = {e.context, e.rhs};
      else if (is_defining_side(e.rhs, sym.name, n) && uses_only(e.lhs, src)) defs[sym.name] = {e.context, e.lhs};
      else continue;
      found = true;
      break;
    }
    if (!found) throw NoCorrespondence("no definition of '" + sym.name + "' over the other signature");
  }
  return defs;
}

algebra::Algebra transport(const algebra::Algebra& a, const SignaturePtr& target, const Definitions& defs) {
  std::vector<std::vector<algebra::Table>> tables(target->ops().size());
  for (const auto& sym : target->symbols()) {
    auto it = defs.find(sym.name);
    if (it == defs.end()) throw NoCorrespondence("no definition of '" + sym.name + "'");
    tables[sym.op].push_back(algebra::interpret_term(a, it->second.context, it->second.term));
  }
  return algebra::Algebra(target, a.carriers(), std::move(tables));
}

std::string describe_carriers(const EnrichedSignature& sig, const std::vector<FinStructure>& carriers) {
  std::ostringstream out;
  for (std::size_t s = 0; s < carriers.size(); ++s) {
    const auto& c = carriers[s];
    if (s) out << "; ";
    out << sig.sorts().name(s) << "=" << c.size();
    bool first = true;
    for (const auto& e : c.all_edges()) {
      bool loop = std::all_of(e.args.begin(), e.args.end(), [&](int x) { return x == e.args.front(); });
      if (loop) continue;
      out << (first ? " [" : " ") << c.signature()[e.rel].name << "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) out << (k ? "," : "") << c.id(e.args[k]);
      out << ")";
      first = false;
    }
    if (!first) out << "]";
  }
  return out.str();
}

EquivalenceReport verify_theory_equivalence(const AnyTheory& left, const AnyTheory& right, const VerifyOptions& opts) {
  return verify_theory_equivalence(left, right, definitions_between(left, right), definitions_between(right, left), opts);
}

EquivalenceReport verify_theory_equivalence(const AnyTheory& left, const AnyTheory& right, const Definitions& forward,
                                            const Definitions& backward, const VerifyOptions& opts) {
  const auto& ls = algebra::signature_of(left);
  const auto& rs = algebra::signature_of(right);
  if (!(ls.sorts() == rs.sorts())) throw InvalidTheory("theories have different sorts");
  if (!(ls.base().signature() == rs.base().signature()) || !(ls.base().axioms() == rs.base().axioms()))
    throw InvalidTheory("theories have different bases");
  EquivalenceReport rep;
  rep.left_name = algebra::name_of(left);
  rep.right_name = algebra::name_of(right);
  algebra::EnumerationOptions eo{opts.node_budget};
  auto families = algebra::carrier_families(ls.base(), ls.sorts().size(), opts.max_carrier, opts.min_carrier);
  std::vector<std::pair<std::size_t, algebra::Algebra>> lefts, rights;  // (family, algebra)
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    CarrierCheck cc;
    cc.descriptor = describe_carriers(ls, fam);
    auto la = algebra::enumerate_algebras(left, fam, eo);
    auto ra = algebra::enumerate_algebras(right, fam, eo);
    cc.left = la.size();
    cc.right = ra.size();
    std::map<std::vector<std::vector<algebra::Table>>, std::size_t> rindex;
    for (std::size_t j = 0; j < ra.size(); ++j) rindex.emplace(ra[j].tables(), j);
    std::vector<char> hit(ra.size(), 0);
    auto fail = [&](const std::string& msg) {
      cc.ok = false;
      rep.failures.push_back(cc.descriptor + ": " + msg);
    };
    for (std::size_t i = 0; i < la.size(); ++i) {
      auto img = transport(la[i], algebra::signature_ptr_of(right), forward);
      auto it = rindex.find(img.tables());
      if (it == rindex.end()) {
        fail("left algebra " + std::to_string(i) + " does not transport to a right algebra");
        continue;
      }
      if (hit[it->second]++) fail("two left algebras transport to right algebra " + std::to_string(it->second));
      if (!(transport(img, algebra::signature_ptr_of(left), backward) == la[i]))
        fail("transport back does not recover left algebra " + std::to_string(i));
      cc.bijection.push_back({i, it->second});
    }
    for (std::size_t j = 0; j < ra.size(); ++j) {
      if (hit[j]) continue;
      fail("right algebra " + std::to_string(j) + " is not reached");
    }
    if (cc.left != cc.right) fail("counts differ");
    if (cc.ok)
      for (std::size_t i = 0; i < la.size(); ++i) {
        lefts.push_back({f, la[i]});
        rights.push_back({f, ra[cc.bijection[i].second]});
      }
    if (!cc.ok) rep.pass = false;
    rep.carriers.push_back(std::move(cc));
  }
  if (opts.compare_hom_objects) {
    std::map<std::pair<std::size_t, std::size_t>, algebra::HomFamily> cache;
    for (std::size_t i = 0; i < lefts.size(); ++i)
      for (std::size_t j = 0; j < lefts.size(); ++j) {
        auto key = std::make_pair(lefts[i].first, lefts[j].first);
        auto it = cache.find(key);
        if (it == cache.end())
          it = cache.emplace(key, algebra::hom_family(families[key.first], families[key.second], ls.base())).first;
        auto hl = algebra::hom_object(lefts[i].second, lefts[j].second, it->second);
        auto hr = algebra::hom_object(rights[i].second, rights[j].second, it->second);
        ++rep.hom_pairs;
        if (!(hl.object == hr.object) || hl.homs != hr.homs) {
          ++rep.hom_mismatches;
          rep.pass = false;
          if (rep.hom_mismatches <= 5)
            rep.failures.push_back("hom-objects differ between corresponding algebra pairs (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
        }
      }
  }
  return rep;
}

}  // namespace enrvar::translate
