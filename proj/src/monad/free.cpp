#include "enrvar/monad/free.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "enrvar/errors.hpp"

namespace enrvar::monad {

using syntax::Term;

namespace {

using Key = std::pair<std::size_t, std::vector<int>>;  // (symbol, argument classes)
using EdgeSet = std::set<std::pair<std::size_t, std::vector<int>>>;

// A term with symbols resolved to indices, so evaluation skips name lookups.
struct Compiled {
  int var = -1;
  std::size_t sym = 0;
  std::vector<Compiled> args;
};

// E-graph over the classical symbols: hash-consed applications, union-find
// classes, and per-sort edge sets on class roots.
class Closure {
 public:
  Closure(const algebra::AnyTheory& t, const Arity& j, std::size_t size_bound)
      : sig_(algebra::signature_of(t)), size_bound_(size_bound), edges_(sig_.sorts().size()) {
    if (const auto* c = std::get_if<algebra::ClassicalTheoryWithRelations>(&t)) {
      if (!c->chains.empty()) throw InvalidTheory("free algebras are not built for theories with chain relations");
      relations_ = c->relations;
    }
    for (const auto& e : algebra::equations_of(t))
      equations_.push_back({compile(e.lhs), compile(e.rhs), context_sorts(e.context)});
    for (const auto& sym : sig_.symbols()) {
      const auto& op = sig_.op(sym.op);
      inputs_.push_back(op.input.flattened());
      outputs_.push_back(op.output);
    }
    auto flat = j.flattened();
    for (std::size_t v = 0; v < flat.size(); ++v) generators_.push_back(fresh(flat[v], Term::var(v)));
  }

  int find(int c) {
    while (parent_[c] != c) c = parent_[c] = parent_[parent_[c]];
    return c;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);  // the earlier class keeps its representative
    parent_[b] = a;
    return true;
  }

  std::vector<int> live(std::size_t sort) {
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (find(c) == c && sort_[c] == sort) out.push_back(c);
    return out;
  }
  std::size_t live_count() {
    std::size_t n = 0;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) n += find(c) == c;
    return n;
  }

  std::optional<int> lookup(std::size_t sym, std::vector<int> args) {
    for (auto& a : args) a = find(a);
    auto it = nodes_.find({sym, args});
    if (it == nodes_.end()) return std::nullopt;
    return find(it->second);
  }

  // Applies every symbol to every tuple of current classes; true if anything new appeared.
  bool apply_round() {
    std::vector<std::vector<int>> classes;
    for (std::size_t s = 0; s < sig_.sorts().size(); ++s) classes.push_back(live(s));
    bool grew = false;
    for (std::size_t sym = 0; sym < inputs_.size(); ++sym)
      for_each_tuple(classes, inputs_[sym], [&](const std::vector<int>& args) {
        if (nodes_.count({sym, args})) return;
        std::vector<Term> sub;
        for (int a : args) sub.push_back(rep_[a]);
        int c = fresh(outputs_[sym], Term::app(sig_.symbols()[sym].name, std::move(sub)));
        nodes_.emplace(Key{sym, args}, c);
        grew = true;
      });
    return grew;
  }

  // Congruence closure, equation instances, induced edges and the base chase, to a joint fixpoint.
  void close() {
    for (bool changed = true; changed;) {
      changed = rebuild();
      changed |= equations();
      changed |= induced_edges();
      changed |= chase();
      if (live_count() > size_bound_)
        throw SizeBoundExceeded("free algebra exceeds " + std::to_string(size_bound_) + " elements");
    }
  }

  bool saturated() {
    std::vector<std::vector<int>> classes;
    for (std::size_t s = 0; s < sig_.sorts().size(); ++s) classes.push_back(live(s));
    bool all = true;
    for (std::size_t sym = 0; sym < inputs_.size() && all; ++sym)
      for_each_tuple(classes, inputs_[sym], [&](const std::vector<int>& args) { all = all && lookup(sym, args); });
    return all;
  }

  FreeAlgebra result(bool saturated, const Arity& j) {
    FreeAlgebra out;
    out.saturated = saturated;
    auto ctx = syntax::canonical_context(j);
    const std::size_t ns = sig_.sorts().size();
    std::vector<std::map<int, int>> pos(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      auto cls = live(s);
      std::vector<std::string> ids;
      std::vector<Term> reps;
      for (std::size_t i = 0; i < cls.size(); ++i) {
        pos[s][cls[i]] = static_cast<int>(i);
        ids.push_back(syntax::to_string(rep_[cls[i]], ctx));
        reps.push_back(rep_[cls[i]]);
      }
      std::vector<relcore::Edge> edges;
      for (const auto& [r, args] : canonical_edges(s)) {
        relcore::Tuple tup;
        for (int a : args) tup.push_back(pos[s].at(a));
        edges.push_back({r, tup});
      }
      out.carriers.emplace_back(sig_.rel_signature(), std::move(ids), std::move(edges));
      out.representatives.push_back(std::move(reps));
    }
    auto flat = j.flattened();
    for (std::size_t v = 0; v < flat.size(); ++v) out.generators.push_back(pos[flat[v]].at(find(generators_[v])));
    if (!saturated) return out;

    std::vector<std::vector<algebra::Table>> tables;
    for (std::size_t op = 0; op < sig_.ops().size(); ++op) {
      tables.emplace_back();
      const auto& o = sig_.op(op);
      auto ins = o.input.flattened();
      std::vector<std::vector<int>> classes;
      for (std::size_t s = 0; s < ns; ++s) classes.push_back(live(s));
      for (std::size_t p = 0; p < o.param.size(); ++p) {
        algebra::Table table;
        const std::size_t sym = sig_.symbol_index(op, p);
        for_each_tuple(classes, ins, [&](const std::vector<int>& args) {
          table.push_back(pos[o.output].at(*lookup(sym, args)));
        });
        tables.back().push_back(std::move(table));
      }
    }
    out.algebra = Algebra(std::make_shared<const algebra::EnrichedSignature>(sig_), out.carriers, std::move(tables));
    return out;
  }

  Algebra finish(Algebra a, const algebra::AnyTheory& t) const {
    Algebra b(algebra::signature_ptr_of(t), a.carriers(), a.tables());
    auto v = algebra::validate_algebra(b);
    if (!v.ok) throw std::logic_error("saturated free algebra is not admissible: " + v.failures.front());
    if (!algebra::satisfies_theory(b, t)) throw std::logic_error("saturated free algebra does not satisfy the theory");
    return b;
  }

 private:
  template <class F>
  static void for_each_tuple(const std::vector<std::vector<int>>& classes, const std::vector<std::size_t>& sorts, F&& fn) {
    for (auto s : sorts)
      if (classes[s].empty()) return;
    std::vector<std::size_t> pos(sorts.size(), 0);
    std::vector<int> args(sorts.size());
    while (true) {
      for (std::size_t i = 0; i < sorts.size(); ++i) args[i] = classes[sorts[i]][pos[i]];
      fn(args);
      std::size_t i = sorts.size();
      while (i > 0 && ++pos[i - 1] == classes[sorts[i - 1]].size()) pos[--i] = 0;
      if (i == 0) return;
    }
  }

  // Calls fn with k tuples x^1..x^k over `sorts` that are r-related coordinatewise.
  template <class F>
  void for_each_power_edge(std::size_t r, const std::vector<std::size_t>& sorts, F&& fn) {
    const std::size_t k = (*sig_.rel_signature())[r].arity;
    std::vector<std::vector<std::vector<int>>> coord;  // per coordinate: r-edges of that sort
    for (auto s : sorts) {
      coord.emplace_back();
      for (const auto& [rel, args] : canonical_edges(s))
        if (rel == r) coord.back().push_back(args);
      if (coord.back().empty()) return;
    }
    std::vector<std::size_t> pos(sorts.size(), 0);
    std::vector<std::vector<int>> xs(k, std::vector<int>(sorts.size()));
    while (true) {
      for (std::size_t c = 0; c < sorts.size(); ++c)
        for (std::size_t i = 0; i < k; ++i) xs[i][c] = coord[c][pos[c]][i];
      fn(xs);
      std::size_t c = sorts.size();
      while (c > 0 && ++pos[c - 1] == coord[c - 1].size()) pos[--c] = 0;
      if (c == 0) return;
    }
  }

  int fresh(std::size_t sort, Term rep) {
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    sort_.push_back(sort);
    rep_.push_back(std::move(rep));
    if (parent_.size() > 64 * size_bound_ + 1024)
      throw SizeBoundExceeded("free algebra closure exceeds its term budget");
    return c;
  }

  EdgeSet canonical_edges(std::size_t s) {
    EdgeSet out;
    for (auto [r, args] : edges_[s]) {
      for (auto& a : args) a = find(a);
      out.insert({r, std::move(args)});
    }
    return out;
  }

  bool add_edge(std::size_t s, std::size_t r, std::vector<int> args) {
    for (auto& a : args) a = find(a);
    return edges_[s].insert({r, std::move(args)}).second;
  }

  bool rebuild() {
    bool any = false;
    for (bool changed = true; changed;) {
      changed = false;
      std::map<Key, int> next;
      for (auto& [key, c] : nodes_) {
        Key k{key.first, key.second};
        for (auto& a : k.second) a = find(a);
        auto [it, fresh] = next.emplace(std::move(k), find(c));
        if (!fresh && unite(it->second, c)) changed = true;
      }
      nodes_ = std::move(next);
      any |= changed;
    }
    for (std::size_t s = 0; s < edges_.size(); ++s) edges_[s] = canonical_edges(s);
    return any;
  }

  std::optional<int> eval(const Term& t, const std::vector<int>& point) {
    if (t.is_var()) return find(point[t.var_index()]);
    const auto* sym = sig_.find_symbol(t.op());
    std::vector<int> args;
    for (const auto& a : t.args()) {
      auto v = eval(a, point);
      if (!v) return std::nullopt;
      args.push_back(*v);
    }
    return lookup(sig_.symbol_index(sym->op, sym->p), std::move(args));
  }

  std::vector<std::size_t> context_sorts(const syntax::Context& ctx) const {
    std::vector<std::size_t> out;
    for (const auto& e : ctx.entries()) out.push_back(e.sort);
    return out;
  }

  Compiled compile(const Term& t) const {
    Compiled c;
    if (t.is_var()) {
      c.var = static_cast<int>(t.var_index());
      return c;
    }
    const auto* sym = sig_.find_symbol(t.op());
    c.sym = sig_.symbol_index(sym->op, sym->p);
    for (const auto& a : t.args()) c.args.push_back(compile(a));
    return c;
  }

  std::optional<int> eval(const Compiled& t, const std::vector<int>& point) {
    if (t.var >= 0) return find(point[static_cast<std::size_t>(t.var)]);
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) {
      auto v = eval(a, point);
      if (!v) return std::nullopt;
      args.push_back(*v);
    }
    auto it = nodes_.find({t.sym, args});
    if (it == nodes_.end()) return std::nullopt;
    return find(it->second);
  }

  static void vars_of(const Compiled& t, std::vector<bool>& seen) {
    if (t.var >= 0) seen[static_cast<std::size_t>(t.var)] = true;
    for (const auto& a : t.args) vars_of(a, seen);
  }

  // All extensions of `b` under which pattern `t` evaluates to class `c` (any class if c < 0).
  using BySym = std::map<std::size_t, std::vector<const Key*>>;
  using Cont = std::function<void()>;

  void match(const Compiled& t, int c, std::vector<int>& b, const BySym& by_sym, const Cont& k) {
    if (t.var >= 0) {
      auto& slot = b[static_cast<std::size_t>(t.var)];
      if (slot >= 0) {
        if (c < 0 || slot == c) k();
        return;
      }
      if (c < 0) return;  // a bare variable pattern is enumerated by the caller
      slot = c;
      k();
      slot = -1;
      return;
    }
    auto it = by_sym.find(t.sym);
    if (it == by_sym.end()) return;
    for (const Key* node : it->second) {
      if (c >= 0 && find(nodes_.at(*node)) != c) continue;
      match_args(t, 0, node->second, b, by_sym, k);
    }
  }
  void match_args(const Compiled& t, std::size_t i, const std::vector<int>& args, std::vector<int>& b,
                  const BySym& by_sym, const Cont& k) {
    if (i == t.args.size()) return k();
    match(t.args[i], args[i], b, by_sym, [&] { match_args(t, i + 1, args, b, by_sym, k); });
  }

  // Instances are found by matching the larger side against existing nodes; both
  // sides must already exist. Rebuilding after each equation exposes its merges.
  bool equations() {
    bool changed = false;
    for (const auto& e : equations_) {
      BySym by_sym;
      for (const auto& [key, c] : nodes_) by_sym[key.first].push_back(&key);
      std::vector<bool> lv(e.sorts.size()), rv(e.sorts.size());
      vars_of(e.lhs, lv);
      vars_of(e.rhs, rv);
      bool use_lhs = e.lhs.var < 0 && (e.rhs.var >= 0 || std::count(lv.begin(), lv.end(), true) >= std::count(rv.begin(), rv.end(), true));
      const Compiled* pat = use_lhs ? &e.lhs : (e.rhs.var < 0 ? &e.rhs : nullptr);
      std::vector<std::vector<int>> classes;
      for (std::size_t s = 0; s < sig_.sorts().size(); ++s) classes.push_back(live(s));
      std::vector<std::pair<int, int>> merges;
      std::vector<int> b(e.sorts.size(), -1);
      auto finish = [&] {
        // Variables the pattern leaves free range over all classes of their sort.
        std::vector<std::size_t> free_vars, free_sorts;
        for (std::size_t v = 0; v < b.size(); ++v)
          if (b[v] < 0) free_vars.push_back(v), free_sorts.push_back(e.sorts[v]);
        auto point = b;
        for_each_tuple(classes, free_sorts, [&](const std::vector<int>& rest) {
          for (std::size_t i = 0; i < free_vars.size(); ++i) point[free_vars[i]] = rest[i];
          auto l = eval(e.lhs, point), r = eval(e.rhs, point);
          if (l && r && *l != *r) merges.push_back({*l, *r});
        });
      };
      if (pat) match(*pat, -1, b, by_sym, finish);
      else finish();
      bool merged = false;
      for (auto [l, r] : merges) merged |= unite(l, r);
      if (merged) rebuild();
      changed |= merged;
    }
    return changed;
  }

  bool induced_edges() {
    bool changed = false;
    const auto& rs = *sig_.rel_signature();
    for (std::size_t sym = 0; sym < inputs_.size(); ++sym) {
      const auto& cs = sig_.symbols()[sym];
      const auto& param = sig_.op(cs.op).param;
      if (cs.p != 0) continue;  // one pass per operation covers all its symbols
      for (std::size_t r = 0; r < rs.size(); ++r)
        for (const auto& pe : param.edges(r))
          for_each_power_edge(r, inputs_[sym], [&](const std::vector<std::vector<int>>& xs) {
            std::vector<int> img;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              auto v = lookup(sig_.symbol_index(cs.op, static_cast<std::size_t>(pe[i])), xs[i]);
              if (!v) return;
              img.push_back(*v);
            }
            changed |= add_edge(outputs_[sym], r, std::move(img));
          });
    }
    for (const auto& atom : relations_) {
      auto r = rs.index_of(atom.relation);
      for_each_power_edge(r, context_sorts(atom.context), [&](const std::vector<std::vector<int>>& xs) {
        std::vector<int> img;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          auto v = eval(atom.args[i], xs[i]);
          if (!v) return;
          img.push_back(*v);
        }
        changed |= add_edge(atom.sort, r, std::move(img));
      });
    }
    return changed;
  }

  bool chase() {
    bool changed = false;
    for (std::size_t s = 0; s < sig_.sorts().size(); ++s) {
      auto cls = live(s);
      std::map<int, int> pos;
      for (std::size_t i = 0; i < cls.size(); ++i) pos[cls[i]] = static_cast<int>(i);
      std::vector<relcore::Edge> edges;
      for (const auto& [r, args] : canonical_edges(s)) {
        relcore::Tuple tup;
        for (int a : args) tup.push_back(pos.at(a));
        edges.push_back({r, tup});
      }
      relcore::FinStructure x(sig_.rel_signature(), cls.size(), std::move(edges));
      auto c = relcore::chase(x, sig_.base());
      std::vector<int> first(c.model.size(), -1);
      for (std::size_t i = 0; i < cls.size(); ++i) {
        auto m = static_cast<std::size_t>(c.unit[i]);
        if (first[m] < 0) first[m] = cls[i];
        else changed |= unite(first[m], cls[i]);
      }
      for (const auto& e : c.model.all_edges()) {
        std::vector<int> args;
        for (int a : e.args) args.push_back(first[static_cast<std::size_t>(a)]);
        changed |= add_edge(s, e.rel, std::move(args));
      }
    }
    return changed;
  }

  const algebra::EnrichedSignature& sig_;
  std::size_t size_bound_;
  struct CompiledEquation {
    Compiled lhs, rhs;
    std::vector<std::size_t> sorts;
  };
  std::vector<CompiledEquation> equations_;
  std::vector<syntax::RelationAtom> relations_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::vector<std::size_t> outputs_;
  std::vector<int> parent_;
  std::vector<std::size_t> sort_;
  std::vector<Term> rep_;
  std::map<Key, int> nodes_;
  std::vector<EdgeSet> edges_;
  std::vector<int> generators_;
};

}  // namespace

FreeAlgebra free_algebra(const algebra::AnyTheory& t, const Arity& j, std::size_t depth_bound, std::size_t size_bound) {
  Closure cl(t, j, size_bound);
  cl.close();
  std::size_t rounds = 0;
  bool grew = true;
  while (rounds < depth_bound) {
    grew = cl.apply_round();
    if (!grew) break;
    ++rounds;
    cl.close();
  }
  bool sat = !grew || cl.saturated();
  auto out = cl.result(sat, j);
  out.rounds = rounds;
  if (out.algebra) out.algebra = cl.finish(*out.algebra, t);
  return out;
}

MonadFromTheory monad_from_theory(const algebra::AnyTheory& t, std::vector<Arity> arities, std::size_t depth_bound,
                                  std::size_t size_bound) {
  const auto& sig = algebra::signature_of(t);
  MonadFromTheory res;
  auto& m = res.monad;
  m.base = sig.base();
  m.sorts = sig.sorts();
  m.arities = std::move(arities);
  m.name = algebra::name_of(t);
  for (const auto& j : m.arities) {
    auto f = free_algebra(t, j, depth_bound, size_bound);
    if (!f.saturated)
      throw NotSaturated("free algebra on arity " + j.to_string(m.sorts) + " does not saturate within depth " +
                         std::to_string(depth_bound));
    m.T.push_back(f.algebra->carriers());
    m.unit.push_back(f.generators);
    res.free.push_back(std::move(f));
  }
  const std::size_t nj = m.arities.size();
  m.ext.assign(nj, std::vector<std::vector<std::vector<Map>>>(nj));
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t k = 0; k < nj; ++k) {
      const auto& ak = *res.free[k].algebra;
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        std::vector<Map> maps;
        for (std::size_t s = 0; s < m.sorts.size(); ++s) {
          Map f;
          for (const auto& rep : res.free[j].representatives[s]) f.push_back(algebra::evaluate_term(ak, rep, kt));
          maps.push_back(std::move(f));
        }
        m.ext[j][k].push_back(std::move(maps));
      }
    }
  return res;
}

RoundTrip round_trip_definitions(const algebra::AnyTheory& t, const MonadFromTheory& mt) {
  const auto& m = mt.monad;
  const auto& sig = algebra::signature_of(t);
  auto msig = theory_from_monad(m).signature;
  RoundTrip rt;
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    auto ctx = syntax::canonical_context(m.arities[j]);
    for (std::size_t s = 0; s < m.sorts.size(); ++s)
      for (std::size_t p = 0; p < m.T[j][s].size(); ++p)
        rt.forward[msig->symbol_name(j * m.sorts.size() + s, p)] = {ctx, mt.free[j].representatives[s][p]};
  }
  for (const auto& sym : sig.symbols()) {
    const auto& op = sig.op(sym.op);
    std::size_t j = m.arities.size();
    for (std::size_t i = 0; i < m.arities.size(); ++i)
      if (m.arities[i] == op.input) j = i;
    if (j == m.arities.size())
      throw NoCorrespondence("arity " + op.input.to_string(m.sorts) + " of " + sym.name + " is not in the truncation");
    auto ctx = syntax::canonical_context(op.input);
    std::vector<Term> vs;
    for (std::size_t v = 0; v < ctx.size(); ++v) vs.push_back(Term::var(v));
    const auto& a = *mt.free[j].algebra;
    Term applied = Term::app(sym.name, vs);
    int elem = algebra::evaluate_term(a, applied, mt.free[j].generators);
    rt.backward[sym.name] = {ctx, Term::app(msig->symbol_name(j * m.sorts.size() + op.output,
                                                               static_cast<std::size_t>(elem)), vs)};
  }
  return rt;
}

}  // namespace enrvar::monad
