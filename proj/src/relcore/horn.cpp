#include "enrvar/relcore/horn.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "enrvar/errors.hpp"

namespace enrvar::relcore {

namespace {

void check_signature(const FinStructure& x, const SignaturePtr& sig) {
  if (!same_signature(x.signature_ptr(), sig)) throw SignatureMismatch("structure and theory signatures differ");
}

void check_atom(const HornAtom& a, const RelSignature& sig, std::size_t nvars) {
  if (a.rel == kEquality) {
    if (a.vars.size() != 2) throw InvalidTheory("≐ is binary");
  } else {
    if (a.rel >= sig.size()) throw InvalidTheory("atom on unknown relation");
    if (a.vars.size() != sig[a.rel].arity) throw InvalidTheory("atom arity mismatch on '" + sig[a.rel].name + "'");
  }
  for (auto v : a.vars)
    if (v >= nvars) throw InvalidTheory("atom variable out of range");
}

struct Matcher {
  const FinStructure& x;
  const HornFormula& f;
  const std::function<bool(const std::vector<int>&)>& fn;
  std::vector<std::size_t> order;  // premise order
  std::vector<std::size_t> free_vars;
  std::vector<int> val;
  bool stop = false;

  void free_step(std::size_t k) {
    if (stop) return;
    if (k == free_vars.size()) {
      if (!fn(val)) stop = true;
      return;
    }
    for (int e = 0; e < static_cast<int>(x.size()) && !stop; ++e) {
      val[free_vars[k]] = e;
      free_step(k + 1);
    }
    val[free_vars[k]] = -1;
  }

  void step(std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      free_step(0);
      return;
    }
    const HornAtom& a = f.premises[order[i]];
    if (a.rel == kEquality) {
      int l = val[a.vars[0]], r = val[a.vars[1]];
      if (l >= 0 && r >= 0) {
        if (l == r) step(i + 1);
        return;
      }
      if (l < 0 && r < 0) {
        for (int e = 0; e < static_cast<int>(x.size()) && !stop; ++e) {
          val[a.vars[0]] = e;
          val[a.vars[1]] = e;
          step(i + 1);
        }
        val[a.vars[0]] = -1;
        val[a.vars[1]] = -1;
        return;
      }
      auto unset = l < 0 ? a.vars[0] : a.vars[1];
      val[unset] = l < 0 ? r : l;
      step(i + 1);
      val[unset] = -1;
      return;
    }
    for (const auto& t : x.edges(a.rel)) {
      std::vector<std::size_t> bound;
      bool ok = true;
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto v = a.vars[k];
        if (val[v] < 0) {
          val[v] = t[k];
          bound.push_back(v);
        } else if (val[v] != t[k]) {
          ok = false;
          break;
        }
      }
      if (ok) step(i + 1);
      for (auto v : bound) val[v] = -1;
      if (stop) return;
    }
  }
};

}  // namespace

bool is_reflexivity_axiom(const HornFormula& f, std::size_t rel, std::size_t arity) {
  if (!f.premises.empty() || f.conclusion.rel != rel || f.conclusion.vars.size() != arity) return false;
  return std::all_of(f.conclusion.vars.begin(), f.conclusion.vars.end(),
                     [&](std::size_t v) { return v == f.conclusion.vars.front(); });
}

HornTheory::HornTheory(SignaturePtr sig, std::vector<HornFormula> axioms, std::string name)
    : sig_(std::move(sig)), axioms_(std::move(axioms)), name_(std::move(name)) {
  if (!sig_) sig_ = make_signature({});
  for (const auto& f : axioms_) {
    for (const auto& p : f.premises) check_atom(p, *sig_, f.var_names.size());
    check_atom(f.conclusion, *sig_, f.var_names.size());
  }
  for (std::size_t r = 0; r < sig_->size(); ++r) {
    bool found = std::any_of(axioms_.begin(), axioms_.end(),
                             [&](const HornFormula& f) { return is_reflexivity_axiom(f, r, (*sig_)[r].arity); });
    if (!found)
      throw InvalidTheory("relation '" + (*sig_)[r].name + "' lacks its reflexivity axiom");
  }
}

void for_each_premise_match(const FinStructure& x, const HornFormula& f,
                            const std::function<bool(const std::vector<int>&)>& fn) {
  Matcher m{x, f, fn, {}, {}, std::vector<int>(f.var_names.size(), -1)};
  // Relational premises first, cheapest relation first; equalities last.
  m.order.resize(f.premises.size());
  std::iota(m.order.begin(), m.order.end(), 0);
  std::stable_sort(m.order.begin(), m.order.end(), [&](std::size_t a, std::size_t b) {
    auto cost = [&](std::size_t i) {
      const auto& p = f.premises[i];
      return p.rel == kEquality ? static_cast<std::size_t>(-1) : x.edges(p.rel).size();
    };
    return cost(a) < cost(b);
  });
  std::vector<bool> in_premise(f.var_names.size(), false);
  for (const auto& p : f.premises)
    for (auto v : p.vars) in_premise[v] = true;
  for (std::size_t v = 0; v < f.var_names.size(); ++v)
    if (!in_premise[v]) m.free_vars.push_back(v);
  m.step(0);
}

bool atom_holds(const FinStructure& x, const HornAtom& atom, const std::vector<int>& valuation) {
  if (atom.rel == kEquality) return valuation[atom.vars[0]] == valuation[atom.vars[1]];
  Tuple t;
  t.reserve(atom.vars.size());
  for (auto v : atom.vars) t.push_back(valuation[v]);
  return x.has_edge(atom.rel, t);
}

bool satisfies_formula(const FinStructure& x, const HornFormula& f) {
  bool ok = true;
  for_each_premise_match(x, f, [&](const std::vector<int>& val) {
    if (!atom_holds(x, f.conclusion, val)) ok = false;
    return ok;
  });
  return ok;
}

std::optional<Violation> find_violation(const FinStructure& x, const HornTheory& t) {
  check_signature(x, t.signature_ptr());
  for (std::size_t i = 0; i < t.axioms().size(); ++i) {
    std::optional<Violation> found;
    const auto& f = t.axioms()[i];
    for_each_premise_match(x, f, [&](const std::vector<int>& val) {
      if (atom_holds(x, f.conclusion, val)) return true;
      found = Violation{i, val};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool is_model(const FinStructure& x, const HornTheory& t) { return !find_violation(x, t); }

bool is_pi_morphism(const Map& f, const FinStructure& x, const FinStructure& y) {
  if (!same_signature(x.signature_ptr(), y.signature_ptr())) throw SignatureMismatch("morphism between different signatures");
  if (f.size() != x.size()) throw NotTotal("map is not total on the domain carrier");
  for (int v : f)
    if (v < 0 || v >= static_cast<int>(y.size())) throw NotTotal("map value outside the codomain carrier");
  Tuple img;
  for (std::size_t r = 0; r < x.signature().size(); ++r) {
    for (const auto& t : x.edges(r)) {
      img.clear();
      for (int a : t) img.push_back(f[static_cast<std::size_t>(a)]);
      if (!y.has_edge(r, img)) return false;
    }
  }
  return true;
}

ChaseResult chase(const FinStructure& x, const HornTheory& t) {
  check_signature(x, t.signature_ptr());
  const std::size_t n = x.size();
  const auto& sig = t.signature();
  // Union-find with the first element in carrier order as representative.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  std::vector<std::set<Tuple>> edges(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (const auto& tup : x.edges(r)) edges[r].insert(tup);

  std::vector<int> reps(n);
  std::iota(reps.begin(), reps.end(), 0);
  for (;;) {
    // Current quotient as a structure over the representatives.
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < reps.size(); ++i) pos[static_cast<std::size_t>(reps[i])] = static_cast<int>(i);
    std::vector<Edge> cur_edges;
    for (std::size_t r = 0; r < sig.size(); ++r)
      for (const auto& tup : edges[r]) {
        Tuple m;
        for (int a : tup) m.push_back(pos[static_cast<std::size_t>(a)]);
        cur_edges.push_back({r, std::move(m)});
      }
    FinStructure cur(x.signature_ptr(), reps.size(), std::move(cur_edges));

    bool changed = false;
    for (const auto& f : t.axioms()) {
      for_each_premise_match(cur, f, [&](const std::vector<int>& val) {
        if (atom_holds(cur, f.conclusion, val)) return true;
        if (f.conclusion.rel == kEquality) {
          int a = find(reps[static_cast<std::size_t>(val[f.conclusion.vars[0]])]);
          int b = find(reps[static_cast<std::size_t>(val[f.conclusion.vars[1]])]);
          if (a != b) {
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            changed = true;
          }
        } else {
          Tuple tup;
          for (auto v : f.conclusion.vars) tup.push_back(reps[static_cast<std::size_t>(val[v])]);
          if (edges[f.conclusion.rel].insert(std::move(tup)).second) changed = true;
        }
        return true;
      });
    }
    if (!changed) break;
    // Normalise edges through the union-find.
    for (auto& rel_edges : edges) {
      std::set<Tuple> next;
      for (const auto& tup : rel_edges) {
        Tuple m;
        for (int a : tup) m.push_back(find(a));
        next.insert(std::move(m));
      }
      rel_edges = std::move(next);
    }
    reps.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) reps.push_back(static_cast<int>(i));
  }

  std::vector<int> pos(n, -1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    pos[static_cast<std::size_t>(reps[i])] = static_cast<int>(i);
    ids.push_back(x.id(reps[i]));
  }
  std::vector<Edge> out_edges;
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (const auto& tup : edges[r]) {
      Tuple m;
      for (int a : tup) m.push_back(pos[static_cast<std::size_t>(find(a))]);
      out_edges.push_back({r, std::move(m)});
    }
  Map unit(n);
  for (std::size_t i = 0; i < n; ++i) unit[i] = pos[static_cast<std::size_t>(find(static_cast<int>(i)))];
  return {FinStructure(x.signature_ptr(), std::move(ids), std::move(out_edges)), std::move(unit)};
}

std::string to_string(const HornFormula& f, const RelSignature& sig) {
  std::ostringstream out;
  auto atom = [&](const HornAtom& a) {
    if (a.rel == kEquality) {
      out << f.var_names[a.vars[0]] << " == " << f.var_names[a.vars[1]];
      return;
    }
    out << sig[a.rel].name << "(";
    for (std::size_t i = 0; i < a.vars.size(); ++i) out << (i ? "," : "") << f.var_names[a.vars[i]];
    out << ")";
  };
  for (std::size_t i = 0; i < f.premises.size(); ++i) {
    if (i) out << ", ";
    atom(f.premises[i]);
  }
  out << (f.premises.empty() ? "=> " : " => ");
  atom(f.conclusion);
  return out.str();
}

}  // namespace enrvar::relcore
