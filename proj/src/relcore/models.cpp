#include "enrvar/relcore/models.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "enrvar/errors.hpp"

namespace enrvar::relcore {

namespace {

struct Slots {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> arity;
  std::size_t n = 0;
  std::size_t total = 0;

  Slots(const RelSignature& sig, std::size_t n_) : n(n_) {
    for (std::size_t r = 0; r < sig.size(); ++r) {
      offset.push_back(total);
      arity.push_back(sig[r].arity);
      std::size_t c = 1;
      for (std::size_t k = 0; k < sig[r].arity; ++k) c *= n;
      total += c;
    }
  }
  std::size_t slot(std::size_t rel, const Tuple& t) const {
    std::size_t key = 0;
    for (int a : t) key = key * n + static_cast<std::size_t>(a);
    return offset[rel] + key;
  }
  std::vector<Edge> edges(const std::vector<std::int8_t>& state) const {
    std::vector<Edge> out;
    for (std::size_t r = 0; r < offset.size(); ++r) {
      std::size_t count = (r + 1 < offset.size() ? offset[r + 1] : total) - offset[r];
      for (std::size_t key = 0; key < count; ++key) {
        if (state[offset[r] + key] != 1) continue;
        Tuple t(arity[r]);
        std::size_t k = key;
        for (std::size_t pos = arity[r]; pos-- > 0;) {
          t[pos] = static_cast<int>(k % n);
          k /= n;
        }
        out.push_back({r, std::move(t)});
      }
    }
    return out;
  }
};

// Ground Horn clause: all premises true implies conclusion (slot, or -1 for falsum).
struct Clause {
  std::vector<std::size_t> premises;
  long conclusion;
};

std::vector<Clause> ground(const HornTheory& t, const Slots& slots) {
  std::vector<Clause> clauses;
  const std::size_t n = slots.n;
  for (const auto& f : t.axioms()) {
    const std::size_t k = f.var_names.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= n;
    std::vector<int> val(k, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = k; i-- > 0;) {
        val[i] = static_cast<int>(rest % n);
        rest /= n;
      }
      Clause c;
      bool trivial = false;
      for (const auto& p : f.premises) {
        if (p.rel == kEquality) {
          if (val[p.vars[0]] != val[p.vars[1]]) trivial = true;
          continue;
        }
        Tuple tup;
        for (auto v : p.vars) tup.push_back(val[v]);
        c.premises.push_back(slots.slot(p.rel, tup));
      }
      if (trivial) continue;
      if (f.conclusion.rel == kEquality) {
        if (val[f.conclusion.vars[0]] == val[f.conclusion.vars[1]]) continue;
        c.conclusion = -1;
      } else {
        Tuple tup;
        for (auto v : f.conclusion.vars) tup.push_back(val[v]);
        c.conclusion = static_cast<long>(slots.slot(f.conclusion.rel, tup));
        if (std::find(c.premises.begin(), c.premises.end(), static_cast<std::size_t>(c.conclusion)) != c.premises.end()) continue;
      }
      std::sort(c.premises.begin(), c.premises.end());
      c.premises.erase(std::unique(c.premises.begin(), c.premises.end()), c.premises.end());
      clauses.push_back(std::move(c));
    }
  }
  return clauses;
}

bool propagate(const std::vector<Clause>& clauses, std::vector<std::int8_t>& state) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : clauses) {
      std::size_t undecided = 0;
      long open = -1;
      bool dead = false;
      for (auto p : c.premises) {
        if (state[p] == 0) { dead = true; break; }
        if (state[p] < 0) { ++undecided; open = static_cast<long>(p); }
      }
      if (dead) continue;
      const int concl = c.conclusion < 0 ? 0 : state[static_cast<std::size_t>(c.conclusion)];
      if (undecided == 0) {
        if (concl == 0) return false;
        if (concl < 0) {
          state[static_cast<std::size_t>(c.conclusion)] = 1;
          changed = true;
        }
      } else if (undecided == 1 && concl == 0) {
        state[static_cast<std::size_t>(open)] = 0;
        changed = true;
      }
    }
  }
  return true;
}

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Edge bitvector of x relabelled by perm (old index i becomes perm[i]).
std::vector<std::uint8_t> code_under(const FinStructure& x, const std::vector<std::size_t>& perm, const Slots& slots) {
  std::vector<std::uint8_t> bits(slots.total, 0);
  for (std::size_t r = 0; r < x.signature().size(); ++r)
    for (const auto& t : x.edges(r)) {
      Tuple m;
      for (int a : t) m.push_back(static_cast<int>(perm[static_cast<std::size_t>(a)]));
      bits[slots.slot(r, m)] = 1;
    }
  return bits;
}

std::vector<std::uint8_t> canonical_code(const FinStructure& x, const Slots& slots, std::vector<std::size_t>* best_perm) {
  auto perm = identity_perm(x.size());
  std::vector<std::uint8_t> best;
  bool first = true;
  do {
    auto c = code_under(x, perm, slots);
    // Larger code first: edges on low labels, so canonical forms read naturally.
    if (first || c > best) {
      best = std::move(c);
      if (best_perm) *best_perm = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

void for_each_model(const HornTheory& t, std::size_t n, const std::function<bool(const FinStructure&)>& fn) {
  Slots slots(t.signature(), n);
  auto clauses = ground(t, slots);
  std::vector<std::int8_t> state(slots.total, -1);
  bool stop = false;
  std::function<void(std::vector<std::int8_t>&)> search = [&](std::vector<std::int8_t>& st) {
    if (stop || !propagate(clauses, st)) return;
    auto it = std::find(st.begin(), st.end(), static_cast<std::int8_t>(-1));
    if (it == st.end()) {
      if (!fn(FinStructure(t.signature_ptr(), n, slots.edges(st)))) stop = true;
      return;
    }
    const auto pos = static_cast<std::size_t>(it - st.begin());
    for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
      auto next = st;
      next[pos] = v;
      search(next);
      if (stop) return;
    }
  };
  search(state);
}

std::vector<FinStructure> enumerate_models(const HornTheory& t, std::size_t n) {
  std::vector<FinStructure> out;
  for_each_model(t, n, [&](const FinStructure& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

FinStructure canonical_form(const FinStructure& x) {
  Slots slots(x.signature(), x.size());
  std::vector<std::size_t> perm;
  canonical_code(x, slots, &perm);
  std::vector<Edge> edges;
  for (auto e : x.all_edges()) {
    for (auto& a : e.args) a = static_cast<int>(perm[static_cast<std::size_t>(a)]);
    edges.push_back(std::move(e));
  }
  return FinStructure(x.signature_ptr(), x.size(), std::move(edges));
}

bool are_isomorphic(const FinStructure& a, const FinStructure& b) {
  if (!same_signature(a.signature_ptr(), b.signature_ptr()) || a.size() != b.size() || a.edge_count() != b.edge_count())
    return false;
  Slots slots(a.signature(), a.size());
  return canonical_code(a, slots, nullptr) == canonical_code(b, slots, nullptr);
}

std::vector<FinStructure> models_up_to_iso(const HornTheory& t, std::size_t n) {
  Slots slots(t.signature(), n);
  std::map<std::vector<std::uint8_t>, FinStructure, std::greater<>> classes;
  for_each_model(t, n, [&](const FinStructure& m) {
    std::vector<std::size_t> perm;
    auto code = canonical_code(m, slots, &perm);
    if (!classes.count(code)) classes.emplace(code, canonical_form(m));
    return true;
  });
  std::vector<FinStructure> out;
  for (auto& [code, m] : classes) out.push_back(std::move(m));
  return out;
}

std::vector<FinStructure> models_up_to_iso_upto(const HornTheory& t, std::size_t max_n, bool include_empty) {
  std::vector<FinStructure> out;
  for (std::size_t n = include_empty ? 0 : 1; n <= max_n; ++n) {
    auto part = models_up_to_iso(t, n);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<FinStructure> structures_up_to_iso(const SignaturePtr& sig, std::size_t n) {
  Slots slots(*sig, n);
  if (slots.total > 24) throw SizeBoundExceeded("too many edge slots for exhaustive structure enumeration");
  std::map<std::vector<std::uint8_t>, FinStructure, std::greater<>> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.total); ++mask) {
    std::vector<std::int8_t> state(slots.total);
    for (std::size_t i = 0; i < slots.total; ++i) state[i] = (mask >> i) & 1 ? 1 : 0;
    FinStructure x(sig, n, slots.edges(state));
    auto code = canonical_code(x, slots, nullptr);
    if (!classes.count(code)) classes.emplace(code, canonical_form(x));
  }
  std::vector<FinStructure> out;
  for (auto& [code, m] : classes) out.push_back(std::move(m));
  return out;
}

}  // namespace enrvar::relcore
