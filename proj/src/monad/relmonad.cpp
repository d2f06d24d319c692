#include "enrvar/monad/relmonad.hpp"

#include <map>
#include <set>
#include <sstream>

#include "enrvar/errors.hpp"

namespace enrvar::monad {

using algebra::EnrichedOp;
using algebra::EnrichedSignature;
using syntax::Term;

namespace {

std::vector<int> decode_radix(std::size_t index, const std::vector<std::size_t>& radices) {
  return relcore::product_index_to_components(index, radices);
}

std::size_t radix_count(const std::vector<std::size_t>& radices) {
  std::size_t n = 1;
  for (auto r : radices) n *= r;
  return n;
}

// Local position of each variable within its sort, and the offset of each
// sort's block in the flattened order.
struct VarLayout {
  std::vector<std::size_t> sort, local;
  std::map<std::size_t, std::size_t> offset;
  explicit VarLayout(const Arity& j) {
    std::map<std::size_t, std::size_t> seen;
    auto flat = j.flattened();
    for (std::size_t t = 0; t < flat.size(); ++t) {
      if (!offset.count(flat[t])) offset[flat[t]] = t;
      sort.push_back(flat[t]);
      local.push_back(seen[flat[t]]++);
    }
  }
  std::size_t global(std::size_t s, std::size_t l) const { return offset.at(s) + l; }
};

std::vector<std::size_t> power_sizes(const std::vector<FinStructure>& carriers, const Arity& j) {
  std::vector<std::size_t> out;
  for (auto s : j.flattened()) out.push_back(carriers[s].size());
  return out;
}

std::string tuple_string(const std::vector<int>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

// Coproduct of discrete points, ids given; throws if the base collapses it.
FinStructure discrete_model(const relcore::HornTheory& base, std::vector<std::string> ids) {
  std::vector<relcore::Edge> loops;
  const auto& sig = base.signature();
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (std::size_t i = 0; i < ids.size(); ++i) loops.push_back({r, relcore::Tuple(sig[r].arity, static_cast<int>(i))});
  FinStructure x(base.signature_ptr(), std::move(ids), std::move(loops));
  auto c = relcore::chase(x, base);
  if (c.model.size() != x.size()) throw InvalidTheory("the base identifies distinct points of a coproduct of terminals");
  return c.model;
}

algebra::SignaturePtr monad_signature(const RelMonadData& m) {
  std::vector<EnrichedOp> ops;
  for (std::size_t j = 0; j < m.arities.size(); ++j)
    for (std::size_t s = 0; s < m.sorts.size(); ++s) ops.push_back({monad_op_name(m, j, s), m.arities[j], s, m.T[j][s]});
  return std::make_shared<const EnrichedSignature>(m.sorts, m.base, ops);
}

std::size_t op_index(const RelMonadData& m, std::size_t j, std::size_t s) { return j * m.sorts.size() + s; }

}  // namespace

std::size_t RelMonadData::index_of(const Arity& j) const {
  for (std::size_t i = 0; i < arities.size(); ++i)
    if (arities[i] == j) return i;
  throw InvalidTheory("arity " + j.to_string(sorts) + " is not in the truncation");
}

std::vector<std::size_t> RelMonadData::hom_radices(std::size_t j, std::size_t k) const {
  std::vector<std::size_t> out;
  for (auto s : arities[j].flattened()) out.push_back(T[k][s].size());
  return out;
}

std::size_t RelMonadData::hom_count(std::size_t j, std::size_t k) const { return radix_count(hom_radices(j, k)); }

std::vector<int> RelMonadData::decode(std::size_t j, std::size_t k, std::size_t index) const {
  return decode_radix(index, hom_radices(j, k));
}

std::size_t RelMonadData::encode(std::size_t j, std::size_t k, const std::vector<int>& tuple) const {
  return relcore::product_components_to_index(tuple, hom_radices(j, k));
}

std::vector<FinStructure> arity_object(const relcore::HornTheory& base, const syntax::SortSet& sorts, const Arity& j) {
  VarLayout lay(j);
  std::vector<FinStructure> out;
  for (std::size_t s = 0; s < sorts.size(); ++s) {
    std::vector<std::string> ids;
    for (std::size_t l = 0; l < j.count(s); ++l) ids.push_back("v" + std::to_string(lay.global(s, l) + 1));
    out.push_back(discrete_model(base, std::move(ids)));
  }
  return out;
}

std::string monad_op_name(const RelMonadData& m, std::size_t j, std::size_t sort) {
  return "sig_" + m.arities[j].to_string(m.sorts) + "_" + m.sorts.name(sort);
}

LawReport check_relative_monad(const RelMonadData& m) {
  LawReport r;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    if (r.failures.size() < 50) r.failures.push_back(msg);
  };
  const std::size_t ns = m.sorts.size(), nj = m.arities.size();
  auto jname = [&](std::size_t j) { return m.arities[j].to_string(m.sorts); };
  // Shapes first; the laws below index freely.
  if (m.T.size() != nj || m.unit.size() != nj || m.ext.size() != nj) {
    fail("tables do not cover every arity");
    r.well_formed = false;
    return r;
  }
  for (std::size_t j = 0; j < nj; ++j) {
    if (m.T[j].size() != ns) fail("T" + jname(j) + " needs one object per sort");
    else
      for (std::size_t s = 0; s < ns; ++s)
        if (!relcore::is_model(m.T[j][s], m.base))
          fail("T" + jname(j) + " at sort " + m.sorts.name(s) + " is not a base model");
  }
  if (!r.ok) {
    r.well_formed = false;
    return r;
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    if (m.unit[j].size() != flat.size()) fail("unit of " + jname(j) + " has the wrong length");
    else
      for (std::size_t t = 0; t < flat.size(); ++t)
        if (m.unit[j][t] < 0 || m.unit[j][t] >= static_cast<int>(m.T[j][flat[t]].size()))
          fail("unit of " + jname(j) + " leaves T" + jname(j));
    if (m.ext[j].size() != nj) {
      fail("ext of " + jname(j) + " does not cover every arity");
      continue;
    }
    for (std::size_t k = 0; k < nj; ++k) {
      if (m.ext[j][k].size() != m.hom_count(j, k)) {
        fail("ext " + jname(j) + "->" + jname(k) + " does not list every k");
        continue;
      }
      for (std::size_t ki = 0; ki < m.ext[j][k].size(); ++ki) {
        const auto& maps = m.ext[j][k][ki];
        bool shaped = maps.size() == ns;
        for (std::size_t s = 0; shaped && s < ns; ++s) {
          shaped = maps[s].size() == m.T[j][s].size();
          for (int v : shaped ? maps[s] : Map{}) shaped = shaped && v >= 0 && v < static_cast<int>(m.T[k][s].size());
        }
        if (!shaped) {
          fail("ext " + jname(j) + "->" + jname(k) + " at k=" + tuple_string(m.decode(j, k, ki)) + " is malformed");
          continue;
        }
        for (std::size_t s = 0; s < ns; ++s)
          if (!relcore::is_pi_morphism(maps[s], m.T[j][s], m.T[k][s]))
            fail("k* for " + jname(j) + "->" + jname(k) + " at k=" + tuple_string(m.decode(j, k, ki)) +
                 " is not a morphism at sort " + m.sorts.name(s));
      }
    }
  }
  if (!r.ok) {
    r.well_formed = false;
    return r;
  }

  for (std::size_t j = 0; j < nj; ++j) {
    const auto& id = m.ext[j][j][m.encode(j, j, m.unit[j])];
    for (std::size_t s = 0; s < ns; ++s) {
      ++r.checked;
      for (std::size_t p = 0; p < id[s].size(); ++p)
        if (id[s][p] != static_cast<int>(p)) {
          fail("unit law: eta* is not the identity on T" + jname(j) + " at " + m.T[j][s].id(static_cast<int>(p)));
          break;
        }
    }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    for (std::size_t k = 0; k < nj; ++k)
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        ++r.checked;
        for (std::size_t t = 0; t < flat.size(); ++t)
          if (m.ext[j][k][ki][flat[t]][static_cast<std::size_t>(m.unit[j][t])] != kt[t]) {
            fail("unit law: k* . eta differs from k for " + jname(j) + "->" + jname(k) + " at k=" + tuple_string(kt));
            break;
          }
      }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    for (std::size_t k = 0; k < nj; ++k)
      for (std::size_t l = 0; l < nj; ++l)
        for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
          auto kt = m.decode(j, k, ki);
          for (std::size_t li = 0; li < m.hom_count(k, l); ++li) {
            const auto& lstar = m.ext[k][l][li];
            std::vector<int> c(flat.size());
            for (std::size_t t = 0; t < flat.size(); ++t) c[t] = lstar[flat[t]][static_cast<std::size_t>(kt[t])];
            const auto& lhs = m.ext[j][l][m.encode(j, l, c)];
            ++r.checked;
            bool same = true;
            for (std::size_t s = 0; s < ns && same; ++s)
              for (std::size_t p = 0; p < m.T[j][s].size() && same; ++p)
                same = lhs[s][p] == lstar[s][static_cast<std::size_t>(m.ext[j][k][ki][s][p])];
            if (!same)
              fail("associativity: (l* . k)* differs from l* . k* for " + jname(j) + "->" + jname(k) + "->" + jname(l) +
                   " at k=" + tuple_string(kt) + ", l=" + tuple_string(m.decode(k, l, li)));
          }
        }
  }

  // Admissibility: k ↦ k* is a morphism between the hom-objects.
  for (std::size_t j = 0; j < nj; ++j) {
    VarLayout lay(m.arities[j]);
    auto jobj = arity_object(m.base, m.sorts, m.arities[j]);
    for (std::size_t k = 0; k < nj; ++k) {
      auto in = algebra::hom_family(jobj, m.T[k], m.base);
      auto out = algebra::hom_family(m.T[j], m.T[k], m.base);
      std::map<std::vector<Map>, int> out_index;
      for (std::size_t i = 0; i < out.families.size(); ++i) out_index.emplace(out.families[i], static_cast<int>(i));
      std::vector<int> image(in.families.size());
      for (std::size_t i = 0; i < in.families.size(); ++i) {
        std::vector<int> kt(lay.sort.size());
        for (std::size_t t = 0; t < kt.size(); ++t) kt[t] = in.families[i][lay.sort[t]][lay.local[t]];
        image[i] = out_index.at(m.ext[j][k][m.encode(j, k, kt)]);
      }
      ++r.checked;
      for (const auto& e : in.object.all_edges()) {
        std::vector<int> img;
        for (int a : e.args) img.push_back(image[static_cast<std::size_t>(a)]);
        if (!out.object.has_edge(e.rel, img)) {
          fail("ext " + jname(j) + "->" + jname(k) + " is not admissible: a " + m.base.signature()[e.rel].name +
               "-edge between morphisms is not preserved");
          break;
        }
      }
    }
  }
  return r;
}

EnrichedTheory theory_from_monad(const RelMonadData& m) {
  auto sig = monad_signature(m);
  EnrichedTheory t{sig, {}, m.name.empty() ? "" : m.name + "_theory"};
  const std::size_t nj = m.arities.size(), ns = m.sorts.size();
  auto vars = [](std::size_t n) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(Term::var(i));
    return out;
  };
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    for (std::size_t k = 0; k < nj; ++k) {
      auto ctx = syntax::canonical_context(m.arities[k]);
      auto vs = vars(ctx.size());
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        std::vector<Term> args;
        for (std::size_t t = 0; t < flat.size(); ++t)
          args.push_back(Term::app(sig->symbol_name(op_index(m, k, flat[t]), static_cast<std::size_t>(kt[t])), vs));
        for (std::size_t s = 0; s < ns; ++s)
          for (std::size_t p = 0; p < m.T[j][s].size(); ++p) {
            auto q = static_cast<std::size_t>(m.ext[j][k][ki][s][p]);
            t.equations.push_back({ctx, Term::app(sig->symbol_name(op_index(m, k, s), q), vs),
                                   Term::app(sig->symbol_name(op_index(m, j, s), p), args), s});
          }
      }
    }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    auto ctx = syntax::canonical_context(m.arities[j]);
    auto vs = vars(ctx.size());
    for (std::size_t v = 0; v < flat.size(); ++v)
      t.equations.push_back({ctx,
                             Term::app(sig->symbol_name(op_index(m, j, flat[v]), static_cast<std::size_t>(m.unit[j][v])), vs),
                             Term::var(v), flat[v]});
  }
  return t;
}

Algebra to_theory_algebra(const TjAlgebra& a, const RelMonadData& m, const algebra::SignaturePtr& sig) {
  std::vector<std::vector<algebra::Table>> tables;
  for (std::size_t j = 0; j < m.arities.size(); ++j)
    for (std::size_t s = 0; s < m.sorts.size(); ++s) tables.push_back(a.table[j][s]);
  return Algebra(sig, a.carrier, std::move(tables));
}

TjAlgebra from_theory_algebra(const Algebra& a, const RelMonadData& m) {
  TjAlgebra out{a.carriers(), {}};
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    out.table.emplace_back();
    for (std::size_t s = 0; s < m.sorts.size(); ++s) out.table.back().push_back(a.tables()[op_index(m, j, s)]);
  }
  return out;
}

TjCheck is_tj_algebra(const TjAlgebra& a, const RelMonadData& m) {
  TjCheck res;
  auto fail = [&](std::string msg) {
    res.ok = false;
    res.reason = std::move(msg);
    return res;
  };
  const std::size_t nj = m.arities.size(), ns = m.sorts.size();
  if (a.carrier.size() != ns || a.table.size() != nj) return fail("shape does not match the truncation");
  for (std::size_t j = 0; j < nj; ++j) {
    const std::size_t dom = radix_count(power_sizes(a.carrier, m.arities[j]));
    if (a.table[j].size() != ns) return fail("shape does not match the truncation");
    for (std::size_t s = 0; s < ns; ++s) {
      if (a.table[j][s].size() != m.T[j][s].size()) return fail("shape does not match the truncation");
      for (const auto& row : a.table[j][s]) {
        if (row.size() != dom) return fail("shape does not match the truncation");
        for (int v : row)
          if (v < 0 || v >= static_cast<int>(a.carrier[s].size())) return fail("value outside the carrier");
      }
    }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    auto sizes = power_sizes(a.carrier, m.arities[j]);
    for (std::size_t x = 0; x < radix_count(sizes); ++x) {
      auto xt = decode_radix(x, sizes);
      for (std::size_t t = 0; t < flat.size(); ++t)
        if (a.table[j][flat[t]][static_cast<std::size_t>(m.unit[j][t])][x] != xt[t])
          return fail("unit equation fails for " + m.arities[j].to_string(m.sorts) + " at variable " +
                      std::to_string(t + 1) + ", x=" + tuple_string(xt));
    }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    auto jsizes = power_sizes(a.carrier, m.arities[j]);
    for (std::size_t k = 0; k < nj; ++k) {
      auto ksizes = power_sizes(a.carrier, m.arities[k]);
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        for (std::size_t x = 0; x < radix_count(ksizes); ++x) {
          std::vector<int> y(flat.size());
          for (std::size_t t = 0; t < flat.size(); ++t) y[t] = a.table[k][flat[t]][static_cast<std::size_t>(kt[t])][x];
          auto yi = relcore::product_components_to_index(y, jsizes);
          for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t p = 0; p < m.T[j][s].size(); ++p)
              if (a.table[k][s][static_cast<std::size_t>(m.ext[j][k][ki][s][p])][x] != a.table[j][s][p][yi])
                return fail("extension equation fails for " + m.arities[j].to_string(m.sorts) + "->" +
                            m.arities[k].to_string(m.sorts) + " at k=" + tuple_string(kt) + ", p=" +
                            m.T[j][s].id(static_cast<int>(p)) + ", x=" + tuple_string(decode_radix(x, ksizes)));
        }
      }
    }
  }
  auto report = algebra::validate_algebra(to_theory_algebra(a, m, monad_signature(m)));
  if (!report.ok) return fail("not admissible: " + report.failures.front());
  return res;
}

TjAlgebra kleisli_algebra(const RelMonadData& m, std::size_t k) {
  TjAlgebra a{m.T[k], {}};
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    a.table.emplace_back();
    for (std::size_t s = 0; s < m.sorts.size(); ++s) {
      std::vector<std::vector<int>> rows(m.T[j][s].size(), std::vector<int>(m.hom_count(j, k)));
      for (std::size_t x = 0; x < m.hom_count(j, k); ++x)
        for (std::size_t p = 0; p < rows.size(); ++p) rows[p][x] = m.ext[j][k][x][s][p];
      a.table.back().push_back(std::move(rows));
    }
  }
  return a;
}

std::vector<TjAlgebra> enumerate_tj_algebras(const RelMonadData& m, const std::vector<FinStructure>& carriers,
                                             std::uint64_t node_budget) {
  auto sig = monad_signature(m);
  algebra::Search search(sig, carriers);
  using Expr = algebra::Search::Expr;
  search.add_admissibility();
  const std::size_t nj = m.arities.size(), ns = m.sorts.size();
  auto consts = [&](const std::vector<int>& xs) {
    std::vector<Expr> out;
    for (int v : xs) out.push_back(search.constant(v));
    return out;
  };
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    auto sizes = power_sizes(carriers, m.arities[j]);
    for (std::size_t x = 0; x < radix_count(sizes); ++x) {
      auto xt = decode_radix(x, sizes);
      for (std::size_t t = 0; t < flat.size(); ++t)
        search.require_equal(search.cell(op_index(m, j, flat[t]), static_cast<std::size_t>(m.unit[j][t]), consts(xt)),
                             search.constant(xt[t]));
    }
  }
  for (std::size_t j = 0; j < nj; ++j) {
    auto flat = m.arities[j].flattened();
    for (std::size_t k = 0; k < nj; ++k) {
      auto ksizes = power_sizes(carriers, m.arities[k]);
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        for (std::size_t x = 0; x < radix_count(ksizes); ++x) {
          auto xs = consts(decode_radix(x, ksizes));
          std::vector<Expr> inner;
          for (std::size_t t = 0; t < flat.size(); ++t)
            inner.push_back(search.cell(op_index(m, k, flat[t]), static_cast<std::size_t>(kt[t]), xs));
          for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t p = 0; p < m.T[j][s].size(); ++p)
              search.require_equal(search.cell(op_index(m, k, s), static_cast<std::size_t>(m.ext[j][k][ki][s][p]), xs),
                                   search.cell(op_index(m, j, s), p, inner));
        }
      }
    }
  }
  std::vector<TjAlgebra> out;
  search.run(
      [&](const Algebra& a) {
        out.push_back(from_theory_algebra(a, m));
        return true;
      },
      node_budget);
  return out;
}

bool is_tj_homomorphism(const std::vector<Map>& f, const TjAlgebra& a, const TjAlgebra& b, const RelMonadData& m) {
  for (std::size_t s = 0; s < m.sorts.size(); ++s)
    if (!relcore::is_pi_morphism(f[s], a.carrier[s], b.carrier[s])) return false;
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    auto flat = m.arities[j].flattened();
    auto sa = power_sizes(a.carrier, m.arities[j]), sb = power_sizes(b.carrier, m.arities[j]);
    for (std::size_t x = 0; x < radix_count(sa); ++x) {
      auto xt = decode_radix(x, sa);
      for (std::size_t t = 0; t < xt.size(); ++t) xt[t] = f[flat[t]][static_cast<std::size_t>(xt[t])];
      auto fx = relcore::product_components_to_index(xt, sb);
      for (std::size_t s = 0; s < m.sorts.size(); ++s)
        for (std::size_t p = 0; p < m.T[j][s].size(); ++p)
          if (f[s][static_cast<std::size_t>(a.table[j][s][p][x])] != b.table[j][s][p][fx]) return false;
    }
  }
  return true;
}

PresentationReport verify_presentation(const RelMonadData& m, const translate::VerifyOptions& opts) {
  PresentationReport rep;
  rep.laws = check_relative_monad(m);
  if (!rep.laws.ok) rep.pass = false;
  if (!rep.laws.well_formed) return rep;
  auto theory = theory_from_monad(m);
  const auto& sig = theory.signature;
  rep.equivalence.left_name = m.name.empty() ? "Tj" : m.name;
  rep.equivalence.right_name = theory.name;

  std::set<std::size_t> failing;
  for (std::size_t k = 0; k < m.arities.size(); ++k) {
    auto a = to_theory_algebra(kleisli_algebra(m, k), m, sig);
    for (std::size_t e = 0; e < theory.equations.size(); ++e)
      if (!algebra::satisfies_equation(a, theory.equations[e])) failing.insert(e);
  }
  for (auto e : failing) {
    const auto& eq = theory.equations[e];
    rep.failing_equations.push_back("[" + std::to_string(e) + "] " + syntax::to_string(eq.lhs, eq.context) + " = " +
                                    syntax::to_string(eq.rhs, eq.context));
  }
  if (!failing.empty()) rep.pass = false;

  auto& eqv = rep.equivalence;
  auto families = algebra::carrier_families(m.base, m.sorts.size(), opts.max_carrier, opts.min_carrier);
  std::vector<std::pair<std::size_t, TjAlgebra>> tjs;
  std::vector<Algebra> ths;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    translate::CarrierCheck cc;
    cc.descriptor = translate::describe_carriers(*sig, fam);
    auto left = enumerate_tj_algebras(m, fam, opts.node_budget);
    auto right = algebra::enumerate_algebras(theory, fam, {opts.node_budget});
    cc.left = left.size();
    cc.right = right.size();
    std::map<std::vector<std::vector<algebra::Table>>, std::size_t> index;
    for (std::size_t i = 0; i < right.size(); ++i) index.emplace(right[i].tables(), i);
    std::vector<char> hit(right.size(), 0);
    auto fail = [&](const std::string& msg) {
      cc.ok = false;
      eqv.failures.push_back(cc.descriptor + ": " + msg);
    };
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (auto chk = is_tj_algebra(left[i], m); !chk) fail("search produced a non-algebra: " + chk.reason);
      auto it = index.find(to_theory_algebra(left[i], m, sig).tables());
      if (it == index.end()) {
        fail("Tj-algebra " + std::to_string(i) + " is not a model of the theory");
        continue;
      }
      if (hit[it->second]++) fail("two Tj-algebras share a theory algebra");
      cc.bijection.push_back({i, it->second});
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
      if (!hit[i]) fail("theory algebra " + std::to_string(i) + " is not a Tj-algebra");
      if (!is_tj_algebra(from_theory_algebra(right[i], m), m)) fail("theory algebra " + std::to_string(i) + " fails the Tj laws");
    }
    if (cc.left != cc.right) fail("counts differ");
    if (cc.ok)
      for (auto [i, r] : cc.bijection) {
        tjs.push_back({f, left[i]});
        ths.push_back(right[r]);
      }
    if (!cc.ok) eqv.pass = false;
    eqv.carriers.push_back(std::move(cc));
  }
  if (opts.compare_hom_objects) {
    std::map<std::pair<std::size_t, std::size_t>, algebra::HomFamily> cache;
    for (std::size_t i = 0; i < tjs.size(); ++i)
      for (std::size_t j = 0; j < tjs.size(); ++j) {
        auto key = std::make_pair(tjs[i].first, tjs[j].first);
        auto it = cache.find(key);
        if (it == cache.end())
          it = cache.emplace(key, algebra::hom_family(families[key.first], families[key.second], m.base)).first;
        auto th = algebra::hom_object(ths[i], ths[j], it->second);
        std::vector<std::vector<Map>> direct;
        for (const auto& fam : it->second.families)
          if (is_tj_homomorphism(fam, tjs[i].second, tjs[j].second, m)) direct.push_back(fam);
        ++eqv.hom_pairs;
        if (direct != th.homs) {
          ++eqv.hom_mismatches;
          eqv.pass = false;
          if (eqv.hom_mismatches <= 5) eqv.failures.push_back("hom-objects differ for a pair of corresponding algebras");
        }
      }
  }
  if (!eqv.pass) rep.pass = false;
  return rep;
}

RelMonadData identity_monad(const relcore::HornTheory& base, const syntax::SortSet& sorts, std::vector<Arity> arities) {
  return exception_monad(base, sorts, std::move(arities), std::vector<std::vector<std::string>>(sorts.size()));
}

RelMonadData exception_monad(const relcore::HornTheory& base, const syntax::SortSet& sorts, std::vector<Arity> arities,
                             const std::vector<std::vector<std::string>>& exceptions) {
  if (exceptions.size() != sorts.size()) throw InvalidTheory("one exception list per sort is required");
  bool none = true;
  for (const auto& e : exceptions) none = none && e.empty();
  RelMonadData m;
  m.base = base;
  m.sorts = sorts;
  m.arities = std::move(arities);
  m.name = none ? "identity" : "exception";
  const std::size_t nj = m.arities.size(), ns = sorts.size();
  for (const auto& j : m.arities) {
    VarLayout lay(j);
    std::vector<FinStructure> tj;
    for (std::size_t s = 0; s < ns; ++s) {
      std::vector<std::string> ids;
      for (std::size_t l = 0; l < j.count(s); ++l) ids.push_back("v" + std::to_string(lay.global(s, l) + 1));
      for (const auto& e : exceptions[s]) ids.push_back(e);
      tj.push_back(discrete_model(base, std::move(ids)));
    }
    m.T.push_back(std::move(tj));
    std::vector<int> unit;
    for (auto l : lay.local) unit.push_back(static_cast<int>(l));
    m.unit.push_back(std::move(unit));
  }
  m.ext.assign(nj, std::vector<std::vector<std::vector<Map>>>(nj));
  for (std::size_t j = 0; j < nj; ++j) {
    VarLayout lay(m.arities[j]);
    for (std::size_t k = 0; k < nj; ++k)
      for (std::size_t ki = 0; ki < m.hom_count(j, k); ++ki) {
        auto kt = m.decode(j, k, ki);
        std::vector<Map> maps;
        for (std::size_t s = 0; s < ns; ++s) {
          Map f;
          const std::size_t n = m.arities[j].count(s), nk = m.arities[k].count(s);
          for (std::size_t l = 0; l < n; ++l) f.push_back(kt[lay.global(s, l)]);
          for (std::size_t e = 0; e < exceptions[s].size(); ++e) f.push_back(static_cast<int>(nk + e));
          maps.push_back(std::move(f));
        }
        m.ext[j][k].push_back(std::move(maps));
      }
  }
  return m;
}

std::vector<Arity> arities_up_to(std::size_t sorts, std::size_t n) {
  std::vector<Arity> out;
  for (std::size_t total = 0; total <= n; ++total) {
    std::vector<std::size_t> c(sorts, 0);
    // Compositions of `total` into `sorts` parts, first sort largest first.
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
      if (sorts == 0) {
        if (left == 0) out.push_back(Arity());
        return;
      }
      if (i + 1 == sorts) {
        c[i] = left;
        std::map<std::size_t, std::size_t> m;
        for (std::size_t s = 0; s < sorts; ++s) m[s] = c[s];
        out.push_back(Arity(m));
        return;
      }
      for (std::size_t v = left + 1; v-- > 0;) {
        c[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, total);
  }
  return out;
}

}  // namespace enrvar::monad
