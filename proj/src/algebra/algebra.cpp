#include "enrvar/algebra/algebra.hpp"

#include <sstream>

#include "enrvar/errors.hpp"

namespace enrvar::algebra {

using relcore::Edge;
using syntax::Term;

FinStructure power(const std::vector<FinStructure>& carriers, const std::vector<std::size_t>& sorts,
                   const relcore::SignaturePtr& rel_sig) {
  std::vector<FinStructure> family;
  for (auto s : sorts) {
    if (s >= carriers.size()) throw InvalidAlgebra("power: missing carrier for sort " + std::to_string(s));
    family.push_back(carriers[s]);
  }
  return relcore::product(rel_sig, family);
}

FinStructure power(const std::vector<FinStructure>& carriers, const Arity& j, const relcore::SignaturePtr& rel_sig) {
  return power(carriers, j.flattened(), rel_sig);
}

FinStructure context_power(const std::vector<FinStructure>& carriers, const syntax::Context& ctx,
                           const relcore::SignaturePtr& rel_sig) {
  std::vector<std::size_t> sorts;
  for (const auto& e : ctx.entries()) sorts.push_back(e.sort);
  return power(carriers, sorts, rel_sig);
}

Algebra::Algebra(SignaturePtr sig, std::vector<FinStructure> carriers, std::vector<std::vector<Table>> tables)
    : sig_(std::move(sig)), carriers_(std::move(carriers)), tables_(std::move(tables)) {
  if (carriers_.size() != sig_->sorts().size()) throw InvalidAlgebra("one carrier per sort is required");
  for (const auto& c : carriers_)
    if (!relcore::same_signature(c.signature_ptr(), sig_->rel_signature()))
      throw InvalidAlgebra("carrier is not over the base signature");
  if (tables_.size() != sig_->ops().size()) throw InvalidAlgebra("one table family per operation is required");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& op = sig_->op(i);
    if (tables_[i].size() != op.param.size())
      throw InvalidAlgebra("operation '" + op.name + "' needs one table per parameter element");
    std::size_t dom = 1;
    for (auto s : op.input.flattened()) dom *= carriers_[s].size();
    for (const auto& t : tables_[i]) {
      if (t.size() != dom) throw InvalidAlgebra("table of '" + op.name + "' has the wrong size");
      for (int v : t)
        if (v < 0 || v >= static_cast<int>(carriers_[op.output].size()))
          throw InvalidAlgebra("table of '" + op.name + "' leaves the output carrier");
    }
  }
}

const Table& Algebra::table(std::string_view symbol) const {
  const auto* s = sig_->find_symbol(symbol);
  if (!s) throw syntax::SortError(syntax::SortError::Kind::UnknownOperation, "unknown operation '" + std::string(symbol) + "'");
  return tables_[s->op][s->p];
}

std::vector<std::size_t> Algebra::domain_sizes(std::size_t op) const {
  std::vector<std::size_t> sizes;
  for (auto s : sig_->op(op).input.flattened()) sizes.push_back(carriers_[s].size());
  return sizes;
}

int Algebra::apply(std::size_t op, std::size_t p, const std::vector<int>& args) const {
  auto sizes = domain_sizes(op);
  return tables_[op][p][relcore::product_components_to_index(args, sizes)];
}

ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport rep;
  const auto& sig = a.signature();
  const auto& base = sig.base();
  for (std::size_t s = 0; s < a.carriers().size(); ++s)
    if (!relcore::is_model(a.carrier(s), base)) {
      rep.ok = false;
      rep.failures.push_back("carrier of sort '" + sig.sorts().name(s) + "' is not a model of the base");
    }
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& op = sig.op(i);
    FinStructure dom = power(a.carriers(), op.input, sig.rel_signature());
    const FinStructure& cod = a.carrier(op.output);
    for (std::size_t p = 0; p < op.param.size(); ++p)
      if (!relcore::is_pi_morphism(a.table(i, p), dom, cod)) {
        rep.ok = false;
        rep.failures.push_back("'" + sig.symbol_name(i, p) + "' does not preserve edges");
      }
    for (std::size_t r = 0; r < sig.rel_signature()->size(); ++r)
      for (const auto& e : op.param.edges(r)) {
        std::vector<const Map*> maps;
        for (int p : e) maps.push_back(&a.table(i, static_cast<std::size_t>(p)));
        if (!relcore::exp_edge_holds(dom, cod, r, maps)) {
          rep.ok = false;
          std::string edge;
          for (int p : e) edge += (edge.empty() ? "" : ",") + op.param.id(p);
          rep.failures.push_back("'" + op.name + "' is not admissible: parameter edge " +
                                 (*sig.rel_signature())[r].name + "(" + edge + ") is not sent to an edge");
        }
      }
  }
  return rep;
}

namespace {

struct Interpreter {
  const Algebra& a;
  std::vector<std::size_t> dims;  // context carrier sizes
  std::size_t n = 1;

  Table run(const Term& t) const {
    const auto& sig = a.signature();
    Table out(n);
    if (t.is_var()) {
      if (t.var_index() >= dims.size())
        throw syntax::SortError(syntax::SortError::Kind::VariableOutOfRange, "variable outside context");
      std::size_t stride = 1;
      for (std::size_t k = dims.size(); k-- > t.var_index() + 1;) stride *= dims[k];
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>((i / stride) % dims[t.var_index()]);
      return out;
    }
    const auto* sym = sig.find_symbol(t.op());
    if (!sym) throw syntax::SortError(syntax::SortError::Kind::UnknownOperation, "unknown operation '" + t.op() + "'");
    auto sizes = a.domain_sizes(sym->op);
    if (sizes.size() != t.args().size())
      throw syntax::SortError(syntax::SortError::Kind::ArityMismatch, "wrong argument count for '" + t.op() + "'");
    std::vector<Table> args;
    for (const auto& arg : t.args()) args.push_back(run(arg));
    std::vector<std::size_t> strides(sizes.size(), 1);
    for (std::size_t k = sizes.size(); k-- > 1;) strides[k - 1] = strides[k] * sizes[k];
    const Table& tab = a.table(sym->op, sym->p);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t d = 0;
      for (std::size_t k = 0; k < args.size(); ++k) d += static_cast<std::size_t>(args[k][i]) * strides[k];
      out[i] = tab[d];
    }
    return out;
  }
};

int order_rel(const EnrichedSignature& sig) { return static_cast<int>(relcore::order_relation(sig.rel_signature().operator*())); }

}  // namespace

Table interpret_term(const Algebra& a, const syntax::Context& ctx, const Term& t) {
  syntax::check_term(a.signature().classical_signature(), ctx, t);
  Interpreter in{a, {}, 1};
  for (const auto& e : ctx.entries()) {
    in.dims.push_back(a.carrier(e.sort).size());
    in.n *= a.carrier(e.sort).size();
  }
  return in.run(t);
}

int evaluate_term(const Algebra& a, const Term& t, const std::vector<int>& point) {
  if (t.is_var()) return point.at(t.var_index());
  const auto* sym = a.signature().find_symbol(t.op());
  if (!sym) throw syntax::SortError(syntax::SortError::Kind::UnknownOperation, "unknown operation '" + t.op() + "'");
  std::vector<int> args;
  for (const auto& arg : t.args()) args.push_back(evaluate_term(a, arg, point));
  return a.apply(sym->op, sym->p, args);
}

bool satisfies_equation(const Algebra& a, const syntax::Equation& e) {
  return interpret_term(a, e.context, e.lhs) == interpret_term(a, e.context, e.rhs);
}

bool satisfies_relation(const Algebra& a, const syntax::RelationAtom& r) {
  const auto& sig = a.signature();
  auto rel = sig.rel_signature()->index_of(r.relation);
  FinStructure dom = context_power(a.carriers(), r.context, sig.rel_signature());
  std::vector<Table> tables;
  for (const auto& t : r.args) tables.push_back(interpret_term(a, r.context, t));
  std::vector<const Map*> maps;
  for (const auto& t : tables) maps.push_back(&t);
  return relcore::exp_edge_holds(dom, a.carrier(r.sort), rel, maps);
}

bool satisfies_chain_relation(const Algebra& a, const syntax::ChainRelation& c, std::size_t bound) {
  const auto& sig = a.signature();
  const std::size_t leq = static_cast<std::size_t>(order_rel(sig));
  FinStructure dom = context_power(a.carriers(), c.context, sig.rel_signature());
  const FinStructure& cod = a.carrier(c.sort);
  auto below = [&](const Table& x, const Table& y) {
    const Map* maps[2] = {&x, &y};
    return relcore::exp_edge_holds(dom, cod, leq, maps);
  };
  Table limit = interpret_term(a, c.context, c.limit);
  if (const auto* ex = std::get_if<syntax::ExplicitChain>(&c.chain)) {
    std::vector<Table> ts;
    for (const auto& t : ex->terms) ts.push_back(interpret_term(a, c.context, t));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (!below(ts[i], ts[i + 1])) return false;
    return ts.back() == limit;
  }
  const auto& it = std::get<syntax::IteratedChain>(c.chain);
  Table cur = interpret_term(a, c.context, it.seed);
  Table step = interpret_term(a, syntax::step_context(c), it.step);
  const std::size_t m = cod.size();
  for (std::size_t n = 0; n <= bound; ++n) {
    Table next(cur.size());
    for (std::size_t x = 0; x < cur.size(); ++x) next[x] = step[x * m + static_cast<std::size_t>(cur[x])];
    if (!below(cur, next)) return false;
    if (next == cur) return cur == limit;
    cur = std::move(next);
  }
  throw IterationNotStabilized("chain did not stabilise within " + std::to_string(bound) + " steps");
}

bool satisfies_theory(const Algebra& a, const AnyTheory& t) {
  for (const auto& e : equations_of(t))
    if (!satisfies_equation(a, e)) return false;
  if (const auto* c = std::get_if<ClassicalTheoryWithRelations>(&t)) {
    for (const auto& r : c->relations)
      if (!satisfies_relation(a, r)) return false;
    for (const auto& ch : c->chains)
      if (!satisfies_chain_relation(a, ch)) return false;
  }
  return true;
}

HomCheck is_homomorphism(const std::vector<Map>& f, const Algebra& a, const Algebra& b) {
  HomCheck res;
  const auto& sig = a.signature();
  if (f.size() != a.carriers().size()) {
    res.ok = false;
    res.reason = "one map per sort is required";
    return res;
  }
  for (std::size_t s = 0; s < f.size(); ++s)
    if (!relcore::is_pi_morphism(f[s], a.carrier(s), b.carrier(s))) {
      res.ok = false;
      res.reason = "map of sort '" + sig.sorts().name(s) + "' does not preserve edges";
      return res;
    }
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& op = sig.op(i);
    auto sorts = op.input.flattened();
    auto sa = a.domain_sizes(i), sb = b.domain_sizes(i);
    std::size_t dom = 1;
    for (auto s : sa) dom *= s;
    std::vector<int> img(sorts.size());
    for (std::size_t d = 0; d < dom; ++d) {
      auto args = relcore::product_index_to_components(d, sa);
      for (std::size_t k = 0; k < args.size(); ++k) img[k] = f[sorts[k]][static_cast<std::size_t>(args[k])];
      auto db = relcore::product_components_to_index(img, sb);
      for (std::size_t p = 0; p < op.param.size(); ++p)
        if (f[op.output][static_cast<std::size_t>(a.table(i, p)[d])] != b.table(i, p)[db]) {
          res.ok = false;
          res.reason = "'" + sig.symbol_name(i, p) + "' is not preserved";
          res.witness = HomWitness{i, p, args};
          return res;
        }
    }
  }
  return res;
}

HomFamily hom_family(const std::vector<FinStructure>& x, const std::vector<FinStructure>& y,
                     const relcore::HornTheory& base) {
  if (x.size() != y.size()) throw InvalidAlgebra("hom_family: sort counts differ");
  std::vector<relcore::InternalHom> homs;
  std::vector<FinStructure> objects;
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < x.size(); ++s) {
    homs.push_back(relcore::internal_hom(x[s], y[s], base));
    objects.push_back(homs.back().object);
    sizes.push_back(homs.back().maps.size());
  }
  HomFamily fam;
  fam.object = relcore::product(base.signature_ptr(), objects);
  for (std::size_t i = 0; i < fam.object.size(); ++i) {
    auto comps = relcore::product_index_to_components(i, sizes);
    std::vector<Map> maps;
    for (std::size_t s = 0; s < comps.size(); ++s) maps.push_back(homs[s].maps[static_cast<std::size_t>(comps[s])]);
    fam.families.push_back(std::move(maps));
  }
  return fam;
}

HomObject hom_object(const Algebra& a, const Algebra& b, const HomFamily& family) {
  HomObject out;
  std::vector<int> keep;
  for (std::size_t i = 0; i < family.families.size(); ++i)
    if (is_homomorphism(family.families[i], a, b)) {
      keep.push_back(static_cast<int>(i));
      out.homs.push_back(family.families[i]);
    }
  out.object = relcore::induced_substructure(family.object, keep);
  return out;
}

HomObject hom_object(const Algebra& a, const Algebra& b) {
  return hom_object(a, b, hom_family(a.carriers(), b.carriers(), a.signature().base()));
}

SignaturePtr underlying_signature(const EnrichedSignature& sig) {
  std::vector<syntax::OpDecl> decls;
  for (const auto& s : sig.symbols()) decls.push_back({s.name, sig.op(s.op).input, sig.op(s.op).output});
  return std::make_shared<const EnrichedSignature>(EnrichedSignature::classical(sig.sorts(), sig.base(), decls));
}

Algebra underlying_algebra(const Algebra& a) {
  auto sig = underlying_signature(a.signature());
  std::vector<std::vector<Table>> tables;
  for (const auto& s : a.signature().symbols()) tables.push_back({a.table(s.op, s.p)});
  return Algebra(sig, a.carriers(), std::move(tables));
}

std::string to_string(const Algebra& a) {
  std::ostringstream out;
  const auto& sig = a.signature();
  for (std::size_t s = 0; s < a.carriers().size(); ++s)
    out << "carrier " << sig.sorts().name(s) << " " << relcore::to_string(a.carrier(s)) << "\n";
  for (const auto& sym : sig.symbols()) {
    out << sym.name << ":";
    for (int v : a.table(sym.op, sym.p)) out << " " << a.carrier(sig.op(sym.op).output).id(v);
    out << "\n";
  }
  return out.str();
}

}  // namespace enrvar::algebra
