#include "enrvar/algebra/search.hpp"

#include <algorithm>

#include "enrvar/errors.hpp"

namespace enrvar::algebra {

Search::Search(SignaturePtr sig, std::vector<FinStructure> carriers)
    : sig_(std::move(sig)), carriers_(std::move(carriers)) {
  if (carriers_.size() != sig_->sorts().size()) throw InvalidAlgebra("search: one carrier per sort is required");
  for (std::size_t i = 0; i < sig_->ops().size(); ++i) {
    const auto& op = sig_->op(i);
    std::vector<std::size_t> sizes;
    for (auto s : op.input.flattened()) sizes.push_back(carriers_[s].size());
    std::vector<std::size_t> strides(sizes.size(), 1);
    for (std::size_t k = sizes.size(); k-- > 1;) strides[k - 1] = strides[k] * sizes[k];
    std::size_t dom = 1;
    for (auto s : sizes) dom *= s;
    strides_.push_back(strides);
    cell_dom_.push_back(dom);
    cell_offset_.emplace_back();
    for (std::size_t p = 0; p < op.param.size(); ++p) {
      cell_offset_.back().push_back(total_cells_);
      for (std::size_t d = 0; d < dom; ++d) {
        cell_op_.push_back(i);
        cell_sort_.push_back(op.output);
      }
      total_cells_ += dom;
    }
  }
  trigger_.assign(total_cells_, {});
}

Search::Expr Search::constant(int element) {
  std::vector<long> key{0, element};
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  Node n;
  n.value = element;
  nodes_store_.push_back(n);
  auto id = static_cast<Expr>(nodes_store_.size() - 1);
  intern_.emplace(std::move(key), id);
  return id;
}

Search::Expr Search::cell(std::size_t op, std::size_t p, const std::vector<Expr>& args) {
  const auto sorts = sig_->op(op).input.flattened();
  if (args.size() != sorts.size()) throw InvalidAlgebra("search: wrong argument count for a cell");
  std::vector<long> key{1, static_cast<long>(op), static_cast<long>(p)};
  for (auto a : args) key.push_back(a);
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  Node n;
  n.is_const = false;
  n.op = op;
  n.p = p;
  n.children = args;
  std::size_t d = 0;
  bool all_const = true;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const Node& c = nodes_store_[args[k]];
    if (!c.is_const) {
      all_const = false;
      continue;
    }
    if (c.value < 0 || c.value >= static_cast<int>(carriers_[sorts[k]].size()))
      throw InvalidAlgebra("search: constant outside its carrier");
    d += static_cast<std::size_t>(c.value) * strides_[op][k];
  }
  if (all_const) n.static_cell = static_cast<long>(cell_offset_[op][p] + d);
  nodes_store_.push_back(std::move(n));
  auto id = static_cast<Expr>(nodes_store_.size() - 1);
  intern_.emplace(std::move(key), id);
  return id;
}

Search::Expr Search::term(const syntax::Term& t, const std::vector<int>& point) {
  if (t.is_var()) return constant(point.at(t.var_index()));
  const auto* sym = sig_->find_symbol(t.op());
  if (!sym) throw syntax::SortError(syntax::SortError::Kind::UnknownOperation, "unknown operation '" + t.op() + "'");
  std::vector<Expr> args;
  for (const auto& a : t.args()) args.push_back(term(a, point));
  return cell(sym->op, sym->p, args);
}

long Search::max_static_cell(Expr e) const {
  const Node& n = nodes_store_[e];
  if (n.is_const) return -1;
  if (n.static_cell >= 0) return n.static_cell;
  long m = -1;
  for (auto c : n.children) m = std::max(m, max_static_cell(c));
  return m;
}

void Search::push_constraint(Constraint c) {
  long m = -1;
  for (auto a : c.args) m = std::max(m, max_static_cell(a));
  constraints_.push_back(std::move(c));
  auto idx = static_cast<std::uint32_t>(constraints_.size() - 1);
  if (m < 0) immediate_.push_back(idx);
  else trigger_[static_cast<std::size_t>(m)].push_back(idx);
}

void Search::require_equal(Expr a, Expr b) {
  if (a == b) return;
  push_constraint({false, 0, 0, {a, b}});
}

void Search::require_edge(std::size_t sort, std::size_t rel, const std::vector<Expr>& args) {
  push_constraint({true, sort, rel, args});
}

void Search::add_leaf_filter(std::function<bool(const Algebra&)> filter) { filters_.push_back(std::move(filter)); }

int Search::eval(Expr e) const {
  const Node& n = nodes_store_[e];
  if (n.is_const) return n.value;
  if (n.static_cell >= 0) return values_[static_cast<std::size_t>(n.static_cell)];
  std::size_t d = 0;
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    int v = eval(n.children[k]);
    if (v < 0) return -1;
    d += static_cast<std::size_t>(v) * strides_[n.op][k];
  }
  return values_[cell_offset_[n.op][n.p] + d];
}

int Search::status(const Constraint& c) const {
  if (!c.is_edge) {
    int a = eval(c.args[0]);
    if (a < 0) return -1;
    int b = eval(c.args[1]);
    if (b < 0) return -1;
    return a == b ? 1 : 0;
  }
  int buf[8];
  std::vector<int> big;
  int* vals = buf;
  if (c.args.size() > 8) {
    big.resize(c.args.size());
    vals = big.data();
  }
  for (std::size_t k = 0; k < c.args.size(); ++k) {
    vals[k] = eval(c.args[k]);
    if (vals[k] < 0) return -1;
  }
  return carriers_[c.sort].has_edge(c.rel, std::span<const int>(vals, c.args.size())) ? 1 : 0;
}

void Search::add_admissibility() {
  const auto& rs = *sig_->rel_signature();
  for (std::size_t i = 0; i < sig_->ops().size(); ++i) {
    const auto& op = sig_->op(i);
    FinStructure dom = power(carriers_, op.input, sig_->rel_signature());
    std::vector<std::size_t> sizes;
    for (auto s : op.input.flattened()) sizes.push_back(carriers_[s].size());
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (const auto& pe : op.param.edges(r))
        for (const auto& de : dom.edges(r)) {
          std::vector<Expr> args;
          for (std::size_t k = 0; k < pe.size(); ++k) {
            auto comps = relcore::product_index_to_components(static_cast<std::size_t>(de[k]), sizes);
            std::vector<Expr> cs;
            for (int v : comps) cs.push_back(constant(v));
            args.push_back(cell(i, static_cast<std::size_t>(pe[k]), cs));
          }
          require_edge(op.output, r, args);
        }
  }
}

namespace {
std::vector<std::size_t> context_sizes(const std::vector<FinStructure>& carriers, const syntax::Context& ctx) {
  std::vector<std::size_t> sizes;
  for (const auto& e : ctx.entries()) sizes.push_back(carriers[e.sort].size());
  return sizes;
}
std::size_t product_size(const std::vector<std::size_t>& sizes) {
  std::size_t n = 1;
  for (auto s : sizes) n *= s;
  return n;
}
}  // namespace

void Search::add_equation(const syntax::Equation& e) {
  auto sizes = context_sizes(carriers_, e.context);
  const std::size_t n = product_size(sizes);
  for (std::size_t i = 0; i < n; ++i) {
    auto pt = relcore::product_index_to_components(i, sizes);
    require_equal(term(e.lhs, pt), term(e.rhs, pt));
  }
}

void Search::add_relation(const syntax::RelationAtom& r) {
  auto rel = sig_->rel_signature()->index_of(r.relation);
  FinStructure dom = context_power(carriers_, r.context, sig_->rel_signature());
  auto sizes = context_sizes(carriers_, r.context);
  for (const auto& tup : dom.edges(rel)) {
    std::vector<Expr> args;
    for (std::size_t k = 0; k < tup.size(); ++k)
      args.push_back(term(r.args[k], relcore::product_index_to_components(static_cast<std::size_t>(tup[k]), sizes)));
    require_edge(r.sort, rel, args);
  }
}

void Search::add_chain(const syntax::ChainRelation& c) {
  const auto* ex = std::get_if<syntax::ExplicitChain>(&c.chain);
  if (!ex) {
    add_leaf_filter([c](const Algebra& a) { return satisfies_chain_relation(a, c); });
    return;
  }
  auto leq = relcore::order_relation(*sig_->rel_signature());
  FinStructure dom = context_power(carriers_, c.context, sig_->rel_signature());
  auto sizes = context_sizes(carriers_, c.context);
  for (std::size_t i = 0; i + 1 < ex->terms.size(); ++i)
    for (const auto& tup : dom.edges(leq)) {
      auto a = relcore::product_index_to_components(static_cast<std::size_t>(tup[0]), sizes);
      auto b = relcore::product_index_to_components(static_cast<std::size_t>(tup[1]), sizes);
      require_edge(c.sort, leq, {term(ex->terms[i], a), term(ex->terms[i + 1], b)});
    }
  const std::size_t n = product_size(sizes);
  for (std::size_t i = 0; i < n; ++i) {
    auto pt = relcore::product_index_to_components(i, sizes);
    require_equal(term(ex->terms.back(), pt), term(c.limit, pt));
  }
}

void Search::add_theory(const AnyTheory& t) {
  add_admissibility();
  for (const auto& e : equations_of(t)) add_equation(e);
  if (const auto* c = std::get_if<ClassicalTheoryWithRelations>(&t)) {
    for (const auto& r : c->relations) add_relation(r);
    for (const auto& ch : c->chains) add_chain(ch);
  }
}

void Search::recurse(std::size_t k) {
  if (k == total_cells_) {
    std::vector<std::vector<Table>> tables;
    for (std::size_t i = 0; i < sig_->ops().size(); ++i) {
      tables.emplace_back();
      const auto& offs = cell_offset_[i];
      for (std::size_t p = 0; p < offs.size(); ++p) {
        const std::size_t end = offs[p] + cell_dom_[i];
        tables.back().emplace_back(values_.begin() + static_cast<std::ptrdiff_t>(offs[p]),
                                   values_.begin() + static_cast<std::ptrdiff_t>(end));
      }
    }
    Algebra a(sig_, carriers_, std::move(tables));
    for (const auto& f : filters_)
      if (!f(a)) return;
    ++found_;
    if (!(*visit_)(a)) stop_ = true;
    return;
  }
  const int dom = static_cast<int>(carriers_[cell_sort_[k]].size());
  auto& next = pending_[k + 1];
  for (int v = 0; v < dom && !stop_; ++v) {
    values_[k] = v;
    if (++nodes_ > budget_) throw BudgetExceeded("algebra search exceeded its node budget of " + std::to_string(budget_));
    next.clear();
    bool ok = true;
    for (auto list : {&pending_[k], &trigger_[k]}) {
      for (auto c : *list) {
        int st = status(constraints_[c]);
        if (st == 0) {
          ok = false;
          break;
        }
        if (st < 0) next.push_back(c);
      }
      if (!ok) break;
    }
    if (ok) recurse(k + 1);
  }
  values_[k] = -1;
}

std::size_t Search::run(const std::function<bool(const Algebra&)>& visit, std::uint64_t node_budget) {
  values_.assign(total_cells_, -1);
  pending_.assign(total_cells_ + 1, {});
  nodes_ = 0;
  budget_ = node_budget;
  found_ = 0;
  stop_ = false;
  visit_ = &visit;
  for (auto c : immediate_)
    if (status(constraints_[c]) == 0) return 0;
  recurse(0);
  return found_;
}

std::vector<Algebra> enumerate_algebras(const AnyTheory& t, const std::vector<FinStructure>& carriers,
                                        const EnumerationOptions& opts) {
  Search s(signature_ptr_of(t), carriers);
  s.add_theory(t);
  std::vector<Algebra> out;
  s.run(
      [&](const Algebra& a) {
        out.push_back(a);
        return true;
      },
      opts.node_budget);
  return out;
}

std::size_t count_algebras(const AnyTheory& t, const std::vector<FinStructure>& carriers,
                           const EnumerationOptions& opts) {
  Search s(signature_ptr_of(t), carriers);
  s.add_theory(t);
  return s.run([](const Algebra&) { return true; }, opts.node_budget);
}

std::vector<std::vector<FinStructure>> carrier_families(const relcore::HornTheory& base, std::size_t sorts,
                                                        std::size_t max_size, std::size_t min_size) {
  std::vector<FinStructure> models;
  for (std::size_t n = min_size; n <= max_size; ++n) {
    auto part = relcore::models_up_to_iso(base, n);
    models.insert(models.end(), part.begin(), part.end());
  }
  std::vector<std::vector<FinStructure>> out;
  if (models.empty()) return out;
  std::vector<std::size_t> pick(sorts, 0);
  for (;;) {
    std::vector<FinStructure> fam;
    for (auto i : pick) fam.push_back(models[i]);
    out.push_back(std::move(fam));
    std::size_t k = sorts;
    while (k > 0) {
      if (++pick[k - 1] < models.size()) break;
      pick[--k] = 0;
    }
    if (k == 0) break;
  }
  return out;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ENRVAR_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return EnumerationOptions{}.node_budget;
}

}  // namespace enrvar::algebra
