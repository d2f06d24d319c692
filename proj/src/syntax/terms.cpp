#include "enrvar/syntax/terms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace enrvar::syntax {

SortSet::SortSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InvalidSignature("empty sort name");
    if (!seen.insert(n).second) throw InvalidSignature("duplicate sort '" + n + "'");
  }
}

std::optional<std::size_t> SortSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t SortSet::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw InvalidSignature("unknown sort '" + std::string(name) + "'");
  return *i;
}

Arity::Arity(const std::map<std::size_t, std::size_t>& counts) {
  for (auto [s, c] : counts)
    if (c) counts_[s] = c;
}

Arity Arity::from_sorts(const std::vector<std::size_t>& sorts) {
  std::map<std::size_t, std::size_t> c;
  for (auto s : sorts) ++c[s];
  return Arity(c);
}

std::size_t Arity::count(std::size_t sort) const {
  auto it = counts_.find(sort);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t Arity::total() const {
  std::size_t t = 0;
  for (auto [s, c] : counts_) t += c;
  return t;
}

std::vector<std::size_t> Arity::flattened() const {
  std::vector<std::size_t> out;
  for (auto [s, c] : counts_) out.insert(out.end(), c, s);
  return out;
}

std::string Arity::to_string(const SortSet& sorts) const {
  std::string out;
  for (auto [s, c] : counts_) {
    if (!out.empty()) out += "x";
    out += std::to_string(c) + sorts.name(s);
  }
  return out.empty() ? "0" : out;
}

Context::Context(std::vector<ContextEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& e : entries_)
    if (!seen.insert(e.name).second) throw InvalidSignature("duplicate variable '" + e.name + "' in context");
}

std::optional<std::size_t> Context::find(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  return std::nullopt;
}

Arity Context::arity() const {
  std::vector<std::size_t> sorts;
  for (const auto& e : entries_) sorts.push_back(e.sort);
  return Arity::from_sorts(sorts);
}

Context canonical_context(const Arity& j) {
  std::vector<ContextEntry> entries;
  std::size_t i = 0;
  for (auto s : j.flattened()) entries.push_back({"v" + std::to_string(++i), s});
  return Context(std::move(entries));
}

Term Term::var(std::size_t index) {
  Term t;
  t.var_ = index;
  return t;
}

Term Term::app(std::string op, std::vector<Term> args) {
  if (op.empty()) throw InvalidSignature("empty operation name");
  Term t;
  t.op_ = std::move(op);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return is_var() ? 0 : d + 1;
}

std::size_t Term::size() const {
  std::size_t s = 1;
  for (const auto& a : args_) s += a.size();
  return s;
}

bool operator==(const Term& a, const Term& b) {
  return a.op_ == b.op_ && (a.is_var() ? a.var_ == b.var_ : a.args_ == b.args_);
}

bool operator<(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var();
  if (a.is_var()) return a.var_ < b.var_;
  if (a.op_ != b.op_) return a.op_ < b.op_;
  return std::lexicographical_compare(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

ClassicalSignature::ClassicalSignature(SortSet sorts, std::vector<OpDecl> ops) : sorts_(std::move(sorts)), ops_(std::move(ops)) {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& op = ops_[i];
    if (op.output >= sorts_.size()) throw InvalidSignature("operation '" + op.name + "' has an unknown output sort");
    for (auto [s, c] : op.input.counts())
      if (s >= sorts_.size()) throw InvalidSignature("operation '" + op.name + "' has an unknown input sort");
    if (!index_.emplace(op.name, i).second) throw InvalidSignature("duplicate operation '" + op.name + "'");
  }
}

const OpDecl* ClassicalSignature::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &ops_[it->second];
}

std::optional<std::size_t> ClassicalSignature::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t check_term(const ClassicalSignature& sig, const Context& ctx, const Term& t) {
  using K = SortError::Kind;
  if (t.is_var()) {
    if (t.var_index() >= ctx.size())
      throw SortError(K::VariableOutOfRange, "variable index " + std::to_string(t.var_index()) + " outside context");
    return ctx[t.var_index()].sort;
  }
  const OpDecl* op = sig.find(t.op());
  if (!op) throw SortError(K::UnknownOperation, "unknown operation '" + t.op() + "'");
  auto expected = op->input.flattened();
  if (expected.size() != t.args().size())
    throw SortError(K::ArityMismatch, "operation '" + t.op() + "' expects " + std::to_string(expected.size()) +
                                          " arguments, got " + std::to_string(t.args().size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    auto s = check_term(sig, ctx, t.args()[i]);
    if (s != expected[i])
      throw SortError(K::SortMismatch, "argument " + std::to_string(i + 1) + " of '" + t.op() + "' should have sort '" +
                                           sig.sorts().name(expected[i]) + "', not '" + sig.sorts().name(s) + "'");
  }
  return op->output;
}

Term substitute(const Term& t, const std::vector<Term>& assignment) {
  if (t.is_var()) {
    if (t.var_index() >= assignment.size())
      throw SortError(SortError::Kind::VariableOutOfRange, "substitution misses a variable");
    return assignment[t.var_index()];
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, assignment));
  return Term::app(t.op(), std::move(args));
}

Term substitute(const ClassicalSignature& sig, const Term& t, const Context& ctx, const std::vector<Term>& assignment,
                const Context& ctx2) {
  if (assignment.size() != ctx.size())
    throw SortError(SortError::Kind::ArityMismatch, "substitution length differs from context length");
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (check_term(sig, ctx2, assignment[i]) != ctx[i].sort)
      throw SortError(SortError::Kind::SortMismatch, "substitution for '" + ctx[i].name + "' has the wrong sort");
  return substitute(t, assignment);
}

void check_equation(const ClassicalSignature& sig, const Equation& e) {
  for (const Term* t : {&e.lhs, &e.rhs})
    if (check_term(sig, e.context, *t) != e.sort)
      throw SortError(SortError::Kind::SortMismatch, "equation side has the wrong sort");
}

Context step_context(const ChainRelation& c, std::string_view hole_name) {
  auto entries = c.context.entries();
  std::string name(hole_name);
  while (c.context.find(name)) name += "_";
  entries.push_back({name, c.sort});
  return Context(std::move(entries));
}

void check_chain(const ClassicalSignature& sig, const ChainRelation& c) {
  auto expect = [&](const Context& ctx, const Term& t) {
    if (check_term(sig, ctx, t) != c.sort)
      throw SortError(SortError::Kind::SortMismatch, "chain term has the wrong sort");
  };
  expect(c.context, c.limit);
  if (const auto* ex = std::get_if<ExplicitChain>(&c.chain)) {
    if (ex->terms.empty()) throw InvalidSignature("explicit chain needs at least one term");
    for (const auto& t : ex->terms) expect(c.context, t);
  } else {
    const auto& it = std::get<IteratedChain>(c.chain);
    expect(c.context, it.seed);
    expect(step_context(c), it.step);
  }
}

std::vector<Term> unfold_chain(const ChainRelation& c, std::size_t bound) {
  if (const auto* ex = std::get_if<ExplicitChain>(&c.chain)) return ex->terms;
  const auto& it = std::get<IteratedChain>(c.chain);
  std::vector<Term> assign;
  for (std::size_t i = 0; i < c.context.size(); ++i) assign.push_back(Term::var(i));
  std::vector<Term> out{it.seed};
  while (out.size() <= bound) {
    assign.resize(c.context.size());
    assign.push_back(out.back());
    Term next = substitute(it.step, assign);
    if (std::find(out.begin(), out.end(), next) != out.end()) {
      if (next != out.back()) throw IterationNotStabilized("iterated chain cycles without stabilising");
      return out;
    }
    out.push_back(std::move(next));
  }
  throw IterationNotStabilized("iterated chain did not stabilise within " + std::to_string(bound) + " steps");
}

namespace {
void print(std::ostringstream& out, const Term& t, const Context& ctx) {
  if (t.is_var()) {
    if (t.var_index() < ctx.size()) out << ctx[t.var_index()].name;
    else out << "#" << t.var_index();
    return;
  }
  out << t.op();
  if (t.args().empty()) return;
  out << "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out << ",";
    print(out, t.args()[i], ctx);
  }
  out << ")";
}
}  // namespace

std::string to_string(const Term& t, const Context& ctx) {
  std::ostringstream out;
  print(out, t, ctx);
  return out.str();
}

std::vector<std::size_t> canonical_order(const Context& ctx) {
  std::vector<std::size_t> idx(ctx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ctx[a].sort < ctx[b].sort; });
  std::vector<std::size_t> perm(ctx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) perm[idx[k]] = k;
  return perm;
}

Term rename(const Term& t, const std::vector<std::size_t>& perm) {
  if (t.is_var()) return Term::var(perm.at(t.var_index()));
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename(a, perm));
  return Term::app(t.op(), std::move(args));
}

}  // namespace enrvar::syntax
