#include "enrvar/algebra/signature.hpp"

#include "enrvar/errors.hpp"

namespace enrvar::algebra {

std::string classical_name(const EnrichedOp& op, std::size_t p) {
  if (relcore::is_terminal(op.param)) return op.name;
  return op.name + "@" + op.param.id(static_cast<int>(p));
}

EnrichedSignature::EnrichedSignature(syntax::SortSet sorts, relcore::HornTheory base, std::vector<EnrichedOp> ops)
    : sorts_(std::move(sorts)), base_(std::move(base)), ops_(std::move(ops)) {
  std::vector<syntax::OpDecl> decls;
  std::map<std::string, int, std::less<>> op_names;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& op = ops_[i];
    if (op.name.empty()) throw InvalidSignature("empty operation name");
    if (!op_names.emplace(op.name, 0).second) throw InvalidSignature("duplicate operation '" + op.name + "'");
    if (!relcore::same_signature(op.param.signature_ptr(), base_.signature_ptr()))
      throw InvalidSignature("parameter of '" + op.name + "' is not over the base signature");
    if (!relcore::is_model(op.param, base_))
      throw InvalidSignature("parameter of '" + op.name + "' is not a model of the base theory");
    if (op.output >= sorts_.size()) throw InvalidSignature("operation '" + op.name + "' has an unknown output sort");
    for (auto [s, c] : op.input.counts())
      if (s >= sorts_.size()) throw InvalidSignature("operation '" + op.name + "' has an unknown input sort");
    symbol_offset_.push_back(symbols_.size());
    for (std::size_t p = 0; p < op.param.size(); ++p) {
      ClassicalSymbol sym{classical_name(op, p), i, p};
      if (!symbol_index_.emplace(sym.name, symbols_.size()).second)
        throw InvalidSignature("derived symbol name '" + sym.name + "' clashes");
      decls.push_back({sym.name, op.input, op.output});
      symbols_.push_back(std::move(sym));
    }
  }
  classical_ = syntax::ClassicalSignature(sorts_, std::move(decls));
}

EnrichedSignature EnrichedSignature::classical(syntax::SortSet sorts, relcore::HornTheory base,
                                               const std::vector<syntax::OpDecl>& ops) {
  std::vector<EnrichedOp> enriched;
  for (const auto& d : ops) enriched.push_back({d.name, d.input, d.output, relcore::terminal(base.signature_ptr())});
  return EnrichedSignature(std::move(sorts), std::move(base), std::move(enriched));
}

std::optional<std::size_t> EnrichedSignature::find_op(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

const ClassicalSymbol* EnrichedSignature::find_symbol(std::string_view name) const {
  auto it = symbol_index_.find(name);
  return it == symbol_index_.end() ? nullptr : &symbols_[it->second];
}

bool EnrichedSignature::all_terminal() const {
  for (const auto& op : ops_)
    if (!relcore::is_terminal(op.param)) return false;
  return true;
}

syntax::ClassicalSignature underlying_classical(const EnrichedSignature& sig) { return sig.classical_signature(); }

void EnrichedTheory::check() const {
  if (!signature) throw InvalidTheory("theory without signature");
  for (const auto& e : equations) syntax::check_equation(signature->classical_signature(), e);
}

bool is_poset_base(const relcore::HornTheory& base) {
  static const relcore::HornTheory pos = relcore::theory_pos();
  return base.signature() == pos.signature() && base.axioms() == pos.axioms();
}

void ClassicalTheoryWithRelations::check() const {
  if (!signature) throw InvalidTheory("theory without signature");
  if (!signature->all_terminal()) throw InvalidTheory("classical theory with a non-terminal parameter");
  const auto& cs = signature->classical_signature();
  for (const auto& e : equations) syntax::check_equation(cs, e);
  const auto& rs = signature->base().signature();
  for (const auto& r : relations) {
    auto idx = rs.find(r.relation);
    if (!idx) throw InvalidTheory("relation '" + r.relation + "' is not in the base signature");
    if (rs[*idx].arity != r.args.size())
      throw InvalidTheory("relation '" + r.relation + "' expects " + std::to_string(rs[*idx].arity) + " arguments");
    for (const auto& t : r.args)
      if (syntax::check_term(cs, r.context, t) != r.sort)
        throw syntax::SortError(syntax::SortError::Kind::SortMismatch, "relation argument has the wrong sort");
  }
  if (!chains.empty() && !is_poset_base(signature->base()))
    throw InvalidTheory("chain relations require the poset base");
  for (const auto& c : chains) syntax::check_chain(cs, c);
}

const EnrichedSignature& signature_of(const AnyTheory& t) { return *signature_ptr_of(t); }

SignaturePtr signature_ptr_of(const AnyTheory& t) {
  return std::visit([](const auto& x) { return x.signature; }, t);
}

const std::vector<syntax::Equation>& equations_of(const AnyTheory& t) {
  return std::visit([](const auto& x) -> const std::vector<syntax::Equation>& { return x.equations; }, t);
}

const std::string& name_of(const AnyTheory& t) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, t);
}

}  // namespace enrvar::algebra
