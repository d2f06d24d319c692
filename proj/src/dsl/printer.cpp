#include <map>
#include <set>
#include <sstream>

#include "enrvar/dsl/dsl.hpp"
#include "enrvar/errors.hpp"
#include "enrvar/relcore/builtin.hpp"
#include "lexer.hpp"

namespace enrvar::dsl {

const std::set<std::string, std::less<>>& keywords();

namespace {

using relcore::FinStructure;
using relcore::HornTheory;

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Element ids, sort and block names.
std::string id(std::string_view s) {
  if ((is_identifier(s) && !keywords().count(s)) || all_digits(s)) return std::string(s);
  return quoted(s);
}

std::string relname(std::string_view s) {
  if (is_symbol_run(s) && s != "->" && s != "=>" && s != "==" && s != "<|") return std::string(s);
  return id(s);
}

// Operation symbols: op@elem keeps the '@' outside the quotes.
std::string symbol(std::string_view s) {
  auto at = s.find('@');
  if (at != std::string_view::npos) {
    auto op = s.substr(0, at), el = s.substr(at + 1);
    if (is_identifier(op) && !keywords().count(op))
      // The lexer reads the element as a run of identifier characters.
      return std::string(op) + "@" + (is_identifier("x" + std::string(el)) ? std::string(el) : quoted(el));
    return quoted(s);
  }
  return id(s);
}

std::string var_name(std::string_view s) { return id(s); }

std::string term(const syntax::Term& t, const syntax::Context& ctx) {
  if (t.is_var()) return var_name(ctx[t.var_index()].name);
  std::string out = symbol(t.op());
  if (t.args().empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) out += (i ? ", " : "") + term(t.args()[i], ctx);
  return out + ")";
}

std::string context(const syntax::Context& ctx, const syntax::SortSet& sorts) {
  std::string out = "[";
  for (std::size_t i = 0; i < ctx.size(); ++i)
    out += (i ? ", " : "") + var_name(ctx[i].name) + ":" + id(sorts.name(ctx[i].sort));
  return out + "]";
}

void structure_body(std::ostream& out, const FinStructure& x, const std::string& indent) {
  out << indent << "elements";
  for (const auto& e : x.carrier()) out << " " << id(e);
  out << ";\n";
  const auto& sig = x.signature();
  for (const auto& e : x.all_edges()) {
    out << indent;
    if (e.args.size() == 2) {
      out << id(x.id(e.args[0])) << " " << relname(sig[e.rel].name) << " " << id(x.id(e.args[1]));
    } else {
      out << relname(sig[e.rel].name) << "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out << (i ? ", " : "") << id(x.id(e.args[i]));
      out << ")";
    }
    out << "\n";
  }
}

void structure(std::ostream& out, const FinStructure& x, const std::string& indent) {
  out << "{\n";
  structure_body(out, x, indent + "  ");
  out << indent << "}\n";
}

bool is_builtin(const HornTheory& b) {
  if (b.name().empty()) return false;
  try {
    auto t = relcore::builtin_theory(b.name());
    return t.signature() == b.signature() && t.axioms() == b.axioms();
  } catch (const Error&) {
    return false;
  }
}

void base(std::ostream& out, const HornTheory& b, const std::string& indent) {
  out << indent << "base ";
  if (is_builtin(b)) {
    out << b.name() << "\n";
    return;
  }
  const auto& sig = b.signature();
  out << "{\n";
  for (const auto& r : sig.symbols()) out << indent << "  relation " << relname(r.name) << " " << r.arity << "\n";
  auto atom = [&](const relcore::HornAtom& a, const std::vector<std::string>& names) {
    std::string s;
    if (a.rel == relcore::kEquality) return var_name(names[a.vars[0]]) + " == " + var_name(names[a.vars[1]]);
    if (a.vars.size() == 2)
      return var_name(names[a.vars[0]]) + " " + relname(sig[a.rel].name) + " " + var_name(names[a.vars[1]]);
    s = relname(sig[a.rel].name) + "(";
    for (std::size_t i = 0; i < a.vars.size(); ++i) s += (i ? ", " : "") + var_name(names[a.vars[i]]);
    return s + ")";
  };
  for (const auto& f : b.axioms()) {
    out << indent << "  axiom [";
    for (std::size_t i = 0; i < f.var_names.size(); ++i) out << (i ? ", " : "") << var_name(f.var_names[i]);
    out << "]";
    for (std::size_t i = 0; i < f.premises.size(); ++i) out << (i ? ", " : " ") << atom(f.premises[i], f.var_names);
    out << " => " << atom(f.conclusion, f.var_names) << "\n";
  }
  out << indent << "}\n";
}

void sorts_line(std::ostream& out, const syntax::SortSet& s) {
  out << "  sort";
  for (const auto& n : s.names()) out << " " << id(n);
  out << "\n";
}

std::string arity(const syntax::Arity& j, const syntax::SortSet& sorts) {
  std::string out = "[";
  auto flat = j.flattened();
  for (std::size_t i = 0; i < flat.size(); ++i) out += (i ? ", " : "") + id(sorts.name(flat[i]));
  return out + "]";
}

std::string id_list(const std::vector<int>& xs, const FinStructure& in) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + id(in.id(xs[i]));
  return out + "]";
}

void theory(std::ostream& out, const TheoryBlock& tb) {
  const auto& sig = algebra::signature_of(tb.theory);
  const bool classical = std::holds_alternative<algebra::ClassicalTheoryWithRelations>(tb.theory);
  out << "theory " << id(algebra::name_of(tb.theory)) << (classical ? " classical" : "") << " {\n";
  base(out, sig.base(), "  ");
  sorts_line(out, sig.sorts());
  // Parameter names: stored ones, else generated; terminal params need none.
  auto term1 = relcore::terminal(sig.rel_signature());
  std::vector<std::string> pname(sig.ops().size());
  std::map<std::string, const FinStructure*> declared;
  std::set<std::string> used;
  for (std::size_t i = 0; i < sig.ops().size(); ++i)
    if (i < tb.param_names.size() && !tb.param_names[i].empty()) used.insert(tb.param_names[i]);
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& p = sig.op(i).param;
    std::string n = i < tb.param_names.size() ? tb.param_names[i] : "";
    if (n.empty() && p == term1) continue;
    if (n.empty() || (declared.count(n) && !(*declared[n] == p))) {
      // Reuse an equal declared parameter, else invent a fresh name.
      for (const auto& [dn, dp] : declared)
        if (*dp == p) n = dn;
      if (n.empty() || !(*declared[n] == p)) {
        std::size_t k = 1;
        do n = "P" + std::to_string(k++);
        while (used.count(n));
      }
    }
    used.insert(n);
    pname[i] = n;
    if (!declared.count(n)) {
      declared[n] = &p;
      out << "  param " << id(n) << " ";
      structure(out, p, "  ");
    }
  }
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    const auto& o = sig.op(i);
    out << "  op " << symbol(o.name) << " :";
    for (auto s : o.input.flattened()) out << " " << id(sig.sorts().name(s));
    out << " -> " << id(sig.sorts().name(o.output));
    if (!pname[i].empty()) out << " param " << id(pname[i]);
    out << "\n";
  }
  for (const auto& e : algebra::equations_of(tb.theory))
    out << "  eq " << context(e.context, sig.sorts()) << " " << term(e.lhs, e.context) << " == " << term(e.rhs, e.context)
        << "\n";
  if (const auto* c = std::get_if<algebra::ClassicalTheoryWithRelations>(&tb.theory)) {
    for (const auto& r : c->relations) {
      out << "  rel " << context(r.context, sig.sorts()) << " ";
      bool sym = is_symbol_run(r.relation) && r.relation != "->" && r.relation != "=>" && r.relation != "==";
      if (r.args.size() == 2 && (sym || !sig.find_symbol(r.relation))) {
        out << term(r.args[0], r.context) << " " << relname(r.relation) << " " << term(r.args[1], r.context) << "\n";
      } else {
        out << relname(r.relation) << "(";
        for (std::size_t i = 0; i < r.args.size(); ++i) out << (i ? ", " : "") << term(r.args[i], r.context);
        out << ")\n";
      }
    }
    for (const auto& ch : c->chains) {
      out << "  chain " << context(ch.context, sig.sorts()) << " ";
      if (const auto* ex = std::get_if<syntax::ExplicitChain>(&ch.chain)) {
        out << "(";
        for (std::size_t i = 0; i < ex->terms.size(); ++i) out << (i ? ", " : "") << term(ex->terms[i], ch.context);
        out << ")";
      } else {
        const auto& it = std::get<syntax::IteratedChain>(ch.chain);
        out << "iterate " << term(it.seed, ch.context) << " " << term(it.step, syntax::step_context(ch));
      }
      out << " -> " << term(ch.limit, ch.context) << "\n";
    }
  }
  out << "}\n";
}

void model(std::ostream& out, const ModelBlock& m) {
  out << "model " << id(m.name) << " {\n";
  base(out, m.base, "  ");
  structure_body(out, m.structure, "  ");
  out << "}\n";
}

void algebra_block(std::ostream& out, const AlgebraBlock& a) {
  const auto& alg = a.algebra;
  const auto& sig = alg.signature();
  out << "algebra " << id(a.name) << " of " << id(a.theory) << " {\n";
  for (std::size_t s = 0; s < sig.sorts().size(); ++s) {
    out << "  carrier " << id(sig.sorts().name(s)) << " ";
    structure(out, alg.carrier(s), "  ");
  }
  for (std::size_t op = 0; op < sig.ops().size(); ++op)
    for (std::size_t p = 0; p < sig.op(op).param.size(); ++p)
      out << "  table " << symbol(sig.symbol_name(op, p)) << " " << id_list(alg.table(op, p), alg.carrier(sig.op(op).output))
          << "\n";
  out << "}\n";
}

void monad_block(std::ostream& out, const MonadBlock& mb) {
  const auto& m = mb.monad;
  out << "monad " << id(m.name) << " {\n";
  base(out, m.base, "  ");
  sorts_line(out, m.sorts);
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    out << "  arity " << arity(m.arities[j], m.sorts) << " {\n";
    for (std::size_t s = 0; s < m.sorts.size(); ++s) {
      out << "    object " << id(m.sorts.name(s)) << " ";
      structure(out, m.T[j][s], "    ");
    }
    auto flat = m.arities[j].flattened();
    out << "    unit [";
    for (std::size_t t = 0; t < flat.size(); ++t) out << (t ? ", " : "") << id(m.T[j][flat[t]].id(m.unit[j][t]));
    out << "]\n  }\n";
  }
  for (std::size_t j = 0; j < m.arities.size(); ++j) {
    auto flat = m.arities[j].flattened();
    for (std::size_t k = 0; k < m.arities.size(); ++k)
      for (std::size_t ki = 0; ki < m.ext[j][k].size(); ++ki) {
        auto kt = m.decode(j, k, ki);
        out << "  ext " << arity(m.arities[j], m.sorts) << " -> " << arity(m.arities[k], m.sorts) << " at [";
        for (std::size_t t = 0; t < flat.size(); ++t) out << (t ? ", " : "") << id(m.T[k][flat[t]].id(kt[t]));
        out << "] {";
        for (std::size_t s = 0; s < m.sorts.size(); ++s)
          out << " " << id(m.sorts.name(s)) << " " << id_list(m.ext[j][k][ki][s], m.T[k][s]);
        out << " }\n";
      }
  }
  out << "}\n";
}

void present(std::ostream& out, const PresentBlock& p) {
  const auto& x = p.presentation.preorder;
  out << "present " << id(p.name) << " {\n";
  structure_body(out, x, "  ");
  for (const auto& c : p.presentation.covers) {
    out << "  cover " << id(x.id(c.element)) << " <| (";
    for (std::size_t i = 0; i < c.chain.size(); ++i) out << (i ? ", " : "") << id(x.id(c.chain[i]));
    out << ")\n";
  }
  out << "}\n";
}

bool same_base(const HornTheory& a, const HornTheory& b) {
  return a.signature() == b.signature() && a.axioms() == b.axioms();
}

bool same_signature(const algebra::EnrichedSignature& a, const algebra::EnrichedSignature& b) {
  if (!(a.sorts() == b.sorts()) || !same_base(a.base(), b.base()) || a.ops().size() != b.ops().size()) return false;
  for (std::size_t i = 0; i < a.ops().size(); ++i) {
    const auto &x = a.op(i), &y = b.op(i);
    if (x.name != y.name || !(x.input == y.input) || x.output != y.output || !(x.param == y.param)) return false;
  }
  return true;
}

bool same_monad(const monad::RelMonadData& a, const monad::RelMonadData& b) {
  return a.name == b.name && same_base(a.base, b.base) && a.sorts == b.sorts && a.arities == b.arities && a.T == b.T &&
         a.unit == b.unit && a.ext == b.ext;
}

}  // namespace

bool same_theory(const algebra::AnyTheory& a, const algebra::AnyTheory& b) {
  if (a.index() != b.index()) return false;
  if (algebra::name_of(a) != algebra::name_of(b)) return false;
  if (!same_signature(algebra::signature_of(a), algebra::signature_of(b))) return false;
  if (algebra::equations_of(a) != algebra::equations_of(b)) return false;
  if (const auto* x = std::get_if<algebra::ClassicalTheoryWithRelations>(&a)) {
    const auto& y = std::get<algebra::ClassicalTheoryWithRelations>(b);
    return x->relations == y.relations && x->chains == y.chains;
  }
  return true;
}

bool same_syntax(const TheoryFile& a, const TheoryFile& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto &x = a.blocks[i], &y = b.blocks[i];
    if (x.index() != y.index()) return false;
    bool same = std::visit(
        [&](const auto& l) -> bool {
          using B = std::decay_t<decltype(l)>;
          const auto& r = std::get<B>(y);
          if constexpr (std::is_same_v<B, TheoryBlock>) return same_theory(l.theory, r.theory) && l.param_names == r.param_names;
          else if constexpr (std::is_same_v<B, ModelBlock>)
            return l.name == r.name && same_base(l.base, r.base) && l.structure == r.structure;
          else if constexpr (std::is_same_v<B, AlgebraBlock>)
            return l.name == r.name && l.theory == r.theory && same_signature(l.algebra.signature(), r.algebra.signature()) &&
                   l.algebra == r.algebra;
          else if constexpr (std::is_same_v<B, MonadBlock>) return same_monad(l.monad, r.monad);
          else return l.name == r.name && l.presentation.preorder == r.presentation.preorder &&
                      l.presentation.covers == r.presentation.covers;
        },
        x);
    if (!same) return false;
  }
  return true;
}

std::string print_block(const Block& b) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using B = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<B, TheoryBlock>) theory(out, x);
        else if constexpr (std::is_same_v<B, ModelBlock>) model(out, x);
        else if constexpr (std::is_same_v<B, AlgebraBlock>) algebra_block(out, x);
        else if constexpr (std::is_same_v<B, MonadBlock>) monad_block(out, x);
        else present(out, x);
      },
      b);
  return out.str();
}

std::string print_theory(const TheoryFile& f) {
  std::string out;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) out += (i ? "\n" : "") + print_block(f.blocks[i]);
  return out;
}

TheoryBlock theory_block(const algebra::AnyTheory& t) {
  TheoryBlock b{t, std::vector<std::string>(algebra::signature_of(t).ops().size())};
  return b;
}

}  // namespace enrvar::dsl
