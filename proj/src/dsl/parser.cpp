#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "enrvar/dsl/dsl.hpp"
#include "enrvar/errors.hpp"
#include "enrvar/relcore/builtin.hpp"
#include "lexer.hpp"

namespace enrvar::dsl {

using relcore::FinStructure;
using relcore::HornTheory;
using syntax::Term;

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k{
      "theory", "classical", "base", "sort", "param", "op", "eq", "rel", "chain", "iterate", "model", "algebra", "of",
      "carrier", "table", "monad", "arity", "object", "unit", "ext", "at", "present", "cover", "elements", "relation",
      "axiom"};
  return k;
}

namespace {

const std::set<std::string, std::less<>> kBlockItems{"base", "sort", "param", "op", "eq", "rel", "chain", "carrier",
                                                        "table", "arity", "ext", "cover", "elements", "relation",
                                                        "axiom", "object", "unit"};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(lex(text)), opts_(opts) {}

  TheoryFile file() {
    TheoryFile f;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (keyword("theory")) f.blocks.push_back(theory());
      else if (keyword("model")) f.blocks.push_back(model());
      else if (keyword("algebra")) f.blocks.push_back(algebra_block());
      else if (keyword("monad")) f.blocks.push_back(monad_block());
      else if (keyword("present")) f.blocks.push_back(present());
      else fail(t, "expected theory, model, algebra, monad or present, found '" + t.text + "'");
    }
    return f;
  }

 private:
  // ---- token plumbing

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

  bool is_keyword(const Token& t, std::string_view kw) const { return t.kind == Tok::Name && t.text == kw; }
  bool keyword(std::string_view kw) {
    if (!is_keyword(peek(), kw)) return false;
    next();
    return true;
  }
  bool at_item() const { return peek().kind == Tok::Name && kBlockItems.count(peek().text); }
  bool punct(char c) {
    if (!peek().is(Tok::Punct, std::string(1, c))) return false;
    next();
    return true;
  }
  const Token& expect_punct(char c) {
    if (!peek().is(Tok::Punct, std::string(1, c))) fail(peek(), std::string("expected '") + c + "', found '" + shown(peek()) + "'");
    return next();
  }
  const Token& expect_symbol(std::string_view s) {
    if (!peek().is(Tok::Symbol, s)) fail(peek(), "expected '" + std::string(s) + "', found '" + shown(peek()) + "'");
    return next();
  }
  static std::string shown(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }

  // A name, number or quoted string that is not a reserved word.
  const Token& expect_id(const char* what) {
    const Token& t = peek();
    bool ok = t.kind == Tok::String || t.kind == Tok::Number || (t.kind == Tok::Name && !keywords().count(t.text));
    if (!ok) fail(t, std::string("expected ") + what + ", found '" + shown(t) + "'");
    return next();
  }
  bool at_id() const {
    const Token& t = peek();
    return t.kind == Tok::String || t.kind == Tok::Number || (t.kind == Tok::Name && !keywords().count(t.text));
  }
  bool at_relname() const { return peek().kind == Tok::Symbol || at_id(); }
  const Token& expect_relname() {
    if (!at_relname()) fail(peek(), "expected a relation name, found '" + shown(peek()) + "'");
    return next();
  }

  // ---- shared pieces

  HornTheory base() {
    if (peek().is(Tok::Punct, "{")) return custom_base();
    const Token& first = expect_id("a base theory");
    std::string spec = first.text;
    std::size_t end = first.end;
    while (peek().kind != Tok::End && peek().begin == end &&
           (peek().kind == Tok::Name || peek().kind == Tok::Number || peek().is(Tok::Punct, ":"))) {
      spec += peek().text;
      end = next().end;
    }
    try {
      return relcore::builtin_theory(spec);
    } catch (const Error& e) {
      fail(first, e.what());
    }
  }

  HornTheory custom_base() {
    const Token& open = expect_punct('{');
    std::vector<relcore::RelSymbol> rels;
    std::vector<relcore::HornFormula> axioms;
    auto rel_index = [&](const Token& t) {
      for (std::size_t r = 0; r < rels.size(); ++r)
        if (rels[r].name == t.text) return r;
      fail(t, "unknown relation '" + t.text + "'");
    };
    while (!punct('}')) {
      if (keyword("relation")) {
        const Token& n = expect_relname();
        const Token& a = next();
        if (a.kind != Tok::Number) fail(a, "expected the arity of relation '" + n.text + "'");
        rels.push_back({n.text, static_cast<std::size_t>(std::stoul(a.text))});
      } else if (keyword("axiom")) {
        relcore::HornFormula f;
        std::map<std::string, std::size_t> vars;
        expect_punct('[');
        while (!punct(']')) {
          const Token& v = expect_id("a variable");
          vars.emplace(v.text, f.var_names.size());
          f.var_names.push_back(v.text);
          punct(',');
        }
        auto var = [&]() {
          const Token& v = expect_id("a variable");
          auto it = vars.find(v.text);
          if (it == vars.end()) fail(v, "undeclared variable '" + v.text + "'");
          return it->second;
        };
        auto atom = [&]() {
          relcore::HornAtom a;
          if (at_relname() && peek(1).is(Tok::Punct, "(")) {
            const Token& r = next();
            a.rel = rel_index(r);
            expect_punct('(');
            while (!punct(')')) {
              a.vars.push_back(var());
              punct(',');
            }
            if (a.vars.size() != rels[a.rel].arity)
              fail(r, "relation '" + r.text + "' has arity " + std::to_string(rels[a.rel].arity) + " but is applied to " +
                          std::to_string(a.vars.size()) + " variables");
            return a;
          }
          auto x = var();
          const Token& r = expect_relname();
          a.rel = r.text == "==" ? relcore::kEquality : rel_index(r);
          if (a.rel != relcore::kEquality && rels[a.rel].arity != 2)
            fail(r, "relation '" + r.text + "' is not binary and cannot be written infix");
          a.vars = {x, var()};
          return a;
        };
        while (!peek().is(Tok::Symbol, "=>")) {
          f.premises.push_back(atom());
          if (!punct(',')) break;
        }
        expect_symbol("=>");
        f.conclusion = atom();
        axioms.push_back(std::move(f));
      } else {
        fail(peek(), "expected relation or axiom, found '" + shown(peek()) + "'");
      }
    }
    try {
      return HornTheory(relcore::make_signature(std::move(rels)), std::move(axioms));
    } catch (const Error& e) {
      fail(open, e.what());
    }
  }

  FinStructure structure(const relcore::SignaturePtr& sig) {
    const Token& open = expect_punct('{');
    return structure_body(sig, open);
  }

  // elements ...; then edges, up to the closing brace. `extra` may consume
  // block-specific lines and returns whether it did.
  FinStructure structure_body(const relcore::SignaturePtr& sig, const Token& open,
                              const std::function<bool()>& extra = {}) {
    std::vector<std::string> ids;
    std::map<std::string, int> index;
    struct Pending {
      Token rel;
      std::vector<Token> args;
    };
    std::vector<Pending> pending;
    while (!punct('}')) {
      if (keyword("elements")) {
        while (!punct(';')) {
          const Token& e = expect_id("an element");
          if (!index.emplace(e.text, static_cast<int>(ids.size())).second) fail(e, "duplicate element '" + e.text + "'");
          ids.push_back(e.text);
        }
        continue;
      }
      if (extra && extra()) continue;
      Pending p;
      if (at_relname() && peek(1).is(Tok::Punct, "(")) {
        p.rel = next();
        expect_punct('(');
        while (!punct(')')) {
          p.args.push_back(expect_id("an element"));
          punct(',');
        }
      } else {
        p.args.push_back(expect_id("an element"));
        p.rel = expect_relname();
        p.args.push_back(expect_id("an element"));
      }
      punct(';');
      pending.push_back(std::move(p));
    }
    std::vector<relcore::Edge> edges;
    for (const auto& p : pending) {
      auto r = sig->find(p.rel.text);
      if (!r) fail(p.rel, "unknown relation '" + p.rel.text + "'");
      if ((*sig)[*r].arity != p.args.size())
        fail(p.rel, "relation '" + p.rel.text + "' has arity " + std::to_string((*sig)[*r].arity) + " but is given " +
                        std::to_string(p.args.size()) + " elements");
      relcore::Tuple tup;
      for (const auto& a : p.args) {
        auto it = index.find(a.text);
        if (it == index.end()) fail(a, "unknown element '" + a.text + "'");
        tup.push_back(it->second);
      }
      edges.push_back({*r, std::move(tup)});
    }
    try {
      return FinStructure(sig, std::move(ids), std::move(edges));
    } catch (const Error& e) {
      fail(open, e.what());
    }
  }

  int element(const FinStructure& x, const Token& t) {
    auto i = x.find(t.text);
    if (!i) fail(t, "unknown element '" + t.text + "'");
    return *i;
  }

  std::vector<Token> id_list(const char* what) {
    std::vector<Token> out;
    expect_punct('[');
    while (!punct(']')) {
      out.push_back(expect_id(what));
      punct(',');
    }
    return out;
  }

  std::size_t sort_index(const syntax::SortSet& sorts, const Token& t) {
    auto s = sorts.find(t.text);
    if (!s) fail(t, "unknown sort '" + t.text + "'");
    return *s;
  }

  // ---- theories

  struct TermScope {
    const algebra::EnrichedSignature* sig;
    const relcore::RelSignature* rels;
    syntax::Context ctx;
  };

  syntax::Context context(const syntax::SortSet& sorts) {
    std::vector<syntax::ContextEntry> entries;
    if (!punct('[')) return {};
    std::set<std::string> seen;
    while (!punct(']')) {
      const Token& v = expect_id("a variable");
      if (!seen.insert(v.text).second) fail(v, "duplicate variable '" + v.text + "'");
      expect_punct(':');
      entries.push_back({v.text, sort_index(sorts, expect_id("a sort"))});
      punct(',');
    }
    return syntax::Context(std::move(entries));
  }

  Term term(const TermScope& sc) {
    const Token& t = peek();
    if (t.kind != Tok::Name && t.kind != Tok::String) fail(t, "expected a term, found '" + shown(t) + "'");
    if (t.kind == Tok::Name && keywords().count(t.text)) fail(t, "expected a term, found keyword '" + t.text + "'");
    next();
    if (peek().is(Tok::Punct, "(")) {
      next();
      std::vector<Term> args;
      while (!punct(')')) {
        args.push_back(term(sc));
        if (!peek().is(Tok::Punct, ")")) expect_punct(',');
      }
      if (!sc.sig->find_symbol(t.text)) fail(t, "unknown operation '" + t.text + "'");
      return Term::app(t.text, std::move(args));
    }
    if (auto v = sc.ctx.find(t.text)) return Term::var(*v);
    if (sc.sig->find_symbol(t.text)) return Term::app(t.text);
    fail(t, "unknown variable or constant '" + t.text + "'");
  }

  std::size_t checked_sort(const TermScope& sc, const Token& at, const Term& t) {
    try {
      return syntax::check_term(sc.sig->classical_signature(), sc.ctx, t);
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  // Skips one item body: everything up to the next item keyword or the
  // closing brace of the block, respecting nesting.
  void skip_item() {
    int depth = 0;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::End) fail(t, "unexpected end of input");
      if (depth == 0 && (t.is(Tok::Punct, "}") || at_item())) return;
      if (t.is(Tok::Punct, "(") || t.is(Tok::Punct, "[") || t.is(Tok::Punct, "{")) ++depth;
      if (t.is(Tok::Punct, ")") || t.is(Tok::Punct, "]") || t.is(Tok::Punct, "}")) --depth;
      next();
    }
  }

  const HornTheory& need_base(std::optional<HornTheory>& b, const Token& at) {
    if (!b) {
      if (!opts_.default_base) fail(at, "a base theory must be declared first");
      b = *opts_.default_base;
    }
    return *b;
  }

  TheoryBlock theory() {
    const Token& name = expect_id("a theory name");
    bool classical = keyword("classical");
    expect_punct('{');
    std::optional<HornTheory> b;
    std::vector<std::string> sorts;
    std::map<std::string, FinStructure> params;
    struct OpDecl {
      Token name;
      std::vector<Token> inputs;
      Token output;
      std::optional<Token> param;
    };
    std::vector<OpDecl> ops;
    std::vector<std::pair<std::string, std::size_t>> items;  // (kind, token position)
    while (!punct('}')) {
      const Token& kw = peek();
      if (keyword("base")) {
        if (b) fail(kw, "base declared twice");
        b = base();
      } else if (keyword("sort")) {
        while (at_id()) {
          const Token& s = next();
          if (std::find(sorts.begin(), sorts.end(), s.text) != sorts.end()) fail(s, "duplicate sort '" + s.text + "'");
          sorts.push_back(s.text);
        }
      } else if (keyword("param")) {
        const Token& n = expect_id("a parameter name");
        const auto& bt = need_base(b, n);
        if (!params.emplace(n.text, structure(bt.signature_ptr())).second) fail(n, "duplicate parameter '" + n.text + "'");
      } else if (keyword("op")) {
        OpDecl d;
        d.name = expect_id("an operation name");
        expect_punct(':');
        while (!peek().is(Tok::Symbol, "->")) d.inputs.push_back(expect_id("a sort"));
        next();
        d.output = expect_id("a sort");
        if (keyword("param")) d.param = expect_id("a parameter name");
        ops.push_back(std::move(d));
      } else if (kw.kind == Tok::Name && (kw.text == "eq" || kw.text == "rel" || kw.text == "chain")) {
        next();
        items.push_back({kw.text, pos_});
        skip_item();
      } else {
        fail(kw, "expected a theory item, found '" + shown(kw) + "'");
      }
    }
    const std::size_t resume = pos_;
    const auto& bt = need_base(b, name);
    if (sorts.empty()) fail(name, "theory '" + name.text + "' declares no sort");
    syntax::SortSet ss(sorts);
    std::vector<algebra::EnrichedOp> eops;
    std::vector<std::string> pnames;
    for (const auto& d : ops) {
      algebra::EnrichedOp op;
      op.name = d.name.text;
      std::vector<std::size_t> in;
      for (const auto& s : d.inputs) in.push_back(sort_index(ss, s));
      op.input = syntax::Arity::from_sorts(in);
      if (!std::is_sorted(in.begin(), in.end()))
        fail(d.name, "inputs of '" + d.name.text + "' must be listed in sort order");
      op.output = sort_index(ss, d.output);
      if (d.param) {
        auto it = params.find(d.param->text);
        if (it == params.end()) fail(*d.param, "unknown parameter '" + d.param->text + "'");
        op.param = it->second;
        pnames.push_back(d.param->text);
      } else {
        op.param = relcore::terminal(bt.signature_ptr());
        pnames.push_back("");
      }
      eops.push_back(std::move(op));
    }
    algebra::SignaturePtr sig;
    try {
      sig = std::make_shared<const algebra::EnrichedSignature>(ss, bt, eops);
    } catch (const Error& e) {
      fail(name, e.what());
    }
    std::vector<syntax::Equation> eqs;
    std::vector<syntax::RelationAtom> rels;
    std::vector<syntax::ChainRelation> chains;
    for (const auto& [kind, at] : items) {
      pos_ = at;
      const Token& start = toks_[at - 1];
      TermScope sc{sig.get(), &bt.signature(), context(ss)};
      if (kind == "eq") {
        syntax::Equation e;
        e.context = sc.ctx;
        e.lhs = term(sc);
        expect_symbol("==");
        e.rhs = term(sc);
        e.sort = checked_sort(sc, start, e.lhs);
        try {
          syntax::check_equation(sig->classical_signature(), e);
        } catch (const Error& err) {
          fail(start, err.what());
        }
        eqs.push_back(std::move(e));
      } else if (kind == "rel") {
        rels.push_back(relation(sc, start));
      } else {
        chains.push_back(chain(sc, start));
      }
      if (!(peek().is(Tok::Punct, "}") || at_item())) fail(peek(), "unexpected '" + shown(peek()) + "' after " + kind);
    }
    pos_ = resume;
    classical = classical || !rels.empty() || !chains.empty();
    TheoryBlock tb;
    tb.param_names = std::move(pnames);
    try {
      if (classical) {
        algebra::ClassicalTheoryWithRelations t{sig, std::move(rels), std::move(eqs), std::move(chains), name.text};
        t.check();
        tb.theory = std::move(t);
      } else {
        algebra::EnrichedTheory t{sig, std::move(eqs), name.text};
        t.check();
        tb.theory = std::move(t);
      }
    } catch (const Error& e) {
      fail(name, e.what());
    }
    known_.push_back(tb);
    return tb;
  }

  syntax::RelationAtom relation(const TermScope& sc, const Token& start) {
    syntax::RelationAtom r;
    r.context = sc.ctx;
    Token rel;
    bool prefix = peek(1).is(Tok::Punct, "(") &&
                  (peek().kind == Tok::Symbol ||
                   (sc.rels->find(peek().text) && !sc.sig->find_symbol(peek().text)));
    if (prefix) {
      rel = next();
      expect_punct('(');
      while (!punct(')')) {
        r.args.push_back(term(sc));
        if (!peek().is(Tok::Punct, ")")) expect_punct(',');
      }
    } else {
      r.args.push_back(term(sc));
      rel = expect_relname();
      r.args.push_back(term(sc));
    }
    auto idx = sc.rels->find(rel.text);
    if (!idx) fail(rel, "unknown relation '" + rel.text + "'");
    if ((*sc.rels)[*idx].arity != r.args.size())
      fail(rel, "relation '" + rel.text + "' has arity " + std::to_string((*sc.rels)[*idx].arity) + " but is applied to " +
                    std::to_string(r.args.size()) + " terms");
    r.relation = rel.text;
    for (std::size_t i = 0; i < r.args.size(); ++i) {
      auto s = checked_sort(sc, start, r.args[i]);
      if (i == 0) r.sort = s;
      else if (s != r.sort) fail(rel, "arguments of relation '" + rel.text + "' have different sorts");
    }
    return r;
  }

  syntax::ChainRelation chain(const TermScope& sc, const Token& start) {
    syntax::ChainRelation c;
    c.context = sc.ctx;
    if (keyword("iterate")) {
      syntax::IteratedChain it;
      it.seed = term(sc);
      c.sort = checked_sort(sc, start, it.seed);
      auto entries = sc.ctx.entries();
      entries.push_back({"_", c.sort});
      TermScope step{sc.sig, sc.rels, syntax::Context(entries)};
      it.step = term(step);
      c.chain = std::move(it);
    } else {
      syntax::ExplicitChain ex;
      expect_punct('(');
      while (!punct(')')) {
        ex.terms.push_back(term(sc));
        if (!peek().is(Tok::Punct, ")")) expect_punct(',');
      }
      if (ex.terms.empty()) fail(start, "a chain needs at least one term");
      c.sort = checked_sort(sc, start, ex.terms.front());
      c.chain = std::move(ex);
    }
    expect_symbol("->");
    c.limit = term(sc);
    try {
      syntax::check_chain(sc.sig->classical_signature(), c);
    } catch (const Error& e) {
      fail(start, e.what());
    }
    return c;
  }

  // ---- other blocks

  ModelBlock model() {
    ModelBlock m;
    const Token& name = expect_id("a model name");
    m.name = name.text;
    std::optional<HornTheory> b;
    const Token& open = expect_punct('{');
    if (keyword("base")) b = base();
    m.base = need_base(b, name);
    m.structure = structure_body(m.base.signature_ptr(), open);
    return m;
  }

  const TheoryBlock* find_theory(const std::string& name) const {
    for (const auto& t : known_)
      if (algebra::name_of(t.theory) == name) return &t;
    for (const auto& t : opts_.theories)
      if (algebra::name_of(t.theory) == name) return &t;
    return nullptr;
  }

  AlgebraBlock algebra_block() {
    AlgebraBlock a;
    const Token& name = expect_id("an algebra name");
    a.name = name.text;
    if (!keyword("of")) fail(peek(), "expected 'of' and a theory name");
    const Token& tn = expect_id("a theory name");
    a.theory = tn.text;
    const TheoryBlock* tb = find_theory(tn.text);
    if (!tb) fail(tn, "unknown theory '" + tn.text + "'");
    auto sig = algebra::signature_ptr_of(tb->theory);
    const auto& ss = sig->sorts();
    expect_punct('{');
    std::vector<std::optional<FinStructure>> carriers(ss.size());
    std::map<std::string, std::vector<Token>> tables;
    std::map<std::string, Token> table_at;
    while (!punct('}')) {
      if (keyword("carrier")) {
        const Token& s = expect_id("a sort");
        auto si = sort_index(ss, s);
        if (carriers[si]) fail(s, "carrier of sort '" + s.text + "' given twice");
        carriers[si] = structure(sig->rel_signature());
      } else if (keyword("table")) {
        const Token& sym = expect_id("an operation symbol");
        if (!sig->find_symbol(sym.text)) fail(sym, "unknown operation '" + sym.text + "'");
        if (tables.count(sym.text)) fail(sym, "table for '" + sym.text + "' given twice");
        table_at.emplace(sym.text, sym);
        tables[sym.text] = id_list("an element");
      } else {
        fail(peek(), "expected carrier or table, found '" + shown(peek()) + "'");
      }
    }
    std::vector<FinStructure> cs;
    for (std::size_t s = 0; s < ss.size(); ++s) {
      if (!carriers[s]) fail(name, "missing carrier for sort '" + ss.name(s) + "'");
      cs.push_back(*carriers[s]);
    }
    std::vector<std::vector<algebra::Table>> out(sig->ops().size());
    for (std::size_t op = 0; op < sig->ops().size(); ++op) {
      const auto& o = sig->op(op);
      std::size_t dom = 1;
      for (auto s : o.input.flattened()) dom *= cs[s].size();
      for (std::size_t p = 0; p < o.param.size(); ++p) {
        const auto& sym = sig->symbol_name(op, p);
        auto it = tables.find(sym);
        if (it == tables.end()) fail(name, "missing table for '" + sym + "'");
        if (it->second.size() != dom)
          fail(table_at.at(sym), "table for '" + sym + "' needs " + std::to_string(dom) + " entries, got " +
                                     std::to_string(it->second.size()));
        algebra::Table t;
        for (const auto& v : it->second) t.push_back(element(cs[o.output], v));
        out[op].push_back(std::move(t));
      }
    }
    try {
      a.algebra = algebra::Algebra(sig, std::move(cs), std::move(out));
    } catch (const Error& e) {
      fail(name, e.what());
    }
    return a;
  }

  syntax::Arity arity_literal(const syntax::SortSet& ss) {
    std::vector<std::size_t> sorts;
    expect_punct('[');
    while (!punct(']')) {
      sorts.push_back(sort_index(ss, expect_id("a sort")));
      punct(',');
    }
    return syntax::Arity::from_sorts(sorts);
  }

  MonadBlock monad_block() {
    MonadBlock mb;
    auto& m = mb.monad;
    const Token& name = expect_id("a monad name");
    m.name = name.text;
    expect_punct('{');
    std::optional<HornTheory> b;
    std::vector<std::string> sorts;
    bool sorts_done = false;
    std::vector<std::vector<std::vector<std::optional<std::vector<relcore::Map>>>>> ext;
    auto freeze = [&](const Token& at) {
      if (sorts_done) return;
      if (sorts.empty()) fail(at, "monad '" + m.name + "' declares no sort");
      m.base = need_base(b, at);
      m.sorts = syntax::SortSet(sorts);
      sorts_done = true;
    };
    while (!punct('}')) {
      const Token& kw = peek();
      if (keyword("base")) {
        if (sorts_done || b) fail(kw, "base must come first and only once");
        b = base();
      } else if (keyword("sort")) {
        if (sorts_done) fail(kw, "sorts must precede arities");
        while (at_id()) sorts.push_back(next().text);
      } else if (keyword("arity")) {
        freeze(kw);
        if (!ext.empty()) fail(kw, "arities must precede ext tables");
        auto j = arity_literal(m.sorts);
        for (const auto& a : m.arities)
          if (a == j) fail(kw, "arity " + j.to_string(m.sorts) + " declared twice");
        std::vector<std::optional<FinStructure>> objs(m.sorts.size());
        std::vector<Token> unit;
        bool have_unit = false;
        expect_punct('{');
        while (!punct('}')) {
          if (keyword("object")) {
            const Token& s = expect_id("a sort");
            auto si = sort_index(m.sorts, s);
            if (objs[si]) fail(s, "object for sort '" + s.text + "' given twice");
            objs[si] = structure(m.base.signature_ptr());
          } else if (keyword("unit")) {
            unit = id_list("an element");
            have_unit = true;
          } else {
            fail(peek(), "expected object or unit, found '" + shown(peek()) + "'");
          }
        }
        std::vector<FinStructure> tj;
        for (std::size_t s = 0; s < m.sorts.size(); ++s) {
          if (!objs[s]) fail(kw, "arity " + j.to_string(m.sorts) + " lacks an object for sort '" + m.sorts.name(s) + "'");
          tj.push_back(*objs[s]);
        }
        auto flat = j.flattened();
        if (!have_unit || unit.size() != flat.size())
          fail(kw, "unit of arity " + j.to_string(m.sorts) + " needs " + std::to_string(flat.size()) + " entries");
        std::vector<int> u;
        for (std::size_t t = 0; t < flat.size(); ++t) u.push_back(element(tj[flat[t]], unit[t]));
        m.arities.push_back(j);
        m.T.push_back(std::move(tj));
        m.unit.push_back(std::move(u));
      } else if (keyword("ext")) {
        freeze(kw);
        if (ext.empty()) {
          const std::size_t nj = m.arities.size();
          ext.assign(nj, std::vector<std::vector<std::optional<std::vector<relcore::Map>>>>(nj));
          for (std::size_t j = 0; j < nj; ++j)
            for (std::size_t k = 0; k < nj; ++k) ext[j][k].resize(m.hom_count(j, k));
        }
        auto find = [&](const syntax::Arity& a) -> std::optional<std::size_t> {
          for (std::size_t i = 0; i < m.arities.size(); ++i)
            if (m.arities[i] == a) return i;
          return std::nullopt;
        };
        auto j = find(arity_literal(m.sorts));
        expect_symbol("->");
        auto k = find(arity_literal(m.sorts));
        if (!j || !k) fail(kw, "ext refers to an undeclared arity");
        if (!keyword("at")) fail(peek(), "expected 'at' and the morphism k");
        auto kt = id_list("an element");
        auto flat = m.arities[*j].flattened();
        if (kt.size() != flat.size()) fail(kw, "k needs " + std::to_string(flat.size()) + " entries");
        std::vector<int> ki;
        for (std::size_t t = 0; t < flat.size(); ++t) ki.push_back(element(m.T[*k][flat[t]], kt[t]));
        auto idx = m.encode(*j, *k, ki);
        if (ext[*j][*k][idx]) fail(kw, "ext given twice for the same k");
        std::vector<std::optional<relcore::Map>> maps(m.sorts.size());
        expect_punct('{');
        while (!punct('}')) {
          const Token& s = expect_id("a sort");
          auto si = sort_index(m.sorts, s);
          auto img = id_list("an element");
          if (img.size() != m.T[*j][si].size())
            fail(s, "k* at sort '" + s.text + "' needs " + std::to_string(m.T[*j][si].size()) + " entries");
          relcore::Map f;
          for (const auto& v : img) f.push_back(element(m.T[*k][si], v));
          maps[si] = std::move(f);
        }
        std::vector<relcore::Map> out;
        for (std::size_t s = 0; s < m.sorts.size(); ++s) {
          if (!maps[s]) fail(kw, "k* lacks sort '" + m.sorts.name(s) + "'");
          out.push_back(*maps[s]);
        }
        ext[*j][*k][idx] = std::move(out);
      } else {
        fail(kw, "expected base, sort, arity or ext, found '" + shown(kw) + "'");
      }
    }
    freeze(name);
    const std::size_t nj = m.arities.size();
    if (ext.empty() && nj) fail(name, "monad '" + m.name + "' has no ext tables");
    m.ext.assign(nj, std::vector<std::vector<std::vector<relcore::Map>>>(nj));
    for (std::size_t j = 0; j < nj; ++j)
      for (std::size_t k = 0; k < nj; ++k)
        for (std::size_t i = 0; i < ext[j][k].size(); ++i) {
          if (!ext[j][k][i])
            fail(name, "missing ext " + m.arities[j].to_string(m.sorts) + " -> " + m.arities[k].to_string(m.sorts) +
                           " at k #" + std::to_string(i));
          m.ext[j][k].push_back(*ext[j][k][i]);
        }
    return mb;
  }

  PresentBlock present() {
    PresentBlock p;
    const Token& name = expect_id("a presentation name");
    p.name = name.text;
    auto pre = relcore::theory_preord();
    std::vector<std::pair<Token, std::vector<Token>>> covers;
    const Token& open = expect_punct('{');
    p.presentation.preorder = structure_body(pre.signature_ptr(), open, [&] {
      if (!keyword("cover")) return false;
      Token e = expect_id("an element");
      expect_symbol("<|");
      std::vector<Token> chain;
      expect_punct('(');
      while (!punct(')')) {
        chain.push_back(expect_id("an element"));
        punct(',');
      }
      covers.push_back({e, chain});
      return true;
    });
    for (const auto& [e, chain] : covers) {
      cpo::Cover c;
      c.element = element(p.presentation.preorder, e);
      for (const auto& t : chain) c.chain.push_back(element(p.presentation.preorder, t));
      p.presentation.covers.push_back(std::move(c));
    }
    try {
      p.presentation.check();
    } catch (const Error& e) {
      fail(name, e.what());
    }
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<TheoryBlock> known_;
};

}  // namespace

TheoryFile parse_theory(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).file(); }

template <class B>
static const B* find_block(const TheoryFile& f, std::string_view name, auto&& name_of) {
  for (const auto& b : f.blocks)
    if (const auto* p = std::get_if<B>(&b))
      if (name.empty() || name_of(*p) == name) return p;
  return nullptr;
}

const TheoryBlock* TheoryFile::theory(std::string_view name) const {
  return find_block<TheoryBlock>(*this, name, [](const TheoryBlock& t) { return algebra::name_of(t.theory); });
}
const ModelBlock* TheoryFile::model(std::string_view name) const {
  return find_block<ModelBlock>(*this, name, [](const ModelBlock& m) { return m.name; });
}
const AlgebraBlock* TheoryFile::algebra(std::string_view name) const {
  return find_block<AlgebraBlock>(*this, name, [](const AlgebraBlock& a) { return a.name; });
}
const MonadBlock* TheoryFile::monad(std::string_view name) const {
  return find_block<MonadBlock>(*this, name, [](const MonadBlock& m) { return m.monad.name; });
}
const PresentBlock* TheoryFile::presentation(std::string_view name) const {
  return find_block<PresentBlock>(*this, name, [](const PresentBlock& p) { return p.name; });
}

}  // namespace enrvar::dsl
