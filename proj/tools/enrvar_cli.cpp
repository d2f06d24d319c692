// enrvar: command-line front door to the engine.
// Exit codes: 0 success, 1 semantic failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "enrvar/algebra/search.hpp"
#include "enrvar/cpo.hpp"
#include "enrvar/dsl.hpp"
#include "enrvar/errors.hpp"
#include "enrvar/monad.hpp"
#include "enrvar/relcore.hpp"
#include "enrvar/report/report.hpp"
#include "enrvar/translate.hpp"

namespace {

using namespace enrvar;
using report::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string theory;
  std::size_t max_carrier = 3;
  std::size_t depth = 6;
  std::uint64_t budget = 0;
  bool json = false;
  std::optional<std::uint64_t> seed;  // nothing is randomised; the value is only echoed
};

struct Output {
  const Common& c;
  json j;
  std::ostringstream text;
  int finish(bool pass) {
    if (c.json) {
      j["pass"] = pass;
      if (c.seed) j["seed"] = *c.seed;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text.str();
    }
    return pass ? 0 : 1;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string current_file;

dsl::TheoryFile load(const std::string& path, dsl::ParseOptions opts = {}) {
  current_file = path;
  return dsl::parse_theory(read_file(path), opts);
}

// --theory names a builtin base or a file whose theories become visible.
dsl::ParseOptions options_for(const Common& c) {
  dsl::ParseOptions o;
  if (c.theory.empty()) return o;
  if (std::filesystem::exists(c.theory)) {
    auto f = load(c.theory);
    for (const auto* t : f.all<dsl::TheoryBlock>()) o.theories.push_back(*t);
    if (!o.theories.empty()) o.default_base = algebra::signature_of(o.theories.front().theory).base();
    return o;
  }
  o.default_base = relcore::builtin_theory(c.theory);
  return o;
}

std::uint64_t budget_of(const Common& c) { return c.budget ? c.budget : algebra::default_budget(); }

translate::VerifyOptions verify_options(const Common& c) {
  translate::VerifyOptions v;
  v.max_carrier = c.max_carrier;
  v.node_budget = budget_of(c);
  return v;
}

template <class B>
const B& require_block(const dsl::TheoryFile& f, const std::string& name, const char* what) {
  const B* b = nullptr;
  if constexpr (std::is_same_v<B, dsl::TheoryBlock>) b = f.theory(name);
  else if constexpr (std::is_same_v<B, dsl::ModelBlock>) b = f.model(name);
  else if constexpr (std::is_same_v<B, dsl::MonadBlock>) b = f.monad(name);
  else if constexpr (std::is_same_v<B, dsl::PresentBlock>) b = f.presentation(name);
  if (!b) throw UsageError(std::string("no ") + what + (name.empty() ? "" : " named '" + name + "'") + " in the input");
  return *b;
}

// ---- commands

int check_model(const Common& c, const std::string& file) {
  auto opts = options_for(c);
  auto f = load(file, opts);
  Output out{c, report::envelope("check-model", true), {}};
  bool pass = true;
  json models = json::array();
  for (const auto* m : f.all<dsl::ModelBlock>()) {
    const auto& base = opts.default_base ? *opts.default_base : m->base;
    auto v = relcore::find_violation(m->structure, base);
    json entry{{"name", m->name}, {"theory", base.name()}, {"model", !v}};
    if (v) {
      pass = false;
      const auto& ax = base.axioms()[v->axiom];
      json val = json::object();
      std::string at;
      for (std::size_t i = 0; i < v->valuation.size(); ++i) {
        val[ax.var_names[i]] = m->structure.id(v->valuation[i]);
        at += (i ? ", " : "") + ax.var_names[i] + "=" + m->structure.id(v->valuation[i]);
      }
      entry["violation"] = {{"axiom", relcore::to_string(ax, base.signature())}, {"valuation", val}};
      out.text << m->name << ": not a " << base.name() << " model; " << relcore::to_string(ax, base.signature())
               << " fails at " << at << "\n";
    } else {
      out.text << m->name << ": " << base.name() << " model, " << m->structure.size() << " elements\n";
    }
    models.push_back(entry);
  }
  if (models.empty()) throw UsageError("no model blocks in " + file);
  out.j["models"] = models;
  return out.finish(pass);
}

int free_model(const Common& c, const std::string& file) {
  auto opts = options_for(c);
  auto f = load(file, opts);
  Output out{c, report::envelope("free-model", true), {}};
  json results = json::array();
  for (const auto* m : f.all<dsl::ModelBlock>()) {
    const auto& base = opts.default_base ? *opts.default_base : m->base;
    auto r = relcore::chase(m->structure, base);
    dsl::TheoryFile single;
    single.blocks.push_back(dsl::ModelBlock{m->name + "_free", base, r.model});
    out.text << dsl::print_theory(single) << "# unit:";
    json unit = json::object();
    for (std::size_t i = 0; i < r.unit.size(); ++i) {
      out.text << " " << m->structure.id(static_cast<int>(i)) << "->" << r.model.id(r.unit[i]);
      unit[m->structure.id(static_cast<int>(i))] = r.model.id(r.unit[i]);
    }
    out.text << "\n";
    results.push_back({{"name", m->name}, {"free", report::to_json(r.model)}, {"unit", unit}});
  }
  if (results.empty()) throw UsageError("no model blocks in " + file);
  out.j["results"] = results;
  return out.finish(true);
}

int exp_cmd(const Common& c, const std::string& file, const std::string& xname, const std::string& yname) {
  auto opts = options_for(c);
  auto f = load(file, opts);
  auto models = f.all<dsl::ModelBlock>();
  const dsl::ModelBlock* x = xname.empty() ? (models.size() > 0 ? models[0] : nullptr) : f.model(xname);
  const dsl::ModelBlock* y = yname.empty() ? (models.size() > 1 ? models[1] : x) : f.model(yname);
  if (!x || !y) throw UsageError("exp needs two models (or one, used twice)");
  const auto& base = opts.default_base ? *opts.default_base : x->base;
  Output out{c, report::envelope("exp", true), {}};
  try {
    auto h = relcore::internal_hom(x->structure, y->structure, base);
    dsl::TheoryFile single;
    single.blocks.push_back(dsl::ModelBlock{"exp_" + x->name + "_" + y->name, base, h.object});
    out.text << dsl::print_theory(single);
    out.j["exponential"] = report::to_json(h.object);
    return out.finish(true);
  } catch (const NotClosed& e) {
    out.text << "not closed: " << e.what() << "\n";
    out.j["error"] = e.what();
    return out.finish(false);
  }
}

int check_algebra(const Common& c, const std::string& file) {
  auto f = load(file, options_for(c));
  auto opts = options_for(c);
  Output out{c, report::envelope("check-algebra", true), {}};
  bool pass = true;
  json results = json::array();
  for (const auto* a : f.all<dsl::AlgebraBlock>()) {
    const dsl::TheoryBlock* t = f.theory(a->theory);
    for (const auto& o : opts.theories)
      if (!t && algebra::name_of(o.theory) == a->theory) t = &o;
    auto v = algebra::validate_algebra(a->algebra);
    bool sat = v.ok && algebra::satisfies_theory(a->algebra, t->theory);
    std::vector<std::string> failing;
    if (v.ok) {
      for (const auto& e : algebra::equations_of(t->theory))
        if (!algebra::satisfies_equation(a->algebra, e))
          failing.push_back(syntax::to_string(e.lhs, e.context) + " = " + syntax::to_string(e.rhs, e.context));
      if (const auto* ct = std::get_if<algebra::ClassicalTheoryWithRelations>(&t->theory)) {
        for (const auto& r : ct->relations)
          if (!algebra::satisfies_relation(a->algebra, r)) {
            std::string s = r.relation + "(";
            for (std::size_t i = 0; i < r.args.size(); ++i) s += (i ? ", " : "") + syntax::to_string(r.args[i], r.context);
            failing.push_back(s + ")");
          }
        for (std::size_t i = 0; i < ct->chains.size(); ++i)
          if (!algebra::satisfies_chain_relation(a->algebra, ct->chains[i])) failing.push_back("chain #" + std::to_string(i + 1));
      }
    }
    pass = pass && sat;
    out.text << a->name << " (" << a->theory << "): ";
    if (!v.ok) out.text << "not admissible: " << v.failures.front() << "\n";
    else if (sat) out.text << "algebra\n";
    else {
      out.text << "fails";
      for (const auto& s : failing) out.text << "\n  " << s;
      out.text << "\n";
    }
    results.push_back({{"name", a->name}, {"theory", a->theory}, {"admissible", v.ok}, {"admissibility_failures", v.failures},
                       {"satisfies", sat}, {"failing", failing}});
  }
  if (results.empty()) throw UsageError("no algebra blocks in " + file);
  out.j["algebras"] = results;
  return out.finish(pass);
}

int check_theory(const Common& c, const std::string& file) {
  auto f = load(file, options_for(c));
  Output out{c, report::envelope("check-theory", true), {}};
  json ts = json::array();
  for (const auto* tb : f.all<dsl::TheoryBlock>()) {
    const auto& sig = algebra::signature_of(tb->theory);
    std::size_t rels = 0, chains = 0;
    if (const auto* ct = std::get_if<algebra::ClassicalTheoryWithRelations>(&tb->theory)) {
      rels = ct->relations.size();
      chains = ct->chains.size();
    }
    auto eqs = algebra::equations_of(tb->theory).size();
    out.text << algebra::name_of(tb->theory) << ": base " << sig.base().name() << ", " << sig.sorts().size() << " sorts, "
             << sig.ops().size() << " operations, " << sig.symbols().size() << " symbols, " << eqs << " equations, "
             << rels << " relations, " << chains << " chains\n";
    ts.push_back({{"name", algebra::name_of(tb->theory)}, {"base", sig.base().name()}, {"sorts", sig.sorts().names()},
                  {"operations", sig.ops().size()}, {"symbols", sig.symbols().size()}, {"equations", eqs},
                  {"relations", rels}, {"chains", chains}});
  }
  out.text << f.blocks.size() << " blocks loaded\n";
  out.j["theories"] = ts;
  out.j["blocks"] = f.blocks.size();
  return out.finish(true);
}

int translate_cmd(const Common& c, const std::string& file, const std::string& to, const std::string& name,
                  const std::string& output) {
  auto f = load(file, options_for(c));
  const auto& tb = require_block<dsl::TheoryBlock>(f, name, "theory");
  algebra::AnyTheory result;
  auto need_enriched = [&]() -> const algebra::EnrichedTheory& {
    if (const auto* e = std::get_if<algebra::EnrichedTheory>(&tb.theory)) return *e;
    throw InvalidTheory("--to " + to + " needs an enriched theory");
  };
  auto need_classical = [&]() -> const algebra::ClassicalTheoryWithRelations& {
    if (const auto* e = std::get_if<algebra::ClassicalTheoryWithRelations>(&tb.theory)) return *e;
    throw InvalidTheory("--to " + to + " needs a classical theory with relations");
  };
  if (to == "relational") result = translate::enriched_to_relational(need_enriched());
  else if (to == "enriched") result = translate::relational_to_enriched(need_classical());
  else if (to == "cpo-classical") result = translate::cpo_enriched_to_classical(need_enriched());
  else if (to == "cpo-enriched") result = translate::cpo_classical_to_enriched(need_classical());
  else throw UsageError("--to must be relational, enriched, cpo-classical or cpo-enriched");
  dsl::TheoryFile t;
  t.blocks.push_back(dsl::theory_block(result));
  auto text = dsl::print_theory(t);
  if (!output.empty()) std::ofstream(output) << text;
  Output out{c, report::envelope("translate", true), {}};
  if (output.empty()) out.text << text;
  else out.text << "wrote " << output << "\n";
  out.j["theory"] = text;
  return out.finish(true);
}

int verify_equiv(const Common& c, const std::string& a, const std::string& b) {
  auto fa = load(a, options_for(c)), fb = load(b, options_for(c));
  const auto& ta = require_block<dsl::TheoryBlock>(fa, "", "theory");
  const auto& tb = require_block<dsl::TheoryBlock>(fb, "", "theory");
  auto r = translate::verify_theory_equivalence(ta.theory, tb.theory, verify_options(c));
  Output out{c, report::envelope("verify-equiv", r.pass), {}};
  out.text << report::counts_table(r);
  for (const auto& f : r.failures) out.text << "failure: " << f << "\n";
  out.text << (r.pass ? "equivalent" : "NOT equivalent") << " on carriers up to " << c.max_carrier << "\n";
  out.j["report"] = report::to_json(r);
  return out.finish(r.pass);
}

int check_monad(const Common& c, const std::string& file) {
  auto f = load(file, options_for(c));
  const auto& m = require_block<dsl::MonadBlock>(f, "", "monad").monad;
  auto r = monad::check_relative_monad(m);
  Output out{c, report::envelope("check-monad", r.ok), {}};
  out.text << m.name << ": " << (r.ok ? "relative monad laws hold" : "laws fail") << " (" << r.checked << " instances)\n";
  for (const auto& s : r.failures) out.text << "  " << s << "\n";
  out.j["laws"] = report::to_json(r);
  return out.finish(r.ok);
}

int theory_of_monad(const Common& c, const std::string& file) {
  auto f = load(file, options_for(c));
  const auto& m = require_block<dsl::MonadBlock>(f, "", "monad").monad;
  auto r = monad::check_relative_monad(m);
  Output out{c, report::envelope("theory-of-monad", r.ok), {}};
  out.j["laws"] = report::to_json(r);
  if (!r.ok) {
    out.text << m.name << ": laws fail, no theory produced\n";
    for (const auto& s : r.failures) out.text << "  " << s << "\n";
    return out.finish(false);
  }
  dsl::TheoryFile t;
  t.blocks.push_back(dsl::theory_block(monad::theory_from_monad(m)));
  auto text = dsl::print_theory(t);
  out.text << text;
  out.j["theory"] = text;
  return out.finish(true);
}

syntax::Arity parse_arity(const std::string& spec, const syntax::SortSet& sorts) {
  // "S,S,T" lists sorts; a bare number n means n inputs of the only sort.
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), ::isdigit)) {
    if (sorts.size() != 1) throw UsageError("a numeric --arity needs a one-sorted theory");
    auto n = static_cast<std::size_t>(std::stoul(spec));
    return n ? syntax::Arity(std::map<std::size_t, std::size_t>{{0, n}}) : syntax::Arity();
  }
  std::vector<std::size_t> in;
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ',');) {
    if (s.empty()) continue;
    auto i = sorts.find(s);
    if (!i) throw UsageError("unknown sort '" + s + "' in --arity");
    in.push_back(*i);
  }
  return syntax::Arity::from_sorts(in);
}

int free_algebra_cmd(const Common& c, const std::string& file, const std::string& arity, std::size_t size_bound) {
  auto f = load(file, options_for(c));
  const auto& tb = require_block<dsl::TheoryBlock>(f, "", "theory");
  const auto& sig = algebra::signature_of(tb.theory);
  auto j = parse_arity(arity, sig.sorts());
  auto fa = monad::free_algebra(tb.theory, j, c.depth, size_bound);
  Output out{c, report::envelope("free-algebra", fa.saturated), {}};
  out.j["free"] = report::to_json(fa);
  out.text << "free " << algebra::name_of(tb.theory) << "-algebra on " << j.to_string(sig.sorts()) << ": "
           << (fa.saturated ? "saturated" : "NOT saturated") << " after " << fa.rounds << " rounds, sizes";
  for (const auto& cs : fa.carriers) out.text << " " << cs.size();
  out.text << "\n";
  if (fa.algebra) {
    dsl::TheoryFile t;
    t.blocks.push_back(dsl::AlgebraBlock{"free_" + j.to_string(sig.sorts()), algebra::name_of(tb.theory), *fa.algebra});
    out.text << dsl::print_theory(t);
  }
  return out.finish(fa.saturated);
}

int verify_presentation_cmd(const Common& c, const std::string& file, std::size_t arity_bound) {
  auto f = load(file, options_for(c));
  auto opts = verify_options(c);
  Output out{c, report::envelope("verify-presentation", true), {}};
  if (const auto* mb = f.monad()) {
    auto r = monad::verify_presentation(mb->monad, opts);
    out.j["report"] = report::to_json(r);
    out.text << mb->monad.name << ": laws " << (r.laws.ok ? "hold" : "FAIL") << "\n";
    for (const auto& s : r.laws.failures) out.text << "  " << s << "\n";
    for (const auto& e : r.failing_equations) out.text << "  equation false in a Kleisli algebra: " << e << "\n";
    if (r.laws.well_formed) out.text << report::counts_table(r.equivalence);
    for (const auto& s : r.equivalence.failures) out.text << "failure: " << s << "\n";
    out.text << (r.pass ? "presented" : "NOT presented") << " on carriers up to " << c.max_carrier << "\n";
    return out.finish(r.pass);
  }
  // A theory: build its truncated monad, then check the presentation and the round trip.
  const auto& tb = require_block<dsl::TheoryBlock>(f, "", "monad or theory");
  const auto& sig = algebra::signature_of(tb.theory);
  auto mt = monad::monad_from_theory(tb.theory, monad::arities_up_to(sig.sorts().size(), arity_bound), c.depth);
  auto r = monad::verify_presentation(mt.monad, opts);
  auto defs = monad::round_trip_definitions(tb.theory, mt);
  auto back = monad::theory_from_monad(mt.monad);
  auto eqv = translate::verify_theory_equivalence(tb.theory, back, defs.forward, defs.backward, opts);
  bool pass = r.pass && eqv.pass;
  out.j["report"] = report::to_json(r);
  out.j["round_trip"] = report::to_json(eqv);
  out.text << "monad of " << algebra::name_of(tb.theory) << ": laws " << (r.laws.ok ? "hold" : "FAIL") << "\n";
  out.text << report::counts_table(r.equivalence) << "round trip:\n" << report::counts_table(eqv);
  out.text << (pass ? "presented" : "NOT presented") << " on carriers up to " << c.max_carrier << "\n";
  return out.finish(pass);
}

int free_cpo_cmd(const Common& c, const std::string& file) {
  auto f = load(file, options_for(c));
  const auto& p = require_block<dsl::PresentBlock>(f, "", "presentation");
  auto fc = cpo::free_omega_cpo(p.presentation);
  Output out{c, report::envelope("free-cpo", true), {}};
  dsl::TheoryFile t;
  t.blocks.push_back(dsl::ModelBlock{p.name + "_free", relcore::theory_pos(), fc.poset});
  out.text << dsl::print_theory(t) << "# unit:";
  for (std::size_t i = 0; i < fc.unit.size(); ++i)
    out.text << " " << p.presentation.preorder.id(static_cast<int>(i)) << "->" << fc.poset.id(fc.unit[i]);
  out.text << "\n";
  out.j["free"] = report::to_json(fc, p.presentation.preorder);
  return out.finish(true);
}

int enumerate_cmd(const Common& c, const std::string& file, bool algebras, bool morphisms, bool list) {
  if (algebras == morphisms) throw UsageError("enumerate needs exactly one of --algebras and --morphisms");
  auto opts = options_for(c);
  auto f = load(file, opts);
  Output out{c, report::envelope("enumerate", true), {}};
  if (morphisms) {
    auto models = f.all<dsl::ModelBlock>();
    if (models.empty()) throw UsageError("enumerate --morphisms needs model blocks");
    const auto* x = models[0];
    const auto* y = models.size() > 1 ? models[1] : models[0];
    auto ms = relcore::enumerate_morphisms(x->structure, y->structure);
    json all = json::array();
    out.text << ms.size() << " morphisms " << x->name << " -> " << y->name << "\n";
    for (const auto& m : ms) {
      json one = json::object();
      std::string line;
      for (std::size_t i = 0; i < m.size(); ++i) {
        one[x->structure.id(static_cast<int>(i))] = y->structure.id(m[i]);
        line += (i ? " " : "") + x->structure.id(static_cast<int>(i)) + "->" + y->structure.id(m[i]);
      }
      if (list) out.text << "  " << line << "\n";
      all.push_back(one);
    }
    out.j["count"] = ms.size();
    out.j["morphisms"] = all;
    return out.finish(true);
  }
  const auto& tb = require_block<dsl::TheoryBlock>(f, "", "theory");
  const auto& sig = algebra::signature_of(tb.theory);
  auto families = algebra::carrier_families(sig.base(), sig.sorts().size(), c.max_carrier);
  json fams = json::array();
  std::size_t total = 0;
  for (const auto& fam : families) {
    auto as = algebra::enumerate_algebras(tb.theory, fam, {budget_of(c)});
    total += as.size();
    auto desc = translate::describe_carriers(sig, fam);
    out.text << desc << ": " << as.size() << "\n";
    json list_j = json::array();
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (list) {
        dsl::TheoryFile t;
        t.blocks.push_back(dsl::AlgebraBlock{"a" + std::to_string(total - as.size() + i + 1), algebra::name_of(tb.theory), as[i]});
        out.text << dsl::print_theory(t);
      }
      list_j.push_back(report::to_json(as[i]));
    }
    fams.push_back({{"carriers", desc}, {"count", as.size()}, {"algebras", list_j}});
  }
  out.text << "total: " << total << " algebras on " << families.size() << " carrier families\n";
  out.j["families"] = fams;
  out.j["total"] = total;
  return out.finish(true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"enrvar: finite enriched universal algebra"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--theory", c.theory, "builtin base (set, preord, pos, simpN, qcat:chainN) or a theory file");
    s->add_option("--max-carrier", c.max_carrier, "largest carrier size to enumerate");
    s->add_option("--depth", c.depth, "term depth bound for free algebras");
    s->add_option("--budget", c.budget, "search node budget (default: ENRVAR_BUDGET)");
    s->add_flag("--json", c.json, "emit a JSON report");
    s->add_option("--seed", c.seed, "seed, echoed into JSON reports");
  };
  std::string file, file2, to, name, output, arity = "1", xname, yname;
  std::size_t size_bound = 4096, arity_bound = 2;
  bool algebras = false, morphisms = false, list = false;
  std::function<int()> run;
  auto sub = [&](const char* n, const char* desc, std::function<int()> fn) {
    auto* s = app.add_subcommand(n, desc);
    common(s);
    s->add_option("file", file, "input file")->required();
    s->callback([&run, fn] { run = fn; });
    return s;
  };
  sub("check-model", "check model blocks against a base theory", [&] { return check_model(c, file); });
  sub("free-model", "chase model blocks into free models", [&] { return free_model(c, file); });
  auto* e = sub("exp", "internal hom of two models", [&] { return exp_cmd(c, file, xname, yname); });
  e->add_option("--x", xname, "domain model name");
  e->add_option("--y", yname, "codomain model name");
  sub("check-algebra", "check algebra blocks against their theories", [&] { return check_algebra(c, file); });
  sub("check-theory", "load and sort-check a file", [&] { return check_theory(c, file); });
  auto* t = sub("translate", "translate a theory", [&] { return translate_cmd(c, file, to, name, output); });
  t->add_option("--to", to, "relational|enriched|cpo-classical|cpo-enriched")->required();
  t->add_option("--name", name, "theory to translate (default: the first)");
  t->add_option("-o,--output", output, "write the translated theory here");
  auto* v = sub("verify-equiv", "compare the algebras of two theories", [&] { return verify_equiv(c, file, file2); });
  v->add_option("file2", file2, "second theory file")->required();
  sub("check-monad", "check the relative monad laws", [&] { return check_monad(c, file); });
  sub("theory-of-monad", "print the theory presenting a monad", [&] { return theory_of_monad(c, file); });
  auto* fa = sub("free-algebra", "bounded free algebra of a theory", [&] { return free_algebra_cmd(c, file, arity, size_bound); });
  fa->add_option("--arity", arity, "generators: a count, or sort names separated by commas");
  fa->add_option("--size-bound", size_bound, "largest closure before giving up");
  auto* vp = sub("verify-presentation", "check a monad against its presenting theory",
                 [&] { return verify_presentation_cmd(c, file, arity_bound); });
  vp->add_option("--arities", arity_bound, "for theory input: truncate at arities of this total size");
  sub("free-cpo", "free omega-cpo of a presentation", [&] { return free_cpo_cmd(c, file); });
  auto* en = sub("enumerate", "enumerate algebras or morphisms",
                 [&] { return enumerate_cmd(c, file, algebras, morphisms, list); });
  en->add_flag("--algebras", algebras, "algebras of the first theory per carrier family");
  en->add_flag("--morphisms", morphisms, "morphisms between the first two models");
  en->add_flag("--list", list, "print every item, not only counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }
  try {
    return run();
  } catch (const ParseError& err) {
    std::cerr << current_file << ":" << err.what() << "\n";
    return 2;
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const UnknownTheory& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "failed: " << err.what() << "\n";
    return 1;
  }
}
