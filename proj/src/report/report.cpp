#include "enrvar/report/report.hpp"

#include <iomanip>
#include <sstream>

namespace enrvar::report {

json envelope(std::string_view command, bool pass) {
  return {{"schema", "enrvar-report"}, {"version", kSchemaVersion}, {"command", command}, {"pass", pass}};
}

json to_json(const relcore::FinStructure& x) {
  json edges = json::array();
  for (const auto& e : x.all_edges()) {
    json ids = json::array();
    for (int a : e.args) ids.push_back(x.id(a));
    edges.push_back({x.signature()[e.rel].name, ids});
  }
  return {{"carrier", x.carrier()}, {"edges", edges}};
}

json to_json(const algebra::Algebra& a) {
  const auto& sig = a.signature();
  json carriers = json::object(), tables = json::object();
  for (std::size_t s = 0; s < sig.sorts().size(); ++s) carriers[sig.sorts().name(s)] = to_json(a.carrier(s));
  for (std::size_t op = 0; op < sig.ops().size(); ++op) {
    const auto& out = a.carrier(sig.op(op).output);
    for (std::size_t p = 0; p < sig.op(op).param.size(); ++p) {
      json row = json::array();
      for (int v : a.table(op, p)) row.push_back(out.id(v));
      tables[sig.symbol_name(op, p)] = row;
    }
  }
  return {{"carriers", carriers}, {"tables", tables}};
}

json to_json(const translate::EquivalenceReport& r) {
  json cs = json::array();
  for (const auto& c : r.carriers) {
    json bij = json::array();
    for (auto [l, rr] : c.bijection) bij.push_back({l, rr});
    cs.push_back({{"carriers", c.descriptor}, {"left", c.left}, {"right", c.right}, {"ok", c.ok}, {"bijection", bij}});
  }
  return {{"left", r.left_name},         {"right", r.right_name},         {"carrier_families", cs},
          {"hom_pairs", r.hom_pairs},    {"hom_mismatches", r.hom_mismatches}, {"failures", r.failures},
          {"pass", r.pass}};
}

json to_json(const monad::LawReport& r) {
  return {{"ok", r.ok}, {"well_formed", r.well_formed}, {"checked", r.checked}, {"failures", r.failures}};
}

json to_json(const monad::PresentationReport& r) {
  return {{"laws", to_json(r.laws)},
          {"failing_equations", r.failing_equations},
          {"equivalence", to_json(r.equivalence)},
          {"pass", r.pass}};
}

json to_json(const monad::FreeAlgebra& f) {
  json carriers = json::array();
  for (const auto& c : f.carriers) carriers.push_back(to_json(c));
  json out{{"saturated", f.saturated}, {"rounds", f.rounds}, {"carriers", carriers}, {"generators", f.generators}};
  if (f.algebra) out["algebra"] = to_json(*f.algebra);
  return out;
}

json to_json(const cpo::FreeCpo& f, const relcore::FinStructure& presented) {
  json unit = json::object();
  for (std::size_t i = 0; i < f.unit.size(); ++i) unit[presented.id(static_cast<int>(i))] = f.poset.id(f.unit[i]);
  return {{"poset", to_json(f.poset)}, {"unit", unit}};
}

std::string counts_table(const translate::EquivalenceReport& r) {
  std::size_t w = 8;
  for (const auto& c : r.carriers) w = std::max(w, c.descriptor.size());
  auto lw = static_cast<int>(std::max<std::size_t>(8, r.left_name.size()));
  auto rw = static_cast<int>(std::max<std::size_t>(8, r.right_name.size()));
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(w)) << "carriers" << "  " << std::right << std::setw(lw) << r.left_name
      << "  " << std::setw(rw) << r.right_name << "  ok\n";
  for (const auto& c : r.carriers)
    out << std::left << std::setw(static_cast<int>(w)) << c.descriptor << "  " << std::right << std::setw(lw) << c.left
        << "  " << std::setw(rw) << c.right << "  " << (c.ok ? "yes" : "NO") << "\n";
  out << "hom-object pairs compared: " << r.hom_pairs << ", mismatches: " << r.hom_mismatches << "\n";
  return out.str();
}

}  // namespace enrvar::report
