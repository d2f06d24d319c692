#pragma once

#include <string>
#include <string_view>

#include "enrvar/cpo/presentation.hpp"
#include "enrvar/monad/free.hpp"
#include "enrvar/translate/translate.hpp"
#include "json.hpp"

namespace enrvar::report {

using json = nlohmann::json;

// Every JSON report carries {"schema": "enrvar-report", "version": N}.
inline constexpr int kSchemaVersion = 1;
json envelope(std::string_view command, bool pass);

json to_json(const relcore::FinStructure& x);
json to_json(const algebra::Algebra& a);
json to_json(const translate::EquivalenceReport& r);
json to_json(const monad::LawReport& r);
json to_json(const monad::PresentationReport& r);
json to_json(const monad::FreeAlgebra& f);
json to_json(const cpo::FreeCpo& f, const relcore::FinStructure& presented);

// Human-readable per-carrier counts.
std::string counts_table(const translate::EquivalenceReport& r);

}  // namespace enrvar::report
