#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enrvar/algebra/search.hpp"

namespace enrvar::translate {

using algebra::AnyTheory;
using algebra::ClassicalTheoryWithRelations;
using algebra::EnrichedTheory;

// One relation atom per parameter edge of every operation, loops included.
ClassicalTheoryWithRelations enriched_to_relational(const EnrichedTheory& t);

// Terms of each (J, S) group of relations, with the chased parameter and
// the unit; exposed for inspection and tests.
struct TermStructure {
  syntax::Arity arity;
  std::size_t sort = 0;
  std::vector<syntax::Term> terms;  // over canonical_context(arity)
  relcore::FinStructure structure;   // edges exactly from the relations
  relcore::FinStructure free;        // chased or cpo-completed
  relcore::Map unit;
  std::string op;                    // name of the adjoined operation
};

EnrichedTheory relational_to_enriched(const ClassicalTheoryWithRelations& t, std::vector<TermStructure>* trace = nullptr);

// Finite-parameter ω-cpo translations; the base must be the poset theory.
ClassicalTheoryWithRelations cpo_enriched_to_classical(const EnrichedTheory& t);
EnrichedTheory cpo_classical_to_enriched(const ClassicalTheoryWithRelations& t, std::size_t unfold_bound = 64,
                                         std::vector<TermStructure>* trace = nullptr);

// Maximal chains of a finite poset, each listed bottom to top.
std::vector<std::vector<int>> maximal_chains(const relcore::FinStructure& poset);

// [context ⊢ term] in a source signature, defining one target symbol.
struct Definition {
  syntax::Context context;
  syntax::Term term;
};
using Definitions = std::map<std::string, Definition>;

// Target symbols defined from the source: shared names are copied, the
// rest must have a defining equation sym(v1, …, vn) ≐ t in the target whose
// right side uses source symbols only. Throws NoCorrespondence otherwise.
Definitions definitions_between(const AnyTheory& from, const AnyTheory& to);

// Algebra over the target signature with each symbol interpreted through
// its definition.
algebra::Algebra transport(const algebra::Algebra& a, const algebra::SignaturePtr& target, const Definitions& defs);

struct CarrierCheck {
  std::string descriptor;
  std::size_t left = 0, right = 0;
  std::vector<std::pair<std::size_t, std::size_t>> bijection;
  bool ok = true;
};

struct EquivalenceReport {
  std::string left_name, right_name;
  std::vector<CarrierCheck> carriers;
  std::size_t hom_pairs = 0;     // algebra pairs whose hom-objects were compared
  std::size_t hom_mismatches = 0;
  std::vector<std::string> failures;
  bool pass = true;
};

struct VerifyOptions {
  std::size_t max_carrier = 3;
  std::size_t min_carrier = 0;
  std::uint64_t node_budget = 200'000'000;
  bool compare_hom_objects = true;
};

// Desk-scale check that two theories have the same algebras: for every
// carrier family up to isomorphism, the transports in both directions are
// mutually inverse bijections between the algebra sets, and hom-objects
// agree.
EquivalenceReport verify_theory_equivalence(const AnyTheory& left, const AnyTheory& right, const VerifyOptions& opts = {});
EquivalenceReport verify_theory_equivalence(const AnyTheory& left, const AnyTheory& right, const Definitions& forward,
                                            const Definitions& backward, const VerifyOptions& opts = {});

std::string describe_carriers(const algebra::EnrichedSignature& sig, const std::vector<relcore::FinStructure>& carriers);

}  // namespace enrvar::translate
