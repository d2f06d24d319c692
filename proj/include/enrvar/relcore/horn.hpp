#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "enrvar/relcore/structure.hpp"

namespace enrvar::relcore {

// Relation index used for the equality predicate in formulas.
inline constexpr std::size_t kEquality = static_cast<std::size_t>(-1);

struct HornAtom {
  std::size_t rel = 0;  // kEquality for ≐
  std::vector<std::size_t> vars;
  bool operator==(const HornAtom&) const = default;
};

struct HornFormula {
  std::vector<std::string> var_names;
  std::vector<HornAtom> premises;
  HornAtom conclusion;
  bool operator==(const HornFormula&) const = default;
};

class HornTheory {
 public:
  HornTheory() : sig_(make_signature({})) {}
  // Validates atoms and the reflexivity discipline.
  HornTheory(SignaturePtr sig, std::vector<HornFormula> axioms, std::string name = {});

  const RelSignature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  const std::vector<HornFormula>& axioms() const { return axioms_; }
  const std::string& name() const { return name_; }

 private:
  SignaturePtr sig_;
  std::vector<HornFormula> axioms_;
  std::string name_;
};

bool is_reflexivity_axiom(const HornFormula& f, std::size_t rel, std::size_t arity);

// Calls fn for every valuation (indexed by formula variable) that makes all
// premises edges of x. Stops early when fn returns false.
void for_each_premise_match(const FinStructure& x, const HornFormula& f,
                            const std::function<bool(const std::vector<int>&)>& fn);

bool atom_holds(const FinStructure& x, const HornAtom& atom, const std::vector<int>& valuation);
bool satisfies_formula(const FinStructure& x, const HornFormula& f);

struct Violation {
  std::size_t axiom = 0;
  std::vector<int> valuation;
};
std::optional<Violation> find_violation(const FinStructure& x, const HornTheory& t);
bool is_model(const FinStructure& x, const HornTheory& t);

bool is_pi_morphism(const Map& f, const FinStructure& x, const FinStructure& y);

struct ChaseResult {
  FinStructure model;
  Map unit;
};
ChaseResult chase(const FinStructure& x, const HornTheory& t);

std::string to_string(const HornFormula& f, const RelSignature& sig);

}  // namespace enrvar::relcore
