#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "enrvar/relcore/horn.hpp"

namespace enrvar::relcore {

// Finite lattice given by its order; validated to be distributive, which for
// finite lattices is the same as being a Heyting algebra.
class FiniteHeytingAlgebra {
 public:
  FiniteHeytingAlgebra(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& order);
  static FiniteHeytingAlgebra chain(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index_of(std::string_view name) const;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }
  // Generating order pairs a<b (covers), for printing.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_, join_;
  std::size_t top_ = 0, bottom_ = 0;
};

HornTheory theory_set();
HornTheory theory_preord();
HornTheory theory_pos();
HornTheory theory_qcat(const FiniteHeytingAlgebra& q);
HornTheory theory_simp(std::size_t n);

// Relation names used by the builtin theories.
inline constexpr std::string_view kLeq = "<=";
std::string qcat_relation_name(const std::string& q);
std::string simp_relation_name(std::size_t m);

// "set", "preord", "pos", "simpN" / "simp:N", "qcat:chainN".
HornTheory builtin_theory(std::string_view spec);

// Index of the order relation of a preord/pos-style theory.
std::size_t order_relation(const RelSignature& sig);

}  // namespace enrvar::relcore
