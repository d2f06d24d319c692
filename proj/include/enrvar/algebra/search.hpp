#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "enrvar/algebra/algebra.hpp"

namespace enrvar::algebra {

// Finite-model search over the cells of all operation tables on fixed
// carriers. Constraints are ground expressions whose leaves are constants
// and whose inner nodes read a table cell; each is rechecked only while it is
// still undecided.
class Search {
 public:
  Search(SignaturePtr sig, std::vector<FinStructure> carriers);

  using Expr = std::uint32_t;
  Expr constant(int element);
  Expr cell(std::size_t op, std::size_t p, const std::vector<Expr>& args);
  // Expression for a term with variables bound to elements.
  Expr term(const syntax::Term& t, const std::vector<int>& point);

  void require_equal(Expr a, Expr b);
  void require_edge(std::size_t sort, std::size_t rel, const std::vector<Expr>& args);
  void add_leaf_filter(std::function<bool(const Algebra&)> filter);

  // Generic constraint families.
  void add_admissibility();
  void add_equation(const syntax::Equation& e);
  void add_relation(const syntax::RelationAtom& r);
  void add_chain(const syntax::ChainRelation& c);
  void add_theory(const AnyTheory& t);

  // Visits solutions in lexicographic order of the tables; returns the
  // number visited. Throws BudgetExceeded beyond node_budget search nodes.
  std::size_t run(const std::function<bool(const Algebra&)>& visit, std::uint64_t node_budget);
  std::uint64_t nodes() const { return nodes_; }
  std::size_t constraint_count() const { return constraints_.size(); }

 private:
  struct Node {
    bool is_const = true;
    int value = 0;        // constant value
    std::size_t op = 0, p = 0;
    long static_cell = -1;  // cell index when all children are constants
    std::vector<Expr> children;
  };
  struct Constraint {
    bool is_edge = false;
    std::size_t sort = 0, rel = 0;
    std::vector<Expr> args;
  };

  int eval(Expr e) const;
  int status(const Constraint& c) const;  // 1 true, 0 false, -1 undecided
  long max_static_cell(Expr e) const;
  void push_constraint(Constraint c);
  void recurse(std::size_t k);

  SignaturePtr sig_;
  std::vector<FinStructure> carriers_;
  std::vector<std::vector<std::size_t>> cell_offset_;  // [op][p]
  std::vector<std::vector<std::size_t>> strides_;      // [op]
  std::vector<std::size_t> cell_dom_;                  // [op] domain size
  std::vector<std::size_t> cell_op_, cell_sort_;
  std::size_t total_cells_ = 0;

  std::vector<Node> nodes_store_;
  std::map<std::vector<long>, Expr> intern_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::uint32_t>> trigger_;  // per cell
  std::vector<std::uint32_t> immediate_;
  std::vector<std::function<bool(const Algebra&)>> filters_;

  std::vector<int> values_;
  std::vector<std::vector<std::uint32_t>> pending_;
  std::uint64_t nodes_ = 0, budget_ = 0;
  std::size_t found_ = 0;
  bool stop_ = false;
  const std::function<bool(const Algebra&)>* visit_ = nullptr;
};

struct EnumerationOptions {
  std::uint64_t node_budget = 200'000'000;
};

// All algebras of the theory on the given carriers, deterministic order.
std::vector<Algebra> enumerate_algebras(const AnyTheory& t, const std::vector<FinStructure>& carriers,
                                        const EnumerationOptions& opts = {});
std::size_t count_algebras(const AnyTheory& t, const std::vector<FinStructure>& carriers,
                           const EnumerationOptions& opts = {});

// Carrier families up to isomorphism: per sort, base models of size
// min_size..max_size, all combinations in sort order.
std::vector<std::vector<FinStructure>> carrier_families(const relcore::HornTheory& base, std::size_t sorts,
                                                        std::size_t max_size, std::size_t min_size = 0);

// Budget default from ENRVAR_BUDGET when set.
std::uint64_t default_budget();

}  // namespace enrvar::algebra
