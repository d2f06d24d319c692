#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "enrvar/errors.hpp"

namespace enrvar::syntax {

class SortSet {
 public:
  SortSet() = default;
  explicit SortSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  bool operator==(const SortSet&) const = default;

 private:
  std::vector<std::string> names_;
};

// J ∈ ℕ_S: how many variables of each sort. Zero counts are not stored.
class Arity {
 public:
  Arity() = default;
  explicit Arity(const std::map<std::size_t, std::size_t>& counts);
  static Arity from_sorts(const std::vector<std::size_t>& sorts);

  std::size_t count(std::size_t sort) const;
  std::size_t total() const;
  const std::map<std::size_t, std::size_t>& counts() const { return counts_; }
  // Argument sorts in the flattened sort-then-position order.
  std::vector<std::size_t> flattened() const;
  std::string to_string(const SortSet& sorts) const;

  auto operator<=>(const Arity&) const = default;

 private:
  std::map<std::size_t, std::size_t> counts_;
};

struct ContextEntry {
  std::string name;
  std::size_t sort = 0;
  bool operator==(const ContextEntry&) const = default;
};

class Context {
 public:
  Context() = default;
  explicit Context(std::vector<ContextEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const ContextEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<ContextEntry>& entries() const { return entries_; }
  std::optional<std::size_t> find(std::string_view name) const;
  Arity arity() const;
  bool operator==(const Context&) const = default;

 private:
  std::vector<ContextEntry> entries_;
};

// Variables v1, v2, ... in flattened order.
Context canonical_context(const Arity& j);

class Term {
 public:
  Term() = default;
  static Term var(std::size_t index);
  static Term app(std::string op, std::vector<Term> args = {});

  bool is_var() const { return op_.empty(); }
  std::size_t var_index() const { return var_; }
  const std::string& op() const { return op_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  std::size_t var_ = 0;
  std::string op_;
  std::vector<Term> args_;
};
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

struct OpDecl {
  std::string name;
  Arity input;
  std::size_t output = 0;
  bool operator==(const OpDecl&) const = default;
};

class ClassicalSignature {
 public:
  ClassicalSignature() = default;
  ClassicalSignature(SortSet sorts, std::vector<OpDecl> ops);

  const SortSet& sorts() const { return sorts_; }
  const std::vector<OpDecl>& ops() const { return ops_; }
  const OpDecl* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  SortSet sorts_;
  std::vector<OpDecl> ops_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct SortError : Error {
  enum class Kind { UnknownOperation, ArityMismatch, SortMismatch, VariableOutOfRange };
  SortError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
  Kind kind;
};

std::size_t check_term(const ClassicalSignature& sig, const Context& ctx, const Term& t);

// Simultaneous substitution of assignment[i] for Var(i). The checked form
// verifies sorts against ctx (source) and ctx2 (target).
Term substitute(const Term& t, const std::vector<Term>& assignment);
Term substitute(const ClassicalSignature& sig, const Term& t, const Context& ctx, const std::vector<Term>& assignment,
                const Context& ctx2);

struct Equation {
  Context context;
  Term lhs, rhs;
  std::size_t sort = 0;
  bool operator==(const Equation&) const = default;
};

struct RelationAtom {
  Context context;
  std::string relation;
  std::vector<Term> args;
  std::size_t sort = 0;
  bool operator==(const RelationAtom&) const = default;
};

struct ExplicitChain {
  std::vector<Term> terms;  // eventually constant at the last entry
  bool operator==(const ExplicitChain&) const = default;
};
// t_0 = seed, t_{n+1} = step[hole := t_n]; the hole is Var(context.size()).
struct IteratedChain {
  Term seed, step;
  bool operator==(const IteratedChain&) const = default;
};

struct ChainRelation {
  Context context;
  std::size_t sort = 0;
  std::variant<ExplicitChain, IteratedChain> chain;
  Term limit;
  bool operator==(const ChainRelation&) const = default;
};

void check_equation(const ClassicalSignature& sig, const Equation& e);
void check_chain(const ClassicalSignature& sig, const ChainRelation& c);
// Context for the step term of an iterated chain: context plus the hole.
Context step_context(const ChainRelation& c, std::string_view hole_name = "_");

// Syntactic unfolding t_0, t_1, ... until a term repeats; throws
// IterationNotStabilized when no repetition occurs within bound terms.
std::vector<Term> unfold_chain(const ChainRelation& c, std::size_t bound);

std::string to_string(const Term& t, const Context& ctx);

// Stable reordering of a context so that variables are grouped by sort
// (giving a canonical context). perm[i] is the new index of old variable i.
std::vector<std::size_t> canonical_order(const Context& ctx);
Term rename(const Term& t, const std::vector<std::size_t>& perm);

}  // namespace enrvar::syntax
