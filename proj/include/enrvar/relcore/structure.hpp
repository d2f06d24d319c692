#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enrvar::relcore {

inline constexpr std::string_view kEqualityName = "≐";

struct RelSymbol {
  std::string name;
  std::size_t arity = 0;
  bool operator==(const RelSymbol&) const = default;
};

class RelSignature {
 public:
  RelSignature() = default;
  explicit RelSignature(std::vector<RelSymbol> symbols);

  const std::vector<RelSymbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const RelSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  bool operator==(const RelSignature& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<RelSymbol> symbols_;
};

using SignaturePtr = std::shared_ptr<const RelSignature>;
SignaturePtr make_signature(std::vector<RelSymbol> symbols);
bool same_signature(const SignaturePtr& a, const SignaturePtr& b);

// Element indices into a carrier.
using Tuple = std::vector<int>;
// A total function between carriers, stored by element index.
using Map = std::vector<int>;

struct Edge {
  std::size_t rel = 0;
  Tuple args;
  auto operator<=>(const Edge&) const = default;
};

// Finite Π-structure. The carrier order is significant: every enumeration
// in the library derives its order from it.
class FinStructure {
 public:
  FinStructure() = default;
  FinStructure(SignaturePtr sig, std::vector<std::string> carrier, std::vector<Edge> edges);
  // Carrier "0".."n-1".
  FinStructure(SignaturePtr sig, std::size_t n, std::vector<Edge> edges);

  const RelSignature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  std::size_t size() const { return carrier_.size(); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& id(int i) const { return carrier_[static_cast<std::size_t>(i)]; }
  std::optional<int> find(std::string_view id) const;
  int index_of(std::string_view id) const;

  bool has_edge(std::size_t rel, std::span<const int> args) const;
  bool has_edge(std::size_t rel, std::initializer_list<int> args) const {
    return has_edge(rel, std::span<const int>(args.begin(), args.size()));
  }
  // Sorted lexicographically.
  const std::vector<Tuple>& edges(std::size_t rel) const { return edges_[rel]; }
  std::vector<Edge> all_edges() const;
  std::size_t edge_count() const;

  // Same signature contents, same carrier ids in order, same edges.
  bool operator==(const FinStructure& o) const;

 private:
  void index();

  SignaturePtr sig_;
  std::vector<std::string> carrier_;
  std::vector<std::vector<Tuple>> edges_;
  // Dense membership bitmap per relation when n^arity is small.
  std::vector<std::vector<std::uint8_t>> dense_;
};

// Indiscrete one-element structure: every relation holds on the single point.
FinStructure terminal(const SignaturePtr& sig);
bool is_terminal(const FinStructure& x);
// Substructure on the listed elements (in that order) with induced edges.
FinStructure induced_substructure(const FinStructure& x, const std::vector<int>& elements,
                                  std::vector<std::string> ids = {});
// Structure with ids replaced; edges unchanged.
FinStructure relabel(const FinStructure& x, std::vector<std::string> ids);

std::string to_string(const FinStructure& x);

}  // namespace enrvar::relcore
