#include "enrvar/relcore/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "enrvar/errors.hpp"

namespace enrvar::relcore {

namespace {

constexpr std::uint64_t kDenseLimit = 1u << 20;

std::optional<std::uint64_t> dense_size(std::size_t n, std::size_t arity) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    total *= n;
    if (total > kDenseLimit) return std::nullopt;
  }
  return total;
}

std::uint64_t encode(std::span<const int> args, std::size_t n) {
  std::uint64_t key = 0;
  for (int a : args) key = key * n + static_cast<std::uint64_t>(a);
  return key;
}

}  // namespace

RelSignature::RelSignature(std::vector<RelSymbol> symbols) : symbols_(std::move(symbols)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name == kEqualityName) throw InvalidTheory("relation name '≐' is reserved");
    if (s.name.empty()) throw InvalidTheory("empty relation name");
    if (!seen.insert(s.name).second) throw InvalidTheory("duplicate relation name '" + s.name + "'");
  }
}

std::optional<std::size_t> RelSignature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t RelSignature::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw SignatureMismatch("unknown relation '" + std::string(name) + "'");
  return *i;
}

SignaturePtr make_signature(std::vector<RelSymbol> symbols) {
  return std::make_shared<const RelSignature>(std::move(symbols));
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && *a == *b);
}

FinStructure::FinStructure(SignaturePtr sig, std::vector<std::string> carrier, std::vector<Edge> edges)
    : sig_(std::move(sig)), carrier_(std::move(carrier)) {
  if (!sig_) sig_ = make_signature({});
  std::unordered_set<std::string> seen;
  for (const auto& id : carrier_)
    if (!seen.insert(id).second) throw InvalidStructure("duplicate element id '" + id + "'");
  edges_.assign(sig_->size(), {});
  const int n = static_cast<int>(carrier_.size());
  for (auto& e : edges) {
    if (e.rel >= sig_->size()) throw InvalidStructure("edge on unknown relation");
    if (e.args.size() != (*sig_)[e.rel].arity)
      throw InvalidStructure("edge arity mismatch on '" + (*sig_)[e.rel].name + "'");
    for (int a : e.args)
      if (a < 0 || a >= n) throw InvalidStructure("edge entry outside carrier");
    edges_[e.rel].push_back(std::move(e.args));
  }
  for (auto& list : edges_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  index();
}

FinStructure::FinStructure(SignaturePtr sig, std::size_t n, std::vector<Edge> edges)
    : FinStructure(std::move(sig),
                   [n] {
                     std::vector<std::string> ids;
                     for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
                     return ids;
                   }(),
                   std::move(edges)) {}

void FinStructure::index() {
  dense_.assign(edges_.size(), {});
  for (std::size_t r = 0; r < edges_.size(); ++r) {
    auto total = dense_size(carrier_.size(), (*sig_)[r].arity);
    if (!total) continue;
    dense_[r].assign(*total, 0);
    for (const auto& t : edges_[r]) dense_[r][encode(t, carrier_.size())] = 1;
  }
}

std::optional<int> FinStructure::find(std::string_view id) const {
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (carrier_[i] == id) return static_cast<int>(i);
  return std::nullopt;
}

int FinStructure::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw InvalidStructure("unknown element '" + std::string(id) + "'");
  return *i;
}

bool FinStructure::has_edge(std::size_t rel, std::span<const int> args) const {
  if (!dense_[rel].empty()) return dense_[rel][encode(args, carrier_.size())] != 0;
  const auto& list = edges_[rel];
  auto it = std::lower_bound(list.begin(), list.end(), args,
                             [](const Tuple& t, std::span<const int> a) {
                               return std::lexicographical_compare(t.begin(), t.end(), a.begin(), a.end());
                             });
  return it != list.end() && std::equal(it->begin(), it->end(), args.begin(), args.end());
}

std::vector<Edge> FinStructure::all_edges() const {
  std::vector<Edge> out;
  for (std::size_t r = 0; r < edges_.size(); ++r)
    for (const auto& t : edges_[r]) out.push_back({r, t});
  return out;
}

std::size_t FinStructure::edge_count() const {
  std::size_t c = 0;
  for (const auto& l : edges_) c += l.size();
  return c;
}

bool FinStructure::operator==(const FinStructure& o) const {
  return same_signature(sig_, o.sig_) && carrier_ == o.carrier_ && edges_ == o.edges_;
}

FinStructure terminal(const SignaturePtr& sig) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < sig->size(); ++r) edges.push_back({r, Tuple((*sig)[r].arity, 0)});
  return FinStructure(sig, std::vector<std::string>{"*"}, std::move(edges));
}

bool is_terminal(const FinStructure& x) {
  if (x.size() != 1) return false;
  for (std::size_t r = 0; r < x.signature().size(); ++r)
    if (x.edges(r).empty()) return false;
  return true;
}

FinStructure induced_substructure(const FinStructure& x, const std::vector<int>& elements,
                                  std::vector<std::string> ids) {
  std::vector<int> pos(x.size(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[static_cast<std::size_t>(elements[i])] = static_cast<int>(i);
  if (ids.empty())
    for (int e : elements) ids.push_back(x.id(e));
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < x.signature().size(); ++r) {
    for (const auto& t : x.edges(r)) {
      Tuple mapped;
      bool inside = true;
      for (int a : t) {
        if (pos[static_cast<std::size_t>(a)] < 0) { inside = false; break; }
        mapped.push_back(pos[static_cast<std::size_t>(a)]);
      }
      if (inside) edges.push_back({r, std::move(mapped)});
    }
  }
  return FinStructure(x.signature_ptr(), std::move(ids), std::move(edges));
}

FinStructure relabel(const FinStructure& x, std::vector<std::string> ids) {
  if (ids.size() != x.size()) throw InvalidStructure("relabel: wrong number of ids");
  return FinStructure(x.signature_ptr(), std::move(ids), x.all_edges());
}

std::string to_string(const FinStructure& x) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x.carrier()[i];
  out << " |";
  for (const auto& e : x.all_edges()) {
    out << " " << x.signature()[e.rel].name << "(";
    for (std::size_t k = 0; k < e.args.size(); ++k) out << (k ? "," : "") << x.id(e.args[k]);
    out << ")";
  }
  out << " }";
  return out.str();
}

}  // namespace enrvar::relcore
