#ifndef GRPD_IDS_HPP
#define GRPD_IDS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace grpd {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = 0xffffffffu;

/// Interned identifier table: stable indices, lookup by name.
class NameTable {
public:
  Index add(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<Index>(names_.size()));
    if (!inserted) throw std::invalid_argument("duplicate identifier: " + name);
    names_.push_back(name);
    return it->second;
  }

  Index find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? kNoIndex : it->second;
  }

  Index at(const std::string& name) const {
    Index i = find(name);
    if (i == kNoIndex) throw std::out_of_range("unknown identifier: " + name);
    return i;
  }

  const std::string& name(Index i) const { return names_.at(i); }
  std::size_t size() const { return names_.size(); }
  bool contains(const std::string& n) const { return find(n) != kNoIndex; }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const NameTable& other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> index_;
};

/// Disjoint-set forest used by the various quotient constructions.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<Index>(i);
  }

  Index find(Index x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller index as representative so class names are stable.
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

  std::size_t size() const { return parent_.size(); }

private:
  mutable std::vector<Index> parent_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void fail(std::string msg) { violations.push_back(std::move(msg)); }
};

/// Raised when a construction would exceed its configured size budget.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

}  // namespace grpd

#endif
