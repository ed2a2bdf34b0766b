#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

namespace braceforge {

/// Disjoint sets over 0..n-1 with path halving; the root of each set is its
/// least member, so classes come out keyed by their minimal element.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

  /// Classes ordered by least member, members ascending.
  std::vector<std::vector<std::size_t>> classes() {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t x = 0; x < parent_.size(); ++x) by_root[find(x)].push_back(x);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace braceforge
