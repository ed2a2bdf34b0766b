#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "perm.hpp"
#include "subgroup.hpp"

namespace braceforge {

namespace detail {

// Closes `gens` under composition inside Perm(G). Gives up as soon as two
// members agree at 0 or the closure exceeds n.
inline bool oracle_close(std::size_t n, const std::vector<Perm>& gens, std::vector<Perm>& members) {
  std::vector<bool> hit(n, false);
  std::unordered_set<Perm, PermHash> seen;
  members.assign(1, Perm::identity(n));
  seen.insert(members[0]);
  hit[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const Perm& g : gens) {
      Perm y = members[i] * g;
      if (seen.count(y)) continue;
      if (hit[y[0]] || members.size() == n) return false;
      hit[y[0]] = true;
      seen.insert(y);
      members.push_back(std::move(y));
    }
  }
  return true;
}

struct OracleSearch {
  const GroupPtr& G;
  std::vector<std::vector<Perm>> by_image;  // candidates grouped by image of 0
  std::set<std::vector<Perm>> found;

  void run(const std::vector<Perm>& gens, const std::vector<Perm>& members) {
    const std::size_t n = G->order();
    if (members.size() == n) {
      std::vector<Perm> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      found.insert(std::move(sorted));
      return;
    }
    std::vector<bool> hit(n, false);
    for (const Perm& m : members) hit[m[0]] = true;
    std::size_t x = 0;
    while (hit[x]) ++x;
    for (const Perm& c : by_image[x]) {
      std::vector<Perm> next_gens = gens;
      for (std::size_t g = 0; g < n; ++g) next_gens.push_back(conj_by_group(*G, static_cast<Elem>(g), c));
      std::sort(next_gens.begin(), next_gens.end());
      next_gens.erase(std::unique(next_gens.begin(), next_gens.end()), next_gens.end());
      std::vector<Perm> next;
      if (oracle_close(n, next_gens, next) && n % next.size() == 0) run(next_gens, next);
    }
  }
};

}  // namespace detail

/// Regular G-stable subgroups found by searching Perm(G) itself, without the
/// holomorph or any brace machinery. Candidates are the fixed-point-free
/// permutations whose order divides n; each step adds the candidate sending 0
/// to the least uncovered point together with all its G-conjugates.
inline std::vector<PermSubgroup> direct_enumerate_oracle(const GroupPtr& G, std::size_t max_order = 8) {
  const std::size_t n = G->order();
  if (n > max_order) {
    throw Error(ErrorCode::OrderTooLargeForOracle,
                "oracle limited to order " + std::to_string(max_order) + ", got " + std::to_string(n));
  }
  detail::OracleSearch search{G, std::vector<std::vector<Perm>>(n), {}};
  std::vector<Elem> img(n);
  std::iota(img.begin(), img.end(), Elem{0});
  do {
    Perm p = Perm::trusted(img);
    if (p.is_identity() || p.has_fixed_point() || n % p.order() != 0) continue;
    search.by_image[p[0]].push_back(std::move(p));
  } while (std::next_permutation(img.begin(), img.end()));

  search.run({}, {Perm::identity(n)});
  std::vector<PermSubgroup> out;
  for (const auto& elems : search.found) out.push_back(PermSubgroup::trusted(G, elems));
  return out;
}

}  // namespace braceforge
