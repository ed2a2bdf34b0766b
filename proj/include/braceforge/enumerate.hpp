#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "brace.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "subgroup.hpp"

namespace braceforge {

struct EnumerateOptions {
  std::size_t jobs = 1;
  const GroupCatalog* catalog = nullptr;  // null means the built-in catalog
};

namespace detail {

// Hol(M) with elements (x, a) standing for lambda(x) phi_a, encoded x + n a.
class HolomorphArena {
 public:
  explicit HolomorphArena(const FiniteGroup& M) : M_(M), n_(M.order()), auts_(automorphism_group(M)) {
    const std::size_t A = auts_.size();
    std::map<std::vector<Elem>, std::uint32_t> index;
    for (std::uint32_t a = 0; a < A; ++a) index.emplace(auts_[a].images, a);
    compose_.resize(A * A);
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t b = 0; b < A; ++b) {
        compose_[a * A + b] = index.at(braceforge::compose(auts_[a], auts_[b]).images);
      }
    }
    identity_aut_ = index.at(identity_hom(n_).images);
    admissible_.resize(n_);
    for (std::size_t x = 1; x < n_; ++x) {
      for (std::uint32_t a = 0; a < A; ++a) {
        const std::uint32_t e = encode(static_cast<Elem>(x), a);
        if (fixed_point_free(e) && n_ % element_order(e) == 0) admissible_[x].push_back(a);
      }
    }
  }

  std::size_t degree() const noexcept { return n_; }
  std::size_t aut_count() const noexcept { return auts_.size(); }
  const GroupHom& aut(std::uint32_t a) const { return auts_[a]; }
  std::uint32_t identity() const noexcept { return encode(0, identity_aut_); }
  const std::vector<std::uint32_t>& admissible(Elem x) const { return admissible_[x]; }

  std::uint32_t encode(Elem x, std::uint32_t a) const noexcept {
    return x + static_cast<std::uint32_t>(n_) * a;
  }
  Elem point(std::uint32_t e) const noexcept { return static_cast<Elem>(e % n_); }
  std::uint32_t aut_of(std::uint32_t e) const noexcept { return e / static_cast<std::uint32_t>(n_); }

  std::uint32_t mul(std::uint32_t e, std::uint32_t f) const noexcept {
    const Elem x = point(e), y = point(f);
    const std::uint32_t a = aut_of(e), b = aut_of(f);
    return encode(M_.mul(x, auts_[a](y)), compose_[a * auts_.size() + b]);
  }

 private:
  bool fixed_point_free(std::uint32_t e) const {
    const Elem x = point(e);
    const GroupHom& phi = auts_[aut_of(e)];
    for (std::size_t y = 0; y < n_; ++y) {
      if (M_.mul(x, phi(static_cast<Elem>(y))) == y) return false;
    }
    return true;
  }

  std::size_t element_order(std::uint32_t e) const {
    std::size_t k = 1;
    for (std::uint32_t f = e; f != identity(); f = mul(f, e)) ++k;
    return k;
  }

  const FiniteGroup& M_;
  std::size_t n_;
  std::vector<GroupHom> auts_;
  std::vector<std::uint32_t> compose_;
  std::uint32_t identity_aut_ = 0;
  std::vector<std::vector<std::uint32_t>> admissible_;
};

// A subgroup of Hol(M) meeting each coset lambda(M) phi at most once per
// point: aut_at[x] is the automorphism paired with x, or -1.
struct RegularSearchState {
  std::vector<std::uint32_t> elements;
  std::vector<std::uint32_t> generators;
  std::vector<int> aut_at;
};

// <H, e> with distinct points, or false when the closure repeats a point or
// outgrows n.
inline bool extend_closure(const HolomorphArena& hol, const RegularSearchState& H, std::uint32_t e,
                           RegularSearchState& out) {
  const std::size_t n = hol.degree();
  out = H;
  out.generators.push_back(e);
  auto add = [&](std::uint32_t f) {
    const Elem x = hol.point(f);
    if (out.aut_at[x] == static_cast<int>(hol.aut_of(f))) return true;
    if (out.aut_at[x] != -1) return false;
    out.aut_at[x] = static_cast<int>(hol.aut_of(f));
    out.elements.push_back(f);
    return true;
  };
  if (!add(e)) return false;
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (std::uint32_t g : out.generators) {
      if (!add(hol.mul(out.elements[i], g))) return false;
    }
    if (out.elements.size() > n) return false;
  }
  return n % out.elements.size() == 0;
}

inline void search_regular(const HolomorphArena& hol, const RegularSearchState& H,
                           std::vector<std::vector<int>>& found) {
  const std::size_t n = hol.degree();
  if (H.elements.size() == n) {
    found.push_back(H.aut_at);
    return;
  }
  Elem x = 0;
  while (H.aut_at[x] != -1) ++x;
  RegularSearchState next;
  for (std::uint32_t a : hol.admissible(x)) {
    if (extend_closure(hol, H, hol.encode(x, a), next)) search_regular(hol, next, found);
  }
}

}  // namespace detail

/// Every regular subgroup R of Hol(M), returned as the brace with dot group M
/// and circle x o y = x phi_x(y), where lambda(x) phi_x is the element of R
/// sending 1 to x. The search fixes, for the least point not yet covered, the
/// automorphism paired with it, so each R is reached along exactly one path.
inline std::vector<SkewBrace> holomorph_regular_braces(const FiniteGroup& M, std::size_t jobs = 1) {
  const std::size_t n = M.order();
  detail::HolomorphArena hol(M);
  detail::RegularSearchState root;
  root.elements.push_back(hol.identity());
  root.aut_at.assign(n, -1);
  root.aut_at[0] = static_cast<int>(hol.aut_of(hol.identity()));

  std::vector<std::vector<int>> found;
  if (n == 1) {
    found.push_back(root.aut_at);
  } else {
    const auto& first = hol.admissible(1);
    std::vector<std::vector<std::vector<int>>> per_choice(first.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t k; (k = cursor.fetch_add(1)) < first.size();) {
        detail::RegularSearchState next;
        if (detail::extend_closure(hol, root, hol.encode(1, first[k]), next)) {
          detail::search_regular(hol, next, per_choice[k]);
        }
      }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, first.size()));
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    for (auto& part : per_choice) {
      for (auto& r : part) found.push_back(std::move(r));
    }
  }

  std::vector<SkewBrace> out;
  out.reserve(found.size());
  const std::vector<Elem> dot(M.table().begin(), M.table().end());
  for (const auto& aut_at : found) {
    std::vector<Elem> circle(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      const GroupHom& phi = hol.aut(static_cast<std::uint32_t>(aut_at[x]));
      for (std::size_t y = 0; y < n; ++y) circle[x * n + y] = M.mul(static_cast<Elem>(x), phi(static_cast<Elem>(y)));
    }
    out.emplace_back(n, dot, std::move(circle), "hol(" + M.label() + ")");
  }
  return out;
}

/// All regular G-stable subgroups of Perm(G) in canonical order. For each
/// isomorphism type M of order |G|, each regular subgroup of Hol(M) that is
/// isomorphic to G yields a brace, hence one subgroup of Perm(G), whose
/// Aut(G)-conjugates complete its brace class.
inline std::vector<PermSubgroup> enumerate_regular_gstable(const GroupPtr& G,
                                                           const EnumerateOptions& options = {}) {
  static const GroupCatalog builtin;
  const GroupCatalog& catalog = options.catalog ? *options.catalog : builtin;
  const auto types = catalog.groups_of_order(G->order());
  const auto auts = automorphism_group(*G);

  std::set<PermSubgroup> result;
  for (const auto& type : types) {
    for (const SkewBrace& B : holomorph_regular_braces(*type.group, options.jobs)) {
      auto ident = find_isomorphism(B.circle_group(), *G);
      if (!ident) continue;
      PermSubgroup N = subgroup_from_brace(B, *ident, G);
      if (result.count(N)) continue;
      for (const GroupHom& phi : auts) result.insert(conjugate_subgroup(N, phi.as_perm()));
    }
  }
  return {result.begin(), result.end()};
}

}  // namespace braceforge
