#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "finite_group.hpp"
#include "perm.hpp"

namespace braceforge {

/// A homomorphism between two groups known from context, stored as the image
/// of every source element.
struct GroupHom {
  std::vector<Elem> images;

  Elem operator()(Elem x) const noexcept { return images[x]; }
  std::size_t source_order() const noexcept { return images.size(); }

  /// Only meaningful for endomorphisms that are bijective.
  Perm as_perm() const { return Perm::trusted(images); }

  friend bool operator==(const GroupHom&, const GroupHom&) = default;
  friend auto operator<=>(const GroupHom&, const GroupHom&) = default;
};

inline GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  GroupHom h{std::vector<Elem>(inner.images.size())};
  for (std::size_t x = 0; x < inner.images.size(); ++x) h.images[x] = outer(inner(x));
  return h;
}

inline GroupHom inverse(const GroupHom& bijection) {
  GroupHom h{std::vector<Elem>(bijection.images.size())};
  for (std::size_t x = 0; x < bijection.images.size(); ++x) {
    h.images[bijection.images[x]] = static_cast<Elem>(x);
  }
  return h;
}

inline bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const GroupHom& f) {
  if (f.images.size() != src.order()) return false;
  for (std::size_t a = 0; a < src.order(); ++a) {
    for (std::size_t b = 0; b < src.order(); ++b) {
      if (f(src.mul(static_cast<Elem>(a), static_cast<Elem>(b))) !=
          dst.mul(f(static_cast<Elem>(a)), f(static_cast<Elem>(b)))) {
        return false;
      }
    }
  }
  return true;
}

inline bool is_bijective(const GroupHom& f, std::size_t target_order) {
  if (f.images.size() != target_order) return false;
  std::vector<bool> seen(target_order, false);
  for (Elem y : f.images) {
    if (y >= target_order || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

/// Requires f(on_source[x]) == on_target[f(x)] for every x: the searched map
/// intertwines two given self-maps.
struct Equivariance {
  std::vector<Elem> on_source;
  std::vector<Elem> on_target;
};

enum class HomKind { Any, Injective };

namespace detail {

class HomSearch {
 public:
  HomSearch(const FiniteGroup& src, const FiniteGroup& dst, HomKind kind,
            std::span<const Equivariance> constraints)
      : src_(src), dst_(dst), kind_(kind), constraints_(constraints) {}

  template <class Visit>
  bool run(std::span<const std::pair<Elem, Elem>> fixed, Visit& visit) {
    State s;
    s.map.assign(src_.order(), -1);
    s.used.assign(dst_.order(), false);
    std::vector<Elem> queue;
    if (!assign(s, 0, 0, queue)) return false;
    for (auto [x, y] : fixed) {
      if (x >= src_.order() || y >= dst_.order() || !assign(s, x, y, queue)) return false;
    }
    if (!propagate(s, queue)) return false;
    return recurse(s, visit);
  }

 private:
  struct State {
    std::vector<int> map;
    std::vector<bool> used;
  };

  bool assign(State& s, Elem x, Elem y, std::vector<Elem>& queue) const {
    if (s.map[x] == -1) {
      if (kind_ == HomKind::Injective && s.used[y]) return false;
      s.map[x] = y;
      s.used[y] = true;
      queue.push_back(x);
      return true;
    }
    return s.map[x] == y;
  }

  bool propagate(State& s, std::vector<Elem>& queue) const {
    const auto& gens = src_.generators();
    while (!queue.empty()) {
      Elem x = queue.back();
      queue.pop_back();
      // A newly mapped generator creates products with everything known.
      if (std::find(gens.begin(), gens.end(), x) != gens.end()) {
        for (std::size_t z = 0; z < src_.order(); ++z) {
          if (s.map[z] == -1 || z == x) continue;
          Elem y = src_.mul(static_cast<Elem>(z), x);
          Elem fy = dst_.mul(static_cast<Elem>(s.map[z]), static_cast<Elem>(s.map[x]));
          if (!assign(s, y, fy, queue)) return false;
        }
      }
      const Elem fx = static_cast<Elem>(s.map[x]);
      for (Elem g : gens) {
        if (s.map[g] == -1) continue;
        if (!assign(s, src_.mul(x, g), dst_.mul(fx, static_cast<Elem>(s.map[g])), queue)) {
          return false;
        }
      }
      for (const Equivariance& c : constraints_) {
        if (!assign(s, c.on_source[x], c.on_target[fx], queue)) return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool recurse(const State& s, Visit& visit) {
    const auto& gens = src_.generators();
    auto next = std::find_if(gens.begin(), gens.end(), [&](Elem g) { return s.map[g] == -1; });
    if (next == gens.end()) {
      GroupHom h{std::vector<Elem>(src_.order())};
      for (std::size_t x = 0; x < src_.order(); ++x) h.images[x] = static_cast<Elem>(s.map[x]);
      return !visit(std::as_const(h));
    }
    const Elem g = *next;
    const std::size_t og = src_.element_order(g);
    for (std::size_t c = 0; c < dst_.order(); ++c) {
      const std::size_t oc = dst_.element_order(static_cast<Elem>(c));
      if (kind_ == HomKind::Injective ? (oc != og || s.used[c]) : (og % oc != 0)) continue;
      State t = s;
      std::vector<Elem> queue;
      if (!assign(t, g, static_cast<Elem>(c), queue) || !propagate(t, queue)) continue;
      if (recurse(t, visit)) return true;
    }
    return false;
  }

  const FiniteGroup& src_;
  const FiniteGroup& dst_;
  HomKind kind_;
  std::span<const Equivariance> constraints_;
};

}  // namespace detail

/// Backtracks over images of src's greedy generating sequence, propagating
/// each partial assignment through the multiplication table (and through any
/// equivariance constraints) so inconsistent branches die early. `visit`
/// receives each complete homomorphism and returns false to stop the search.
/// Returns true if the search was stopped by the visitor.
template <class Visit>
bool for_each_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, HomKind kind,
                           Visit&& visit, std::span<const Equivariance> constraints = {},
                           std::span<const std::pair<Elem, Elem>> fixed = {}) {
  detail::HomSearch search(src, dst, kind, constraints);
  return search.run(fixed, visit);
}

/// Sorted multiset of element orders; equal for isomorphic groups.
inline std::vector<std::size_t> order_profile(const FiniteGroup& g) {
  std::vector<std::size_t> p(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) p[x] = g.element_order(static_cast<Elem>(x));
  std::sort(p.begin(), p.end());
  return p;
}

inline std::vector<GroupHom> isomorphisms_between(const FiniteGroup& a, const FiniteGroup& b,
                                                  std::span<const Equivariance> constraints = {}) {
  std::vector<GroupHom> out;
  if (a.order() != b.order() || order_profile(a) != order_profile(b)) return out;
  for_each_homomorphism(a, b, HomKind::Injective, [&](const GroupHom& h) {
    out.push_back(h);
    return true;
  }, constraints);
  return out;
}

inline std::optional<GroupHom> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                std::span<const Equivariance> constraints = {}) {
  std::optional<GroupHom> found;
  if (a.order() != b.order() || order_profile(a) != order_profile(b)) return found;
  for_each_homomorphism(a, b, HomKind::Injective, [&](const GroupHom& h) {
    found = h;
    return false;
  }, constraints);
  return found;
}

inline bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  return find_isomorphism(a, b).has_value();
}

/// All automorphisms of G, in search order (lexicographic in the images of
/// the greedy generators).
inline std::vector<GroupHom> automorphism_group(const FiniteGroup& G) {
  return isomorphisms_between(G, G);
}

inline std::vector<GroupHom> endomorphisms(const FiniteGroup& G) {
  std::vector<GroupHom> out;
  for_each_homomorphism(G, G, HomKind::Any, [&](const GroupHom& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

/// gamma_s : x -> s x s^-1.
inline GroupHom inner_automorphism(const FiniteGroup& G, Elem s) {
  GroupHom h{std::vector<Elem>(G.order())};
  for (std::size_t x = 0; x < G.order(); ++x) h.images[x] = G.conj(s, static_cast<Elem>(x));
  return h;
}

inline GroupHom identity_hom(std::size_t n) {
  GroupHom h{std::vector<Elem>(n)};
  for (std::size_t x = 0; x < n; ++x) h.images[x] = static_cast<Elem>(x);
  return h;
}

/// |Inn(G)| = |G / Z(G)|.
inline std::size_t inner_automorphism_count(const FiniteGroup& G) {
  return G.order() / G.center().size();
}

}  // namespace braceforge
