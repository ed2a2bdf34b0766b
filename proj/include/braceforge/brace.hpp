#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "subgroup.hpp"

namespace braceforge {

/// A skew left brace on {0..n-1}: a dot group and a circle group sharing the
/// identity 0 and satisfying x o (y z) = (x o y) x^-1 (x o z).
class SkewBrace {
 public:
  /// Assumes both tables are groups with identity 0 and the brace relation
  /// holds; see check_brace_axioms() for validated construction.
  SkewBrace(std::size_t n, std::vector<Elem> dot, std::vector<Elem> circle, std::string label)
      : dot_(n, std::move(dot), label + "/dot"),
        circle_(n, std::move(circle), label + "/circle"),
        label_(std::move(label)) {}

  std::size_t order() const noexcept { return dot_.order(); }
  Elem dot(Elem x, Elem y) const noexcept { return dot_.mul(x, y); }
  Elem circle(Elem x, Elem y) const noexcept { return circle_.mul(x, y); }
  Elem dot_inv(Elem x) const noexcept { return dot_.inv(x); }
  Elem circle_inv(Elem x) const noexcept { return circle_.inv(x); }
  const FiniteGroup& dot_group() const noexcept { return dot_; }
  const FiniteGroup& circle_group() const noexcept { return circle_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  friend bool operator==(const SkewBrace& a, const SkewBrace& b) {
    return a.dot_ == b.dot_ && a.circle_ == b.circle_;
  }

 private:
  FiniteGroup dot_;
  FiniteGroup circle_;
  std::string label_;
};

/// Bijection between two braces known from context, preserving both
/// operations.
struct BraceIso {
  std::vector<Elem> images;
  Elem operator()(Elem x) const noexcept { return images[x]; }
  friend bool operator==(const BraceIso&, const BraceIso&) = default;
};

/// First triple (x, y, z) violating the brace relation, if any.
inline std::optional<std::array<Elem, 3>> brace_relation_witness(const SkewBrace& B) {
  const auto n = static_cast<Elem>(B.order());
  for (Elem x = 0; x < n; ++x) {
    const Elem xi = B.dot_inv(x);
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = B.circle(x, y);
      for (Elem z = 0; z < n; ++z) {
        if (B.circle(x, B.dot(y, z)) != B.dot(B.dot(xy, xi), B.circle(x, z))) {
          return std::array<Elem, 3>{x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

/// Validates both tables and the brace relation on every triple.
inline SkewBrace check_brace_axioms(const std::vector<std::vector<long long>>& dot,
                                    const std::vector<std::vector<long long>>& circle,
                                    std::string label = "brace") {
  if (dot.size() != circle.size()) throw Error(ErrorCode::BadInput, "tables differ in order");
  FiniteGroup d, c;
  try {
    d = group_from_table(dot);
  } catch (const Error& e) {
    throw Error(ErrorCode::DotNotGroup, e.what());
  }
  try {
    c = group_from_table(circle);
  } catch (const Error& e) {
    throw Error(ErrorCode::CircleNotGroup, e.what());
  }
  const std::size_t n = dot.size();
  auto identity_of = [n](const std::vector<std::vector<long long>>& t) {
    for (std::size_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = t[e][x] == static_cast<long long>(x);
      if (ok) return e;
    }
    return n;
  };
  const std::size_t e = identity_of(dot);
  if (identity_of(circle) != e) {
    throw Error(ErrorCode::IdentityMismatch, "dot identity " + std::to_string(e) +
                                                 " differs from circle identity " +
                                                 std::to_string(identity_of(circle)));
  }
  // group_from_table swapped e with 0 in both tables alike.
  SkewBrace B(n, std::vector<Elem>(d.table().begin(), d.table().end()),
              std::vector<Elem>(c.table().begin(), c.table().end()), std::move(label));
  if (auto w = brace_relation_witness(B)) {
    auto orig = [e](Elem x) -> std::size_t { return x == 0 ? e : (x == e ? 0 : x); };
    throw Error(ErrorCode::BraceRelationFails, "(" + std::to_string(orig((*w)[0])) + "," +
                                                   std::to_string(orig((*w)[1])) + "," +
                                                   std::to_string(orig((*w)[2])) + ")");
  }
  return B;
}

inline SkewBrace trivial_brace(const FiniteGroup& G) {
  std::vector<Elem> t(G.table().begin(), G.table().end());
  return SkewBrace(G.order(), t, t, "trivial(" + G.label() + ")");
}

inline SkewBrace almost_trivial_brace(const FiniteGroup& G) {
  const std::size_t n = G.order();
  std::vector<Elem> dot(G.table().begin(), G.table().end()), circle(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) circle[x * n + y] = dot[y * n + x];
  }
  return SkewBrace(n, std::move(dot), std::move(circle), "almost_trivial(" + G.label() + ")");
}

/// The brace of a regular G-stable N. The carrier is N's canonical order,
/// in which element i is the unique eta with eta[1_G] = i, so the bijection
/// a(eta) = eta[1_G] is the identity on indices: dot is composition in N and
/// circle is the table of G.
inline SkewBrace brace_from_subgroup(const PermSubgroup& N, std::string label = "") {
  if (!N.regular()) throw Error(ErrorCode::NotRegular, "brace_from_subgroup");
  if (!N.g_stable()) throw Error(ErrorCode::NotGStable, "brace_from_subgroup");
  const std::size_t n = N.size();
  std::vector<Elem> dot(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dot[i * n + j] = N[i][j];
  }
  const auto& G = N.group();
  return SkewBrace(n, std::move(dot), std::vector<Elem>(G.table().begin(), G.table().end()),
                   label.empty() ? "brace(" + G.label() + ")" : std::move(label));
}

/// {y -> x . y} transported to Perm(G) along `ident` : (B, o) -> G.
inline PermSubgroup subgroup_from_brace(const SkewBrace& B, const GroupHom& ident,
                                        const GroupPtr& G) {
  if (ident.images.size() != B.order() || !is_bijective(ident, G->order()) ||
      !is_homomorphism(B.circle_group(), *G, ident)) {
    throw Error(ErrorCode::IdentNotIsomorphism, "ident is not an isomorphism (B,o) -> G");
  }
  const std::size_t n = B.order();
  const GroupHom back = inverse(ident);
  std::vector<Perm> elems;
  elems.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Elem> img(n);
    for (std::size_t g = 0; g < n; ++g) img[g] = ident(B.dot(static_cast<Elem>(x), back(static_cast<Elem>(g))));
    elems.push_back(Perm::trusted(std::move(img)));
  }
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(G, std::move(elems));
}

/// (B, .', o) with x .' y = y . x.
inline SkewBrace opposite_brace(const SkewBrace& B) {
  const std::size_t n = B.order();
  std::vector<Elem> dot(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) dot[x * n + y] = B.dot(static_cast<Elem>(y), static_cast<Elem>(x));
  }
  auto circle = B.circle_group().table();
  return SkewBrace(n, std::move(dot), std::vector<Elem>(circle.begin(), circle.end()),
                   "opposite(" + B.label() + ")");
}

/// (B, ., o') with x o' y = (x^-1 o y^-1)^-1, isomorphic to opposite_brace(B)
/// via opposite_connecting_iso().
inline SkewBrace opposite_brace_alternate(const SkewBrace& B) {
  const std::size_t n = B.order();
  std::vector<Elem> circle(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      circle[x * n + y] =
          B.dot_inv(B.circle(B.dot_inv(static_cast<Elem>(x)), B.dot_inv(static_cast<Elem>(y))));
    }
  }
  auto dot = B.dot_group().table();
  return SkewBrace(n, std::vector<Elem>(dot.begin(), dot.end()), std::move(circle),
                   "opposite'(" + B.label() + ")");
}

/// mu(x) = x^-1, from opposite_brace(B) to opposite_brace_alternate(B).
inline BraceIso opposite_connecting_iso(const SkewBrace& B) {
  BraceIso mu{std::vector<Elem>(B.order())};
  for (std::size_t x = 0; x < B.order(); ++x) mu.images[x] = B.dot_inv(static_cast<Elem>(x));
  return mu;
}

inline bool is_brace_isomorphism(const SkewBrace& A, const SkewBrace& B, const BraceIso& f) {
  if (f.images.size() != A.order() || A.order() != B.order()) return false;
  if (!is_bijective(GroupHom{f.images}, B.order())) return false;
  for (std::size_t x = 0; x < A.order(); ++x) {
    for (std::size_t y = 0; y < A.order(); ++y) {
      const Elem ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
      if (f(A.dot(ex, ey)) != B.dot(f(ex), f(ey))) return false;
      if (f(A.circle(ex, ey)) != B.circle(f(ex), f(ey))) return false;
    }
  }
  return true;
}

namespace detail {

inline bool preserves_dot(const SkewBrace& A, const SkewBrace& B, const GroupHom& f) {
  const auto& gens = A.dot_group().generators();
  // f is a circle isomorphism; it preserves dot iff f(x . g) = f(x) . f(g)
  // for all x and every dot generator g.
  for (std::size_t x = 0; x < A.order(); ++x) {
    for (Elem g : gens) {
      if (f(A.dot(static_cast<Elem>(x), g)) != B.dot(f(static_cast<Elem>(x)), f(g))) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Searches circle-group isomorphisms for one that also preserves dot.
inline std::optional<BraceIso> braces_isomorphic(const SkewBrace& A, const SkewBrace& B) {
  std::optional<BraceIso> found;
  if (A.order() != B.order()) return found;
  if (order_profile(A.dot_group()) != order_profile(B.dot_group())) return found;
  if (order_profile(A.circle_group()) != order_profile(B.circle_group())) return found;
  for_each_homomorphism(A.circle_group(), B.circle_group(), HomKind::Injective,
                        [&](const GroupHom& f) {
                          if (!detail::preserves_dot(A, B, f)) return true;
                          found = BraceIso{f.images};
                          return false;
                        });
  return found;
}

/// Aut_Br(B): automorphisms of the circle group that preserve dot.
inline std::vector<BraceIso> brace_automorphisms(const SkewBrace& B) {
  std::vector<BraceIso> out;
  for_each_homomorphism(B.circle_group(), B.circle_group(), HomKind::Injective,
                        [&](const GroupHom& f) {
                          if (detail::preserves_dot(B, B, f)) out.push_back(BraceIso{f.images});
                          return true;
                        });
  return out;
}

/// (B, ._phi, o) with x ._phi y = phi^-1(phi(x) . phi(y)).
inline SkewBrace conjugated_brace(const SkewBrace& B, const GroupHom& phi) {
  if (!is_bijective(phi, B.order()) || !is_homomorphism(B.circle_group(), B.circle_group(), phi)) {
    throw Error(ErrorCode::PhiNotCircleAutomorphism, "phi is not an automorphism of (B,o)");
  }
  const std::size_t n = B.order();
  const GroupHom back = inverse(phi);
  std::vector<Elem> dot(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      dot[x * n + y] = back(B.dot(phi(static_cast<Elem>(x)), phi(static_cast<Elem>(y))));
    }
  }
  auto circle = B.circle_group().table();
  return SkewBrace(n, std::move(dot), std::vector<Elem>(circle.begin(), circle.end()),
                   B.label() + "^phi");
}

}  // namespace braceforge
