#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "perm.hpp"

namespace braceforge {

/// A subgroup of Perm(G), stored as its canonically sorted element list.
/// Holds a shared reference to G so that G-stability and the regular
/// representations are always available.
class PermSubgroup {
 public:
  /// Validates that `elements` is a subgroup of Perm(G).
  static PermSubgroup from_elements(GroupPtr base, std::vector<Perm> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (const Perm& p : elements) {
      if (p.degree() != base->order()) {
        throw Error(ErrorCode::BadInput, "permutation degree does not match the base group");
      }
    }
    if (elements.empty() || !elements.front().is_identity()) {
      throw Error(ErrorCode::BadInput, "element list lacks the identity");
    }
    PermSubgroup N(std::move(base), std::move(elements));
    for (const Perm& a : N.elements_) {
      if (!N.contains(a.inverse())) throw Error(ErrorCode::BadInput, "not closed under inverse");
      for (const Perm& b : N.generators_) {
        if (!N.contains(a * b)) throw Error(ErrorCode::BadInput, "not closed under composition");
      }
    }
    return N;
  }

  /// `elements` must already be sorted, duplicate-free and closed.
  static PermSubgroup trusted(GroupPtr base, std::vector<Perm> elements) {
    return PermSubgroup(std::move(base), std::move(elements));
  }

  const GroupPtr& base() const noexcept { return base_; }
  const FiniteGroup& group() const noexcept { return *base_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const Perm> elements() const noexcept { return elements_; }
  const Perm& operator[](std::size_t i) const noexcept { return elements_[i]; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }

  std::optional<std::size_t> index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }
  bool contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

  bool regular() const noexcept { return regular_; }
  bool g_stable() const noexcept { return g_stable_; }

  bool same_base(const PermSubgroup& other) const {
    return base_ == other.base_ || *base_ == *other.base_;
  }

  friend bool operator==(const PermSubgroup& a, const PermSubgroup& b) {
    return a.elements_ == b.elements_ && a.same_base(b);
  }
  friend auto operator<=>(const PermSubgroup& a, const PermSubgroup& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  PermSubgroup(GroupPtr base, std::vector<Perm> elements)
      : base_(std::move(base)), elements_(std::move(elements)) {
    compute_generators();
    regular_ = compute_regular();
    g_stable_ = compute_g_stable();
  }

  void compute_generators() {
    std::vector<bool> in(elements_.size(), false);
    std::vector<std::size_t> members;
    in[0] = true;
    members.push_back(0);
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      if (in[i]) continue;
      generators_.push_back(elements_[i]);
      for (std::size_t k = 0; k < members.size(); ++k) {
        for (const Perm& g : generators_) {
          auto j = index_of(elements_[members[k]] * g);
          if (j && !in[*j]) {
            in[*j] = true;
            members.push_back(*j);
          }
        }
      }
    }
  }

  bool compute_regular() const {
    const std::size_t n = base_->order();
    if (elements_.size() != n) return false;
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      if (elements_[i].has_fixed_point()) return false;
    }
    // Fixed-point-free of order n forces transitivity.
    std::vector<bool> hit(n, false);
    for (const Perm& p : elements_) hit[p[0]] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      throw std::logic_error("semiregular subgroup of order n failed to be transitive");
    }
    return true;
  }

  bool compute_g_stable() const {
    for (Elem g : base_->generators()) {
      for (const Perm& eta : generators_) {
        if (!contains(conj_by_group(*base_, g, eta))) return false;
      }
    }
    return true;
  }

  GroupPtr base_;
  std::vector<Perm> elements_;
  std::vector<Perm> generators_;
  bool regular_ = false;
  bool g_stable_ = false;
};

/// |N| = |G| and every non-identity element moves every point.
inline bool is_regular(const PermSubgroup& N) {
  const std::size_t n = N.group().order();
  if (N.size() != n) return false;
  for (const Perm& p : N.elements()) {
    if (!p.is_identity() && p.has_fixed_point()) return false;
  }
  return true;
}

/// ^g eta in N for all g in G and eta in N, checked on generators.
inline bool is_g_stable(const PermSubgroup& N) {
  for (Elem g : N.group().generators()) {
    for (const Perm& eta : N.generators()) {
      if (!N.contains(conj_by_group(N.group(), g, eta))) return false;
    }
  }
  return true;
}

/// Smallest subgroup of Perm(G) containing `generators`. Throws
/// SizeLimitExceeded past `limit`, which defaults to |G|^2 |Aut(G)|.
inline PermSubgroup closure(const GroupPtr& G, std::span<const Perm> generators,
                            std::optional<std::size_t> limit = std::nullopt) {
  const std::size_t n = G->order();
  for (const Perm& g : generators) {
    if (g.degree() != n) throw Error(ErrorCode::BadInput, "generator degree does not match |G|");
  }
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> members{Perm::identity(n)};
  seen.insert(members.front());
  std::size_t bound = limit.value_or(n * n);
  bool bound_is_provisional = !limit.has_value();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const Perm& g : generators) {
      Perm y = members[i] * g;
      if (seen.insert(y).second) {
        members.push_back(std::move(y));
        if (members.size() > bound) {
          if (bound_is_provisional) {
            bound = n * n * automorphism_group(*G).size();
            bound_is_provisional = false;
          }
          if (members.size() > bound) {
            throw Error(ErrorCode::SizeLimitExceeded,
                        "closure exceeds " + std::to_string(bound) + " elements");
          }
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return PermSubgroup::trusted(G, std::move(members));
}

inline PermSubgroup closure(const GroupPtr& G, std::initializer_list<Perm> generators) {
  return closure(G, std::span<const Perm>(generators.begin(), generators.size()));
}

inline PermSubgroup lambda_subgroup(const GroupPtr& G) {
  std::vector<Perm> elems;
  for (std::size_t g = 0; g < G->order(); ++g) elems.push_back(lambda_of(*G, static_cast<Elem>(g)));
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(G, std::move(elems));
}

inline PermSubgroup rho_subgroup(const GroupPtr& G) {
  std::vector<Perm> elems;
  for (std::size_t g = 0; g < G->order(); ++g) elems.push_back(rho_of(*G, static_cast<Elem>(g)));
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(G, std::move(elems));
}

/// phi^-1 N phi for a permutation phi of the points of G.
inline PermSubgroup conjugate_subgroup(const PermSubgroup& N, const Perm& phi) {
  const Perm phi_inv = phi.inverse();
  std::vector<Perm> elems;
  elems.reserve(N.size());
  for (const Perm& eta : N.elements()) elems.push_back(phi_inv * eta * phi);
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(N.base(), std::move(elems));
}

/// phi^-1 N phi is contained in M (equal when |N| = |M|), checked on N's
/// generators only.
inline bool conjugate_lies_in(const PermSubgroup& N, const Perm& phi, const PermSubgroup& M) {
  const Perm phi_inv = phi.inverse();
  for (const Perm& eta : N.generators()) {
    if (!M.contains(phi_inv * eta * phi)) return false;
  }
  return true;
}

inline PermSubgroup intersection(const PermSubgroup& A, const PermSubgroup& B) {
  std::vector<Perm> elems;
  std::set_intersection(A.elements().begin(), A.elements().end(), B.elements().begin(),
                        B.elements().end(), std::back_inserter(elems));
  return PermSubgroup::trusted(A.base(), std::move(elems));
}

/// N as an abstract group, element i being the i-th canonical element.
inline FiniteGroup abstract_group(const PermSubgroup& N, std::string label = "subgroup") {
  const std::size_t m = N.size();
  if (m > kMaxOrder) throw Error(ErrorCode::BadInput, "subgroup too large to tabulate");
  std::vector<Elem> table(m * m);
  if (N.regular()) {
    // Canonical order of a regular subgroup is by image of 0, so the index of
    // a product can be read off without searching.
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) table[i * m + j] = N[i][N[j][0]];
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) table[i * m + j] = static_cast<Elem>(*N.index_of(N[i] * N[j]));
    }
  }
  return FiniteGroup(m, std::move(table), std::move(label));
}

/// Centralizer of a regular N in Perm(G). For regular N every centralizing
/// permutation is determined by its image of 0, which yields exactly |G|
/// candidates; each is checked against N's generators.
inline PermSubgroup opposite_subgroup(const PermSubgroup& N) {
  if (!N.regular()) throw Error(ErrorCode::NotRegular, "opposite needs a regular subgroup");
  const std::size_t n = N.group().order();
  // N is sorted by image of 0, so N[x] is the element sending 0 to x.
  std::vector<Perm> elems;
  elems.reserve(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<Elem> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = N[x][y];
    Perm cand = Perm::trusted(std::move(img));
    for (const Perm& eta : N.generators()) {
      if (cand * eta != eta * cand) throw std::logic_error("centralizer candidate failed to commute");
    }
    elems.push_back(std::move(cand));
  }
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(N.base(), std::move(elems));
}

/// Hol(M) = lambda(M) Aut(M) inside Perm(M).
inline PermSubgroup holomorph(const GroupPtr& M) {
  std::vector<Perm> elems;
  const auto auts = automorphism_group(*M);
  elems.reserve(M->order() * auts.size());
  for (std::size_t m = 0; m < M->order(); ++m) {
    Perm l = lambda_of(*M, static_cast<Elem>(m));
    for (const GroupHom& phi : auts) elems.push_back(l * phi.as_perm());
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return PermSubgroup::trusted(M, std::move(elems));
}

}  // namespace braceforge
