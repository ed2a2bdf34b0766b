#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "brace.hpp"
#include "catalog.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "laws.hpp"
#include "subgroup.hpp"
#include "union_find.hpp"

namespace braceforge {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

namespace detail {

inline void require_same_base(const PermSubgroup& a, const PermSubgroup& b) {
  if (!a.same_base(b)) {
    throw Error(ErrorCode::BaseGroupMismatch,
                "subgroups of Perm(" + a.group().label() + ") and Perm(" + b.group().label() + ")");
  }
}

inline std::size_t element_index(const PermSubgroup& N, const Perm& p) {
  if (N.regular()) return p[0];
  auto i = N.index_of(p);
  return i ? *i : kNoIndex;
}

// i -> index of ^g N[i].
inline std::vector<Elem> g_action(const PermSubgroup& N, Elem g) {
  std::vector<Elem> out(N.size());
  for (std::size_t i = 0; i < N.size(); ++i) {
    out[i] = static_cast<Elem>(element_index(N, conj_by_group(N.group(), g, N[i])));
  }
  return out;
}

inline std::vector<Equivariance> g_equivariance(const PermSubgroup& A, const PermSubgroup& B) {
  std::vector<Equivariance> out;
  for (Elem g : A.group().generators()) out.push_back({g_action(A, g), g_action(B, g)});
  return out;
}

}  // namespace detail

/// Some phi in Aut(G) with N2 = phi^-1 N1 phi.
inline std::optional<GroupHom> brace_equivalent(const PermSubgroup& N1, const PermSubgroup& N2,
                                                std::span<const GroupHom> auts) {
  detail::require_same_base(N1, N2);
  if (N1.size() != N2.size()) return std::nullopt;
  for (const GroupHom& phi : auts) {
    if (conjugate_lies_in(N1, phi.as_perm(), N2)) return phi;
  }
  return std::nullopt;
}

inline std::optional<GroupHom> brace_equivalent(const PermSubgroup& N1, const PermSubgroup& N2) {
  return brace_equivalent(N1, N2, automorphism_group(N1.group()));
}

inline PermSubgroup lambda_points(const PermSubgroup& N) { return intersection(N, lambda_subgroup(N.base())); }
inline PermSubgroup rho_points(const PermSubgroup& N) { return intersection(N, rho_subgroup(N.base())); }

/// theta maps element i of N1 to element theta(i) of N2 (canonical indices).
inline bool is_g_isomorphism(const PermSubgroup& N1, const PermSubgroup& N2, const GroupHom& theta) {
  detail::require_same_base(N1, N2);
  if (N1.size() != N2.size() || !is_bijective(theta, N2.size())) return false;
  if (!is_homomorphism(abstract_group(N1), abstract_group(N2), theta)) return false;
  for (const Equivariance& c : detail::g_equivariance(N1, N2)) {
    for (std::size_t i = 0; i < N1.size(); ++i) {
      if (theta(c.on_source[i]) != c.on_target[theta(static_cast<Elem>(i))]) return false;
    }
  }
  return true;
}

/// An isomorphism N1 -> N2 commuting with the action of G, extending the
/// given element pairs when supplied.
inline std::optional<GroupHom> g_isomorphic(const PermSubgroup& N1, const PermSubgroup& N2,
                                            std::span<const std::pair<Perm, Perm>> prescribed = {}) {
  detail::require_same_base(N1, N2);
  std::optional<GroupHom> found;
  if (N1.size() != N2.size()) return found;
  const FiniteGroup A = abstract_group(N1), B = abstract_group(N2);
  if (order_profile(A) != order_profile(B)) return found;
  std::vector<std::pair<Elem, Elem>> fixed;
  for (const auto& [a, b] : prescribed) {
    const std::size_t i = detail::element_index(N1, a), j = detail::element_index(N2, b);
    if (i == kNoIndex || j == kNoIndex || !N1.contains(a) || !N2.contains(b)) return found;
    fixed.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
  }
  const auto constraints = detail::g_equivariance(N1, N2);
  for_each_homomorphism(A, B, HomKind::Injective, [&](const GroupHom& h) {
    found = h;
    return false;
  }, constraints, fixed);
  return found;
}

/// Some sigma with N2 = rho(sigma) N1 rho(sigma)^-1.
inline std::optional<Elem> rho_conjugate(const PermSubgroup& N1, const PermSubgroup& N2) {
  detail::require_same_base(N1, N2);
  if (N1.size() != N2.size()) return std::nullopt;
  const FiniteGroup& G = N1.group();
  for (std::size_t s = 0; s < G.order(); ++s) {
    if (conjugate_lies_in(N1, rho_of(G, G.inv(static_cast<Elem>(s))), N2)) return static_cast<Elem>(s);
  }
  return std::nullopt;
}

struct SubgroupInvariants {
  std::string type;         // isomorphism type of N
  std::size_t lambda_points = 0;
  std::size_t rho_points = 0;
  std::string lambda_type;  // isomorphism type of N meet lambda(G)
  std::string rho_type;     // isomorphism type of N meet rho(G)
  std::size_t opposite = kNoIndex;
};

struct BraceClassInfo {
  std::vector<std::size_t> members;
  std::size_t aut_br_order = 0;
  std::size_t predicted_size = 0;  // |Aut(G)| / |Aut_Br|
  std::size_t opposite_class = kNoIndex;
};

struct ClassificationReport {
  GroupPtr group;
  std::string group_type;
  std::size_t aut_order = 0;
  std::size_t inner_aut_order = 0;
  std::vector<PermSubgroup> subgroups;
  std::vector<std::string> labels;
  std::vector<SubgroupInvariants> invariants;
  std::vector<std::vector<std::size_t>> brace_classes;
  std::vector<std::vector<std::size_t>> giso_classes;
  std::vector<std::vector<std::size_t>> rho_classes;
  std::vector<std::size_t> brace_class_of;
  std::vector<std::size_t> giso_class_of;
  std::vector<std::size_t> rho_class_of;
  std::vector<BraceClassInfo> brace_info;
  // brace_witness[i]: phi with N_i = phi^-1 N_rep phi; giso_witness[i]: a
  // G-isomorphism from the representative of i's G-iso class onto N_i.
  std::vector<GroupHom> brace_witness;
  std::vector<GroupHom> giso_witness;
  std::vector<LawVerdict> laws;

  std::optional<std::size_t> index_of(const PermSubgroup& N) const {
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), N);
    if (it == subgroups.end() || !(*it == N)) return std::nullopt;
    return static_cast<std::size_t>(it - subgroups.begin());
  }
};

namespace detail {

inline std::size_t find_subgroup(const std::vector<PermSubgroup>& list, const PermSubgroup& N) {
  auto it = std::lower_bound(list.begin(), list.end(), N);
  if (it == list.end() || (*it <=> N) != 0) return kNoIndex;
  return static_cast<std::size_t>(it - list.begin());
}

// Actions of Aut(G), of rho(G) by conjugation, and of the opposite map on
// the (sorted) subgroup list; kNoIndex marks an image outside the list.
struct ReportContext {
  std::vector<GroupHom> auts;
  std::vector<std::vector<std::size_t>> aut_action;
  std::vector<std::vector<std::size_t>> rho_action;
  std::vector<std::size_t> opposite;
};

inline ReportContext make_context(const FiniteGroup& G, const std::vector<PermSubgroup>& list) {
  ReportContext ctx;
  ctx.auts = automorphism_group(G);
  for (const GroupHom& phi : ctx.auts) {
    const Perm p = phi.as_perm();
    std::vector<std::size_t> row;
    for (const auto& N : list) row.push_back(find_subgroup(list, conjugate_subgroup(N, p)));
    ctx.aut_action.push_back(std::move(row));
  }
  for (std::size_t s = 0; s < G.order(); ++s) {
    const Perm r = rho_of(G, G.inv(static_cast<Elem>(s)));
    std::vector<std::size_t> row;
    for (const auto& N : list) row.push_back(find_subgroup(list, conjugate_subgroup(N, r)));
    ctx.rho_action.push_back(std::move(row));
  }
  for (const auto& N : list) ctx.opposite.push_back(find_subgroup(list, opposite_subgroup(N)));
  return ctx;
}

inline std::string idx(std::size_t i) { return "N" + std::to_string(i); }

}  // namespace detail

inline std::vector<LawVerdict> verify_partition_laws(const ClassificationReport& report);

namespace detail {

inline std::vector<LawVerdict> verify_partition_laws(const ClassificationReport& r, const ReportContext& ctx) {
  const FiniteGroup& G = *r.group;
  const std::size_t k = r.subgroups.size();
  std::vector<LawVerdict> laws;
  auto law = [&](std::string name) -> LawVerdict& {
    laws.emplace_back();
    laws.back().name = std::move(name);
    return laws.back();
  };

  {
    auto& l = law("partitions_cover_subgroups");
    for (const auto* part : {&r.brace_classes, &r.giso_classes, &r.rho_classes}) {
      std::vector<int> seen(k, 0);
      for (const auto& c : *part) {
        for (std::size_t i : c) ++seen[i];
      }
      for (std::size_t i = 0; i < k; ++i) l.check(seen[i] == 1, [&] { return idx(i) + " not covered once"; });
    }
  }
  {
    auto& l = law("subgroups_regular_and_g_stable");
    for (std::size_t i = 0; i < k; ++i) {
      l.check(r.subgroups[i].regular() && r.subgroups[i].g_stable(), [&] { return idx(i); });
    }
  }
  {
    auto& l = law("subgroup_set_closed_under_automorphisms");
    for (std::size_t a = 0; a < ctx.auts.size(); ++a) {
      for (std::size_t i = 0; i < k; ++i) {
        l.check(ctx.aut_action[a][i] != kNoIndex, [&] { return idx(i) + " under aut " + std::to_string(a); });
      }
    }
  }
  {
    auto& l = law("subgroup_set_closed_under_rho_conjugation");
    for (std::size_t s = 0; s < ctx.rho_action.size(); ++s) {
      for (std::size_t i = 0; i < k; ++i) {
        l.check(ctx.rho_action[s][i] != kNoIndex, [&] { return idx(i) + " under rho(" + std::to_string(s) + ")"; });
      }
    }
  }
  {
    auto& l = law("brace_class_size_formula");
    for (std::size_t c = 0; c < r.brace_info.size(); ++c) {
      const auto& info = r.brace_info[c];
      l.check(info.aut_br_order > 0 && info.members.size() * info.aut_br_order == r.aut_order, [&] {
        return "class " + std::to_string(c) + ": size " + std::to_string(info.members.size()) + ", |Aut_Br| " +
               std::to_string(info.aut_br_order) + ", |Aut(G)| " + std::to_string(r.aut_order);
      });
    }
  }
  {
    auto& l = law("g_iso_stable_under_automorphisms");
    for (const auto& c : r.giso_classes) {
      for (std::size_t m : c) {
        for (std::size_t a = 0; a < ctx.auts.size(); ++a) {
          const std::size_t x = ctx.aut_action[a][c.front()], y = ctx.aut_action[a][m];
          l.check(x != kNoIndex && y != kNoIndex && r.giso_class_of[x] == r.giso_class_of[y],
                  [&] { return idx(c.front()) + "," + idx(m) + " under aut " + std::to_string(a); });
        }
      }
    }
  }
  {
    auto& l = law("rho_conjugate_implies_g_isomorphic");
    for (const auto& c : r.rho_classes) {
      for (std::size_t m : c) {
        l.check(r.giso_class_of[m] == r.giso_class_of[c.front()], [&] { return idx(c.front()) + "," + idx(m); });
      }
    }
  }
  {
    auto& l = law("rho_conjugation_equals_inner_conjugation");
    for (std::size_t s = 0; s < G.order(); ++s) {
      const Elem e = static_cast<Elem>(s);
      const Perm gamma = inner_automorphism(G, e).as_perm();
      l.check(gamma == rho_of(G, e) * lambda_of(G, e), [&] { return "gamma_" + std::to_string(s); });
      for (std::size_t i = 0; i < k; ++i) {
        const auto& N = r.subgroups[i];
        l.check(conjugate_subgroup(N, rho_of(G, G.inv(e))) == conjugate_subgroup(N, gamma.inverse()),
                [&] { return idx(i) + " sigma=" + std::to_string(s); });
      }
    }
  }
  {
    auto& l = law("rho_conjugate_implies_brace_equivalent");
    for (const auto& c : r.rho_classes) {
      for (std::size_t m : c) {
        l.check(r.brace_class_of[m] == r.brace_class_of[c.front()], [&] { return idx(c.front()) + "," + idx(m); });
      }
    }
  }
  {
    auto& l = law("inner_only_brace_implies_g_iso");
    l.applicable = r.aut_order == r.inner_aut_order;
    if (l.applicable) {
      for (const auto& c : r.brace_classes) {
        for (std::size_t m : c) {
          l.check(r.giso_class_of[m] == r.giso_class_of[c.front()], [&] { return idx(c.front()) + "," + idx(m); });
        }
      }
    }
  }
  {
    auto& l = law("brace_equivalence_preserves_point_types");
    for (const auto& c : r.brace_classes) {
      const auto& base = r.subgroups[c.front()];
      const FiniteGroup L0 = abstract_group(lambda_points(base)), P0 = abstract_group(rho_points(base));
      for (std::size_t m : c) {
        const auto& N = r.subgroups[m];
        l.check(is_isomorphic(L0, abstract_group(lambda_points(N))) && is_isomorphic(P0, abstract_group(rho_points(N))),
                [&] { return idx(c.front()) + "," + idx(m); });
      }
    }
  }
  {
    auto& l = law("g_isomorphism_maps_rho_points");
    const PermSubgroup rho = rho_subgroup(r.group);
    for (const auto& c : r.giso_classes) {
      const auto& A = r.subgroups[c.front()];
      for (std::size_t m : c) {
        const auto& B = r.subgroups[m];
        const GroupHom& theta = r.giso_witness[m];
        bool ok = is_g_isomorphism(A, B, theta);
        std::size_t mapped = 0;
        for (std::size_t i = 0; ok && i < A.size(); ++i) {
          if (!rho.contains(A[i])) continue;
          ++mapped;
          ok = rho.contains(B[theta(static_cast<Elem>(i))]);
        }
        ok = ok && mapped == rho_points(B).size();
        l.check(ok, [&] { return idx(c.front()) + "->" + idx(m); });
      }
    }
  }
  {
    auto& l = law("rho_group_g_isomorphic_only_to_itself");
    const PermSubgroup rho = rho_subgroup(r.group);
    if (auto i = r.index_of(rho)) {
      for (std::size_t m = 0; m < k; ++m) {
        l.check((r.giso_class_of[m] == r.giso_class_of[*i]) == (m == *i), [&] { return idx(m); });
      }
    } else {
      l.applicable = false;  // a partial list without rho(G)
    }
  }
  {
    auto& l = law("opposite_involution");
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t o = ctx.opposite[i];
      l.check(o != kNoIndex && ctx.opposite[o] == i, [&] { return idx(i); });
    }
  }
  {
    auto& l = law("opposite_commutes_with_automorphisms");
    for (std::size_t a = 0; a < ctx.auts.size(); ++a) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t o = ctx.opposite[i], c = ctx.aut_action[a][i];
        l.check(o != kNoIndex && c != kNoIndex && ctx.opposite[c] == ctx.aut_action[a][o],
                [&] { return idx(i) + " under aut " + std::to_string(a); });
      }
    }
  }
  {
    auto& l = law("opposite_brace_classes_match");
    for (std::size_t c = 0; c < r.brace_classes.size(); ++c) {
      const auto& members = r.brace_classes[c];
      std::vector<std::size_t> opp;
      for (std::size_t m : members) opp.push_back(ctx.opposite[m]);
      std::sort(opp.begin(), opp.end());
      const std::size_t oc = opp.front() == kNoIndex ? kNoIndex : r.brace_class_of[opp.front()];
      l.check(oc != kNoIndex && r.brace_classes[oc] == opp, [&] { return "class " + std::to_string(c); });
    }
  }
  {
    auto& l = law("opposite_preserves_rho_conjugacy");
    for (const auto& c : r.rho_classes) {
      for (std::size_t m : c) {
        const std::size_t a = ctx.opposite[c.front()], b = ctx.opposite[m];
        l.check(a != kNoIndex && b != kNoIndex && r.rho_class_of[a] == r.rho_class_of[b],
                [&] { return idx(c.front()) + "," + idx(m); });
      }
    }
  }
  {
    auto& l = law("opposite_brace_compatibility");
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t o = ctx.opposite[i];
      bool ok = o != kNoIndex;
      if (ok) {
        const SkewBrace B = brace_from_subgroup(r.subgroups[i]);
        const SkewBrace Bo = brace_from_subgroup(r.subgroups[o]);
        ok = braces_isomorphic(Bo, opposite_brace(B)).has_value() &&
             is_brace_isomorphism(opposite_brace(B), opposite_brace_alternate(B), opposite_connecting_iso(B));
      }
      l.check(ok, [&] { return idx(i); });
    }
  }
  {
    auto& l = law("brace_equivalence_two_routes_agree");
    std::vector<SkewBrace> braces;
    for (const auto& N : r.subgroups) braces.push_back(brace_from_subgroup(N));
    for (const auto& c : r.brace_classes) {
      for (std::size_t m : c) {
        l.check(braces_isomorphic(braces[c.front()], braces[m]).has_value(), [&] { return idx(c.front()) + "~" + idx(m); });
      }
    }
    for (std::size_t a = 0; a < r.brace_classes.size(); ++a) {
      for (std::size_t b = a + 1; b < r.brace_classes.size(); ++b) {
        const std::size_t x = r.brace_classes[a].front(), y = r.brace_classes[b].front();
        l.check(!braces_isomorphic(braces[x], braces[y]).has_value(), [&] { return idx(x) + "!~" + idx(y); });
      }
    }
  }
  return laws;
}

}  // namespace detail

/// Partitions `subgroups` (any complete, G-stable list; sorted here) into
/// brace classes, G-isomorphism classes and rho-classes, computes invariants
/// and evaluates every consistency law.
inline ClassificationReport build_report(const GroupPtr& G, std::vector<PermSubgroup> subgroups,
                                         const GroupCatalog& catalog = GroupCatalog{},
                                         std::vector<std::string> labels = {}) {
  ClassificationReport r;
  r.group = G;
  r.group_type = catalog.identify(*G);
  {
    std::vector<std::size_t> order(subgroups.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return subgroups[a] < subgroups[b]; });
    for (std::size_t i : order) {
      r.subgroups.push_back(subgroups[i]);
      r.labels.push_back(i < labels.size() ? labels[i] : std::string{});
    }
  }
  const std::size_t k = r.subgroups.size();
  const auto ctx = detail::make_context(*G, r.subgroups);
  r.aut_order = ctx.auts.size();
  r.inner_aut_order = inner_automorphism_count(*G);

  r.invariants.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& N = r.subgroups[i];
    auto& inv = r.invariants[i];
    inv.type = catalog.identify(abstract_group(N));
    const auto L = lambda_points(N), P = rho_points(N);
    inv.lambda_points = L.size();
    inv.rho_points = P.size();
    inv.lambda_type = catalog.identify(abstract_group(L));
    inv.rho_type = catalog.identify(abstract_group(P));
    inv.opposite = ctx.opposite[i];
  }

  auto classes_and_lookup = [k](UnionFind& uf, std::vector<std::vector<std::size_t>>& classes,
                                std::vector<std::size_t>& lookup) {
    classes = uf.classes();
    lookup.assign(k, kNoIndex);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t i : classes[c]) lookup[i] = c;
    }
  };

  // Brace classes: Aut(G)-orbits.
  {
    UnionFind uf(k);
    for (const auto& row : ctx.aut_action) {
      for (std::size_t i = 0; i < k; ++i) {
        if (row[i] != kNoIndex) uf.unite(i, row[i]);
      }
    }
    classes_and_lookup(uf, r.brace_classes, r.brace_class_of);
    r.brace_witness.assign(k, GroupHom{});
    for (const auto& c : r.brace_classes) {
      for (std::size_t a = 0; a < ctx.auts.size(); ++a) {
        const std::size_t j = ctx.aut_action[a][c.front()];
        if (j != kNoIndex && r.brace_witness[j].images.empty()) r.brace_witness[j] = ctx.auts[a];
      }
    }
  }
  // Rho classes: orbits under conjugation by rho(G).
  {
    UnionFind uf(k);
    for (const auto& row : ctx.rho_action) {
      for (std::size_t i = 0; i < k; ++i) {
        if (row[i] != kNoIndex) uf.unite(i, row[i]);
      }
    }
    classes_and_lookup(uf, r.rho_classes, r.rho_class_of);
  }
  // G-isomorphism classes: pairwise search against class representatives,
  // after cheap necessary conditions (type, number of rho-points).
  {
    UnionFind uf(k);
    std::vector<std::size_t> reps;
    r.giso_witness.assign(k, GroupHom{});
    for (std::size_t i = 0; i < k; ++i) {
      bool placed = false;
      for (std::size_t rep : reps) {
        if (r.invariants[rep].type != r.invariants[i].type ||
            r.invariants[rep].rho_points != r.invariants[i].rho_points) {
          continue;
        }
        if (auto theta = g_isomorphic(r.subgroups[rep], r.subgroups[i])) {
          uf.unite(rep, i);
          r.giso_witness[i] = std::move(*theta);
          placed = true;
          break;
        }
      }
      if (!placed) {
        reps.push_back(i);
        r.giso_witness[i] = identity_hom(r.subgroups[i].size());
      }
    }
    classes_and_lookup(uf, r.giso_classes, r.giso_class_of);
  }

  for (std::size_t c = 0; c < r.brace_classes.size(); ++c) {
    BraceClassInfo info;
    info.members = r.brace_classes[c];
    info.aut_br_order = brace_automorphisms(brace_from_subgroup(r.subgroups[info.members.front()])).size();
    info.predicted_size = info.aut_br_order ? r.aut_order / info.aut_br_order : 0;
    const std::size_t o = ctx.opposite[info.members.front()];
    info.opposite_class = o == kNoIndex ? kNoIndex : r.brace_class_of[o];
    r.brace_info.push_back(std::move(info));
  }

  r.laws = detail::verify_partition_laws(r, ctx);
  return r;
}

inline ClassificationReport build_report(const GroupPtr& G, const EnumerateOptions& options = {}) {
  static const GroupCatalog builtin;
  const GroupCatalog& catalog = options.catalog ? *options.catalog : builtin;
  return build_report(G, enumerate_regular_gstable(G, options), catalog);
}

inline std::vector<LawVerdict> verify_partition_laws(const ClassificationReport& report) {
  return detail::verify_partition_laws(report, detail::make_context(*report.group, report.subgroups));
}

}  // namespace braceforge
