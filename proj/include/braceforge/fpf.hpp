#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "brace.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "laws.hpp"
#include "partitions.hpp"
#include "subgroup.hpp"

namespace braceforge {

struct FpfEndo {
  GroupHom psi;
  bool abelian = false;
  bool fixed_point_free = false;
  bool trivial = false;
};

/// psi(x y) = psi(y x) for all x, y.
inline bool is_abelian_endomorphism(const FiniteGroup& G, const GroupHom& psi) {
  for (std::size_t x = 0; x < G.order(); ++x) {
    for (Elem y : G.generators()) {
      const Elem ex = static_cast<Elem>(x);
      if (psi(G.mul(ex, y)) != psi(G.mul(y, ex))) return false;
    }
  }
  return true;
}

/// psi(x) = x only for x = 1.
inline bool is_fixed_point_free(const GroupHom& psi) {
  for (std::size_t x = 1; x < psi.images.size(); ++x) {
    if (psi(static_cast<Elem>(x)) == x) return false;
  }
  return true;
}

/// F(G): every abelian fixed-point-free endomorphism, the trivial map
/// included and flagged.
inline std::vector<FpfEndo> enumerate_abelian_fpf(const FiniteGroup& G) {
  std::vector<FpfEndo> out;
  for (GroupHom& psi : endomorphisms(G)) {
    FpfEndo e;
    e.abelian = is_abelian_endomorphism(G, psi);
    e.fixed_point_free = is_fixed_point_free(psi);
    if (!e.abelian || !e.fixed_point_free) continue;
    e.trivial = std::all_of(psi.images.begin(), psi.images.end(), [](Elem y) { return y == 0; });
    e.psi = std::move(psi);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const FpfEndo& a, const FpfEndo& b) { return a.psi < b.psi; });
  return out;
}

/// phi^-1 psi phi.
inline GroupHom conjugate_endomorphism(const GroupHom& psi, const GroupHom& phi) {
  return compose(inverse(phi), compose(psi, phi));
}

/// N_psi = { lambda(s) rho(psi(s)) : s in G }.
inline PermSubgroup alpha_subgroup(const GroupPtr& G, const GroupHom& psi) {
  if (psi.images.size() != G->order() || !is_homomorphism(*G, *G, psi) ||
      !is_abelian_endomorphism(*G, psi) || !is_fixed_point_free(psi)) {
    throw Error(ErrorCode::NotAbelianFpf, "psi is not an abelian fixed-point-free endomorphism");
  }
  std::vector<Perm> elems;
  for (std::size_t s = 0; s < G->order(); ++s) {
    const Elem e = static_cast<Elem>(s);
    elems.push_back(lambda_of(*G, e) * rho_of(*G, psi(e)));
  }
  std::sort(elems.begin(), elems.end());
  return PermSubgroup::trusted(G, std::move(elems));
}

/// theta(lambda(s)) = lambda(s) rho(psi(s)) in canonical indices of lambda(G)
/// and N_psi.
inline GroupHom alpha_theta(const FiniteGroup& G, const GroupHom& psi) {
  GroupHom theta{std::vector<Elem>(G.order())};
  for (std::size_t s = 0; s < G.order(); ++s) {
    const Elem e = static_cast<Elem>(s);
    theta.images[s] = G.mul(e, G.inv(psi(e)));
  }
  return theta;
}

inline std::vector<LawVerdict> verify_fpf_laws(const GroupPtr& G) {
  const FiniteGroup& g = *G;
  const auto F = enumerate_abelian_fpf(g);
  const auto auts = automorphism_group(g);
  const PermSubgroup lam = lambda_subgroup(G);

  std::set<GroupHom> in_F;
  std::vector<PermSubgroup> N;
  std::vector<SkewBrace> B;
  for (const auto& e : F) {
    in_F.insert(e.psi);
    N.push_back(alpha_subgroup(G, e.psi));
    B.push_back(brace_from_subgroup(N.back()));
  }
  const std::set<PermSubgroup> images(N.begin(), N.end());
  auto name = [](std::size_t i) { return "psi" + std::to_string(i); };

  std::vector<LawVerdict> laws(8);
  auto& regular = laws[0];
  regular.name = "fpf_alpha_regular_and_g_stable";
  auto& giso = laws[1];
  giso.name = "fpf_alpha_g_isomorphic_to_lambda";
  auto& closed = laws[2];
  closed.name = "fpf_closed_under_conjugation";
  auto& equivariant = laws[3];
  equivariant.name = "fpf_subgroup_conjugation";
  auto& brace_iso = laws[4];
  brace_iso.name = "fpf_conjugate_braces_isomorphic";
  auto& converse = laws[5];
  converse.name = "fpf_isomorphic_braces_are_conjugate";
  auto& class_closure = laws[6];
  class_closure.name = "fpf_brace_class_closure";
  auto& distinct = laws[7];
  distinct.name = "fpf_distinct_when_centerless";

  for (std::size_t i = 0; i < F.size(); ++i) {
    regular.check(N[i].size() == g.order() && N[i].regular() && N[i].g_stable(), [&] { return name(i); });
    giso.check(is_g_isomorphism(lam, N[i], alpha_theta(g, F[i].psi)), [&] { return name(i); });
    for (std::size_t a = 0; a < auts.size(); ++a) {
      const GroupHom c = conjugate_endomorphism(F[i].psi, auts[a]);
      const auto aut_name = [&] { return name(i) + " under aut " + std::to_string(a); };
      closed.check(in_F.count(c) > 0, aut_name);
      const PermSubgroup conj = conjugate_subgroup(N[i], auts[a].as_perm());
      equivariant.check(in_F.count(c) > 0 && alpha_subgroup(G, c) == conj, aut_name);
      class_closure.check(images.count(conj) > 0, aut_name);
      if (in_F.count(c)) {
        brace_iso.check(braces_isomorphic(B[i], brace_from_subgroup(conj)).has_value(), aut_name);
      }
    }
  }
  // If B_psi ~ B_psi' then N_psi' = N_{phi^-1 psi phi} for some phi.
  for (std::size_t i = 0; i < F.size(); ++i) {
    for (std::size_t j = 0; j < F.size(); ++j) {
      if (!braces_isomorphic(B[i], B[j])) continue;
      bool found = false;
      for (const auto& phi : auts) {
        if (conjugate_subgroup(N[i], phi.as_perm()) == N[j]) {
          found = true;
          break;
        }
      }
      converse.check(found, [&] { return name(i) + "," + name(j); });
    }
  }
  distinct.applicable = g.center().size() == 1;
  if (distinct.applicable) {
    for (std::size_t i = 0; i < F.size(); ++i) {
      for (std::size_t j = i + 1; j < F.size(); ++j) {
        distinct.check(!(N[i] == N[j]), [&] { return name(i) + "," + name(j); });
      }
    }
  }
  return laws;
}

}  // namespace braceforge
