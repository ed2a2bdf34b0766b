#include <gtest/gtest.h>

#include <set>

#include <braceforge/braceforge.hpp>

namespace bf = braceforge;
using bf::Elem;

namespace {

bf::GroupPtr group(const char* spec) { return std::make_shared<const bf::FiniteGroup>(bf::preset_group(spec)); }

bf::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const bf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no braceforge::Error thrown";
  return bf::ErrorCode::BadInput;
}

// Regular: |N| = |G| and every element of N other than the identity moves every point.
bool regular_by_definition(const bf::PermSubgroup& N) {
  if (N.size() != N.group().order()) return false;
  for (const auto& p : N.elements()) {
    if (p.is_identity()) continue;
    for (std::size_t x = 0; x < p.degree(); ++x) {
      if (p[x] == x) return false;
    }
  }
  return true;
}

bool g_stable_by_definition(const bf::PermSubgroup& N) {
  for (std::size_t g = 0; g < N.group().order(); ++g) {
    for (const auto& p : N.elements()) {
      if (!N.contains(bf::conj_by_group(N.group(), static_cast<Elem>(g), p))) return false;
    }
  }
  return true;
}

std::size_t count_type(const std::vector<bf::PermSubgroup>& list, const std::string& type) {
  bf::GroupCatalog catalog;
  std::size_t k = 0;
  for (const auto& N : list) k += catalog.identify(bf::abstract_group(N)) == type;
  return k;
}

}  // namespace

TEST(Closure, SmallCases) {
  const auto G = group("dihedral:3");
  const Elem s = *G->named("sigma"), t = *G->named("tau");
  EXPECT_EQ(bf::closure(G, {}).size(), 1u);
  EXPECT_EQ(bf::closure(G, {bf::lambda_of(*G, s)}).size(), 3u);
  EXPECT_EQ(bf::closure(G, {bf::lambda_of(*G, s), bf::rho_of(*G, t)}).size(), 6u);
}

TEST(Closure, GuardAndDegreeChecks) {
  const auto G = group("dihedral:3");
  const bf::Perm swap01(std::vector<Elem>{1, 0, 2, 3, 4, 5});
  const bf::Perm cycle(std::vector<Elem>{1, 2, 3, 4, 5, 0});
  const std::vector<bf::Perm> gens{swap01, cycle};
  // All of Perm(D3) has 720 elements, past the default bound 6^2 |Aut(D3)| = 216.
  EXPECT_EQ(code_of([&] { bf::closure(G, gens); }), bf::ErrorCode::SizeLimitExceeded);
  EXPECT_EQ(bf::closure(G, gens, 720).size(), 720u);
  EXPECT_EQ(code_of([&] { bf::closure(G, gens, 100); }), bf::ErrorCode::SizeLimitExceeded);
  EXPECT_EQ(code_of([&] { bf::closure(G, {bf::Perm::identity(4)}); }), bf::ErrorCode::BadInput);
}

TEST(Regularity, RhoAndLambdaAndPointStabiliser) {
  for (const char* spec : {"dihedral:3", "quaternion:8", "cyclic:6"}) {
    const auto G = group(spec);
    for (const auto& N : {bf::rho_subgroup(G), bf::lambda_subgroup(G)}) {
      EXPECT_TRUE(N.regular() && bf::is_regular(N) && regular_by_definition(N)) << spec;
      EXPECT_TRUE(N.g_stable() && bf::is_g_stable(N) && g_stable_by_definition(N)) << spec;
    }
  }
  // Stabiliser of the identity point in Perm(D3): generated by permutations fixing 0.
  const auto G = group("dihedral:3");
  const auto stab = bf::closure(G, {bf::Perm(std::vector<Elem>{0, 2, 1, 3, 4, 5}),
                                    bf::Perm(std::vector<Elem>{0, 2, 3, 4, 5, 1})});
  EXPECT_EQ(stab.size(), 120u);
  EXPECT_FALSE(bf::is_regular(stab));
}

TEST(Regularity, DihedralCyclicSubgroupsNc) {
  const auto G = group("dihedral:3");
  const Elem s = *G->named("sigma"), t = *G->named("tau");
  std::set<bf::PermSubgroup> seen;
  for (long long c = 0; c < 3; ++c) {
    const auto N = bf::closure(G, {bf::lambda_of(*G, s), bf::rho_of(*G, G->mul(G->pow(s, c), t))});
    EXPECT_TRUE(regular_by_definition(N));
    EXPECT_TRUE(g_stable_by_definition(N));
    EXPECT_TRUE(N.regular() && N.g_stable());
    EXPECT_TRUE(bf::is_isomorphic(bf::abstract_group(N), bf::preset_group("cyclic:6")));
    seen.insert(N);
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(GStability, TranspositionIsNotStable) {
  const auto G = group("dihedral:3");
  const Elem s = *G->named("sigma");
  std::vector<Elem> img{0, 1, 2, 3, 4, 5};
  std::swap(img[0], img[s]);
  const auto N = bf::closure(G, {bf::Perm(img)});
  EXPECT_FALSE(g_stable_by_definition(N));
  EXPECT_FALSE(bf::is_g_stable(N));
  EXPECT_FALSE(N.g_stable());
}

TEST(Opposite, LambdaRhoAndInvolution) {
  for (const char* spec : {"dihedral:3", "quaternion:8", "dihedral:4", "cyclic:6", "alternating:4"}) {
    const auto G = group(spec);
    EXPECT_EQ(bf::opposite_subgroup(bf::lambda_subgroup(G)), bf::rho_subgroup(G)) << spec;
    for (const auto& N : bf::enumerate_regular_gstable(G)) {
      const auto O = bf::opposite_subgroup(N);
      EXPECT_EQ(O.size(), N.size());
      EXPECT_TRUE(O.regular() && O.g_stable());
      EXPECT_EQ(bf::opposite_subgroup(O), N);
      // Every element of O commutes with every element of N.
      for (const auto& a : O.elements()) {
        for (const auto& b : N.generators()) EXPECT_EQ(a * b, b * a);
      }
      const bool abelian = bf::abstract_group(N).is_abelian();
      const bool inside = std::all_of(N.elements().begin(), N.elements().end(),
                                      [&](const bf::Perm& p) { return O.contains(p); });
      EXPECT_EQ(inside, abelian);
    }
  }
}

TEST(Opposite, RejectsNonRegular) {
  const auto G = group("dihedral:3");
  const auto N = bf::closure(G, {bf::lambda_of(*G, *G->named("sigma"))});
  EXPECT_EQ(code_of([&] { bf::opposite_subgroup(N); }), bf::ErrorCode::NotRegular);
}

TEST(Holomorph, Orders) {
  EXPECT_EQ(bf::holomorph(group("cyclic:6")).size(), 12u);
  EXPECT_EQ(bf::holomorph(group("metacyclic:7,3,2")).size(), 882u);
  const auto H = bf::holomorph(group("cyclic:2"));
  EXPECT_EQ(H.size(), 2u);  // all of Perm(C2)
}

TEST(Enumerate, CountsForOrderPq) {
  const auto C6 = bf::enumerate_regular_gstable(group("cyclic:6"));
  EXPECT_EQ(C6.size(), 3u);
  EXPECT_EQ(count_type(C6, "C6"), 1u);
  EXPECT_EQ(count_type(C6, "D3"), 2u);
  const auto D3 = bf::enumerate_regular_gstable(group("dihedral:3"));
  EXPECT_EQ(D3.size(), 5u);
  EXPECT_EQ(count_type(D3, "C6"), 3u);
  const auto C15 = bf::enumerate_regular_gstable(group("cyclic:15"));
  ASSERT_EQ(C15.size(), 1u);
  EXPECT_EQ(C15.front(), bf::rho_subgroup(C15.front().base()));
}

TEST(Enumerate, SmallGroupsAndTrivialCases) {
  const auto C2 = group("cyclic:2");
  const auto list = bf::enumerate_regular_gstable(C2);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list.front(), bf::lambda_subgroup(C2));
  EXPECT_EQ(bf::enumerate_regular_gstable(group("cyclic:1")).size(), 1u);
  EXPECT_EQ(bf::enumerate_regular_gstable(group("cyclic:7")).size(), 1u);
}

TEST(Enumerate, OutputPassesPredicatesAndIsCanonical) {
  for (const char* spec : {"quaternion:8", "dihedral:4", "alternating:4", "metacyclic:7,3,2"}) {
    const auto G = group(spec);
    const auto list = bf::enumerate_regular_gstable(G);
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end())) << spec;
    EXPECT_EQ(std::set<bf::PermSubgroup>(list.begin(), list.end()).size(), list.size());
    for (const auto& N : list) {
      EXPECT_TRUE(regular_by_definition(N));
      EXPECT_TRUE(g_stable_by_definition(N));
      EXPECT_EQ(N.regular(), bf::is_regular(N));
      EXPECT_EQ(N.g_stable(), bf::is_g_stable(N));
    }
  }
}

TEST(Enumerate, IndependentOfWorkerCount) {
  for (const char* spec : {"quaternion:8", "metacyclic:7,3,2", "cyclic:2*cyclic:2*cyclic:2"}) {
    const auto G = group(spec);
    bf::EnumerateOptions one, four;
    four.jobs = 4;
    EXPECT_EQ(bf::enumerate_regular_gstable(G, one), bf::enumerate_regular_gstable(G, four)) << spec;
  }
}

TEST(Enumerate, UnsupportedOrder) {
  EXPECT_EQ(code_of([] { bf::enumerate_regular_gstable(group("cyclic:16")); }), bf::ErrorCode::UnsupportedOrder);
}

TEST(Enumerate, UserCatalogExtendsSupport) {
  // Order 16 is not built in; registering only C16 is enough to enumerate
  // the C16-type subgroups of Perm(C16).
  bf::GroupCatalog catalog;
  catalog.add("C16", bf::cyclic_group(16));
  bf::EnumerateOptions options;
  options.catalog = &catalog;
  const auto G = group("cyclic:16");
  const auto list = bf::enumerate_regular_gstable(G, options);
  EXPECT_FALSE(list.empty());
  EXPECT_NE(std::find(list.begin(), list.end(), bf::rho_subgroup(G)), list.end());
}

TEST(Oracle, AgreesWithHolomorphSearch) {
  for (const char* spec : {"cyclic:2", "cyclic:4", "cyclic:2*cyclic:2", "cyclic:6", "dihedral:3", "cyclic:8"}) {
    const auto G = group(spec);
    EXPECT_EQ(bf::direct_enumerate_oracle(G), bf::enumerate_regular_gstable(G)) << spec;
  }
}

TEST(Oracle, QuaternionHasSixDihedralSubgroups) {
  const auto list = bf::direct_enumerate_oracle(group("quaternion:8"));
  EXPECT_EQ(count_type(list, "D4"), 6u);
}

TEST(Oracle, RefusesLargeOrders) {
  EXPECT_EQ(code_of([] { bf::direct_enumerate_oracle(group("cyclic:9")); }), bf::ErrorCode::OrderTooLargeForOracle);
}

TEST(PermSubgroup, FromElementsValidates) {
  const auto G = group("cyclic:4");
  const auto L = bf::lambda_subgroup(G);
  std::vector<bf::Perm> elems(L.elements().begin(), L.elements().end());
  EXPECT_EQ(bf::PermSubgroup::from_elements(G, elems), L);
  elems.pop_back();
  EXPECT_EQ(code_of([&] { bf::PermSubgroup::from_elements(G, elems); }), bf::ErrorCode::BadInput);
}

TEST(PermSubgroup, ConjugationAndIntersection) {
  const auto G = group("dihedral:4");
  const auto L = bf::lambda_subgroup(G), R = bf::rho_subgroup(G);
  // lambda(G) meets rho(G) in the centre.
  EXPECT_EQ(bf::intersection(L, R).size(), G->center().size());
  for (const auto& phi : bf::automorphism_group(*G)) {
    EXPECT_EQ(bf::conjugate_subgroup(L, phi.as_perm()), L);
    EXPECT_TRUE(bf::conjugate_lies_in(R, phi.as_perm(), R));
  }
}
