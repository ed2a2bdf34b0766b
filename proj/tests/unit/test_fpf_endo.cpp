#include <gtest/gtest.h>

#include <algorithm>
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

// Groups written sigma^u tau^v at index u + a v, a = |sigma|. Every
// endomorphism is x -> img(sigma)^u img(tau)^v for some pair of images; keep
// the pairs that give a homomorphism, an abelian one, with no fixed point
// besides the identity.
std::set<bf::GroupHom> abelian_fpf_by_generator_images(const bf::FiniteGroup& G) {
  const Elem sigma = *G.named("sigma"), tau = *G.named("tau");
  const std::size_t n = G.order(), a = G.element_order(sigma);
  std::set<bf::GroupHom> out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      bf::GroupHom f{std::vector<Elem>(n)};
      for (std::size_t e = 0; e < n; ++e) {
        f.images[e] = G.mul(G.pow(static_cast<Elem>(x), static_cast<long long>(e % a)),
                            G.pow(static_cast<Elem>(y), static_cast<long long>(e / a)));
      }
      if (f(sigma) != x || f(tau) != y) continue;
      bool ok = bf::is_homomorphism(G, G, f);
      for (std::size_t u = 0; u < n && ok; ++u) {
        for (std::size_t v = 0; v < n && ok; ++v) {
          ok = f(G.mul(static_cast<Elem>(u), static_cast<Elem>(v))) == f(G.mul(static_cast<Elem>(v), static_cast<Elem>(u)));
        }
      }
      for (std::size_t u = 1; u < n && ok; ++u) ok = f(static_cast<Elem>(u)) != u;
      if (ok) out.insert(f);
    }
  }
  return out;
}

std::set<bf::GroupHom> library_fpf(const bf::FiniteGroup& G) {
  std::set<bf::GroupHom> out;
  for (const auto& e : bf::enumerate_abelian_fpf(G)) out.insert(e.psi);
  return out;
}

}  // namespace

TEST(Enumeration, MatchesGeneratorImageOracle) {
  for (const char* spec : {"dihedral:3", "dihedral:4", "dihedral:5", "quaternion:8", "dicyclic:3",
                           "metacyclic:7,3,2", "metacyclic:13,3,3"}) {
    const auto G = group(spec);
    EXPECT_EQ(library_fpf(*G), abelian_fpf_by_generator_images(*G)) << spec;
  }
}

TEST(Enumeration, DihedralThreeHasOnlyTheTrivialMap) {
  const auto F = bf::enumerate_abelian_fpf(bf::preset_group("dihedral:3"));
  ASSERT_EQ(F.size(), 1u);
  EXPECT_TRUE(F.front().trivial);
  EXPECT_TRUE(F.front().abelian && F.front().fixed_point_free);
}

TEST(Enumeration, MetacyclicTwentyOne) {
  const auto G = group("metacyclic:7,3,2");
  const auto F = bf::enumerate_abelian_fpf(*G);
  const auto nontrivial = std::count_if(F.begin(), F.end(), [](const bf::FpfEndo& e) { return !e.trivial; });
  EXPECT_EQ(nontrivial, 7);
  EXPECT_EQ(F.size(), 8u);
}

TEST(AlphaSubgroup, MetacyclicImagesAreTheNstFamily) {
  const auto c = bf::make_pq_case(7, 3, 2, bf::PqTag::MetacyclicOnMetacyclic);
  const auto G = bf::pq_group(c);
  const bf::detail::PqCoords X{7, 3};
  std::set<bf::PermSubgroup> family;
  for (const auto& L : bf::catalog_subgroups(c, G)) {
    if (L.family == "N_st") family.insert(L.subgroup);
  }
  ASSERT_EQ(family.size(), 7u);
  std::set<bf::PermSubgroup> images;
  for (const auto& e : bf::enumerate_abelian_fpf(*G)) {
    const auto N = bf::alpha_subgroup(G, e.psi);
    if (e.trivial) {
      EXPECT_EQ(N, bf::lambda_subgroup(G));
    } else {
      images.insert(N);
    }
  }
  EXPECT_EQ(images, family);
  // psi_{0,2}: sigma^u tau^v -> tau^(2v) gives N_{0,2}.
  bf::GroupHom psi{std::vector<Elem>(21)};
  for (std::size_t x = 0; x < 21; ++x) psi.images[x] = G->pow(X.at(0, 2), X.v(static_cast<Elem>(x)));
  const auto N02 = bf::closure(G, {bf::lambda_of(*G, X.at(1, 0)), bf::lambda_of(*G, X.at(0, 1)) * bf::rho_of(*G, X.at(0, 2))});
  EXPECT_EQ(bf::alpha_subgroup(G, psi), N02);
}

TEST(AlphaSubgroup, ThetaIsAGIsomorphismFromLambda) {
  for (const char* spec : {"metacyclic:7,3,2", "quaternion:8", "cyclic:2*cyclic:2", "alternating:4"}) {
    const auto G = group(spec);
    const auto lam = bf::lambda_subgroup(G);
    for (const auto& e : bf::enumerate_abelian_fpf(*G)) {
      const auto N = bf::alpha_subgroup(G, e.psi);
      EXPECT_TRUE(N.regular() && N.g_stable()) << spec;
      EXPECT_TRUE(bf::is_g_isomorphism(lam, N, bf::alpha_theta(*G, e.psi))) << spec;
    }
  }
}

TEST(AlphaSubgroup, RejectsBadEndomorphisms) {
  const auto G = group("metacyclic:7,3,2");
  EXPECT_EQ(code_of([&] { bf::alpha_subgroup(G, bf::identity_hom(21)); }), bf::ErrorCode::NotAbelianFpf);
  bf::GroupHom not_hom = bf::identity_hom(21);
  std::swap(not_hom.images[1], not_hom.images[2]);
  EXPECT_EQ(code_of([&] { bf::alpha_subgroup(G, not_hom); }), bf::ErrorCode::NotAbelianFpf);
  EXPECT_EQ(code_of([&] { bf::alpha_subgroup(G, bf::identity_hom(3)); }), bf::ErrorCode::NotAbelianFpf);
  // Inner automorphisms are homomorphisms but not abelian on a nonabelian group.
  const auto inner = bf::inner_automorphism(*G, 1);
  EXPECT_FALSE(bf::is_abelian_endomorphism(*G, inner));
}

TEST(Conjugation, StaysInsideTheSet) {
  const auto G = group("metacyclic:7,3,2");
  const auto F = library_fpf(*G);
  for (const auto& phi : bf::automorphism_group(*G)) {
    for (const auto& psi : F) {
      const auto c = bf::conjugate_endomorphism(psi, phi);
      EXPECT_TRUE(F.count(c));
      EXPECT_EQ(bf::alpha_subgroup(G, c), bf::conjugate_subgroup(bf::alpha_subgroup(G, psi), phi.as_perm()));
    }
  }
}

TEST(Laws, HoldOnSeveralGroups) {
  for (const char* spec : {"dihedral:3", "cyclic:6", "quaternion:8", "dihedral:4", "alternating:4",
                           "cyclic:3*cyclic:3", "metacyclic:7,3,2", "metacyclic:13,3,3", "dicyclic:3"}) {
    const auto laws = bf::verify_fpf_laws(group(spec));
    ASSERT_EQ(laws.size(), 8u);
    for (const auto& l : laws) EXPECT_TRUE(l.holds) << spec << " " << l.name << ": " << l.witness;
  }
}

TEST(Laws, DistinctnessOnlyForTrivialCentre) {
  const auto q8 = bf::verify_fpf_laws(group("quaternion:8"));
  const auto m21 = bf::verify_fpf_laws(group("metacyclic:7,3,2"));
  auto find = [](const std::vector<bf::LawVerdict>& laws) {
    return *std::find_if(laws.begin(), laws.end(),
                         [](const bf::LawVerdict& l) { return l.name == "fpf_distinct_when_centerless"; });
  };
  EXPECT_FALSE(find(q8).applicable);
  EXPECT_TRUE(find(m21).applicable);
  EXPECT_EQ(find(m21).checked, 28u);  // pairs among 8 maps
}
