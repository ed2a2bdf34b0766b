#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include <braceforge/braceforge.hpp>

namespace bf = braceforge;
using bf::Elem;
using bf::PqTag;

namespace {

bf::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const bf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no braceforge::Error thrown";
  return bf::ErrorCode::BadInput;
}

const bf::PermSubgroup& member(const std::vector<bf::LabeledSubgroup>& cat, const std::string& family, long long s,
                               long long t) {
  auto it = std::find_if(cat.begin(), cat.end(), [&](const bf::LabeledSubgroup& L) {
    return L.family == family && (s < 0 || L.s == s) && (t < 0 || L.t == t);
  });
  if (it == cat.end()) throw std::runtime_error("missing " + family);
  return it->subgroup;
}

std::vector<bf::PermSubgroup> of_family(const std::vector<bf::LabeledSubgroup>& cat, const std::string& family) {
  std::vector<bf::PermSubgroup> out;
  for (const auto& L : cat) {
    if (L.family == family) out.push_back(L.subgroup);
  }
  return out;
}

const bf::LawVerdict& verdict(const std::vector<bf::LawVerdict>& list, const std::string& name) {
  auto it = std::find_if(list.begin(), list.end(), [&](const bf::LawVerdict& l) { return l.name == name; });
  if (it == list.end()) throw std::runtime_error("no verdict " + name);
  return *it;
}

struct PqParams {
  long long p, q;
};

// The orders used for the catalog cross-check.
const PqParams kDeskScale[] = {{3, 2}, {5, 2}, {7, 2}, {7, 3}, {11, 2}, {13, 3}, {11, 5}};

}  // namespace

TEST(Cases, Validation) {
  EXPECT_EQ(code_of([] { bf::make_pq_case(9, 2, {}, PqTag::MetacyclicOnMetacyclic); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(3, 5, {}, PqTag::Inert); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(5, 5, {}, PqTag::Inert); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(5, 3, {}, PqTag::CyclicOnCyclic); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(5, 3, 2, PqTag::Inert); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(7, 3, {}, PqTag::Inert); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(7, 3, 3, PqTag::CyclicOnMetacyclic); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(7, 3, 1, PqTag::CyclicOnMetacyclic); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::make_pq_case(101, 3, {}, PqTag::Inert); }), bf::ErrorCode::BadCaseParams);
  EXPECT_EQ(code_of([] { bf::verify_pq(7, 3, 6); }), bf::ErrorCode::BadCaseParams);

  const auto c = bf::make_pq_case(7, 3, {}, PqTag::MetacyclicOnCyclic);
  EXPECT_EQ(c.g, 2);  // least element of order 3 mod 7
  EXPECT_EQ(bf::make_pq_case(7, 3, 11, PqTag::MetacyclicOnCyclic).g, 4);
  EXPECT_EQ(bf::pq_cases(7, 3).size(), 4u);
  EXPECT_EQ(bf::pq_cases(5, 3).size(), 1u);
  EXPECT_EQ(bf::pq_cases(5, 3).front().tag, PqTag::Inert);
  EXPECT_EQ(bf::to_string(PqTag::MetacyclicOnCyclic), "M-on-C");
}

TEST(Catalog, CountsFollowTheFormulas) {
  for (const auto& [p, q] : {PqParams{7, 3}, PqParams{13, 3}, PqParams{11, 5}, PqParams{5, 2}, PqParams{5, 3}}) {
    for (const auto& c : bf::pq_cases(p, q)) {
      const auto cat = bf::catalog_subgroups(c);
      std::size_t want = 1;
      if (c.tag == PqTag::MetacyclicOnCyclic) want = static_cast<std::size_t>(2 * (q - 1));
      if (c.tag == PqTag::CyclicOnMetacyclic) want = static_cast<std::size_t>(p);
      if (c.tag == PqTag::MetacyclicOnMetacyclic) want = static_cast<std::size_t>(2 + 2 * p * (q - 2));
      EXPECT_EQ(cat.size(), want) << p << "," << q << " " << bf::to_string(c.tag);
      EXPECT_EQ(bf::expected_subgroup_count(c), want);
    }
  }
}

TEST(Catalog, EqualsEnumerationByType) {
  const bf::GroupCatalog names;
  for (const auto& [p, q] : {PqParams{7, 3}, PqParams{5, 2}, PqParams{13, 3}}) {
    for (const auto& c : bf::pq_cases(p, q)) {
      const auto G = bf::pq_group(c);
      const std::string want = c.subgroups_metacyclic() ? names.identify(bf::metacyclic_group(p, q, c.g))
                                                        : "C" + std::to_string(p * q);
      std::set<bf::PermSubgroup> enumerated;
      for (const auto& N : bf::enumerate_regular_gstable(G)) {
        if (names.identify(bf::abstract_group(N)) == want) enumerated.insert(N);
      }
      std::set<bf::PermSubgroup> catalog;
      for (const auto& L : bf::catalog_subgroups(c, G)) catalog.insert(L.subgroup);
      EXPECT_EQ(catalog, enumerated) << p << "," << q << " " << bf::to_string(c.tag);
    }
  }
}

TEST(Braces, TwoQPlusTwoClassesFromEnumeration) {
  for (const auto& [p, q] : {PqParams{5, 2}, PqParams{7, 3}, PqParams{11, 5}}) {
    // Braces of every regular G-stable subgroup of both groups of order pq.
    std::vector<bf::SkewBrace> reps;
    for (bool meta : {false, true}) {
      const auto c = bf::pq_cases(p, q)[meta ? 2 : 0];
      for (const auto& N : bf::enumerate_regular_gstable(bf::pq_group(c))) {
        auto B = bf::brace_from_subgroup(N);
        const bool seen = std::any_of(reps.begin(), reps.end(),
                                      [&](const bf::SkewBrace& R) { return bf::braces_isomorphic(R, B).has_value(); });
        if (!seen) reps.push_back(std::move(B));
      }
    }
    EXPECT_EQ(reps.size(), static_cast<std::size_t>(2 * q + 2)) << p << "," << q;
    // The written-out catalog braces are pairwise non-isomorphic and cover them.
    const auto cat = bf::catalog_braces_all(p, q);
    ASSERT_EQ(cat.size(), reps.size());
    for (const auto& R : reps) {
      const auto hits = std::count_if(cat.begin(), cat.end(), [&](const bf::LabeledBrace& b) {
        return bf::braces_isomorphic(R, b.brace).has_value();
      });
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Braces, InertOrderHasOnlyTheTrivialBrace) {
  const auto cat = bf::catalog_braces_all(5, 3);
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_EQ(cat.front().label, "trivial(C)");
  const auto list = bf::enumerate_regular_gstable(bf::pq_group(bf::pq_cases(5, 3).front()));
  ASSERT_EQ(list.size(), 1u);
  EXPECT_TRUE(bf::braces_isomorphic(bf::brace_from_subgroup(list.front()), cat.front().brace).has_value());
}

TEST(Braces, OppositePairsByTable) {
  for (const auto& [p, q] : {PqParams{7, 3}, PqParams{11, 5}}) {
    const auto cat = bf::catalog_braces_all(p, q);
    auto find = [&](const std::string& label) -> const bf::SkewBrace& {
      return std::find_if(cat.begin(), cat.end(), [&](const bf::LabeledBrace& b) { return b.label == label; })->brace;
    };
    EXPECT_EQ(bf::opposite_brace_alternate(find("M_on_C")), find("M_on_C'"));
    for (long long t = 2; t <= q - 1; ++t) {
      const std::string ts = std::to_string(t);
      EXPECT_EQ(bf::opposite_brace_alternate(find("M_on_M[t=" + ts + "]")), find("M_on_M'[t=" + ts + "]"));
    }
    // C_on_M is its own opposite up to isomorphism (abelian dot group).
    EXPECT_TRUE(bf::braces_isomorphic(bf::opposite_brace(find("C_on_M")), find("C_on_M")).has_value());
  }
}

TEST(Verify, DeskScaleOrders) {
  for (const auto& [p, q] : kDeskScale) {
    const auto v = bf::verify_pq(p, q);
    EXPECT_TRUE(v.cross_checked);
    EXPECT_EQ(v.brace_classes, static_cast<std::size_t>(2 * q + 2));
    for (const auto& l : v.verdicts) EXPECT_TRUE(l.holds) << p << "," << q << " " << l.name << ": " << l.witness;
    for (const auto& c : v.cases) {
      EXPECT_TRUE(c.cross_checked);
      for (const auto& l : c.verdicts) {
        EXPECT_TRUE(l.holds) << p << "," << q << " " << bf::to_string(c.pq.tag) << " " << l.name << ": " << l.witness;
      }
    }
    EXPECT_TRUE(v.all_hold());
  }
}

TEST(Verify, InertOrders) {
  for (const auto& [p, q] : {PqParams{5, 3}, PqParams{11, 3}, PqParams{13, 5}}) {
    const auto v = bf::verify_pq(p, q);
    ASSERT_EQ(v.cases.size(), 1u);
    EXPECT_EQ(v.brace_classes, 1u);
    EXPECT_TRUE(v.all_hold()) << p << "," << q;
  }
}

TEST(Verify, CatalogOnlySkipsEnumeration) {
  bf::PqOptions options;
  options.cross_check = false;
  const auto v = bf::verify_pq(7, 3, {}, options);
  EXPECT_FALSE(v.cross_checked);
  EXPECT_TRUE(v.all_hold());
  EXPECT_FALSE(verdict(v.verdicts, "catalog_braces_match_enumeration").applicable);
  for (const auto& c : v.cases) {
    EXPECT_TRUE(c.enumerated.empty());
    EXPECT_FALSE(verdict(c.verdicts, "catalog_matches_enumeration").applicable);
  }
  EXPECT_FALSE(bf::cross_check_enabled(bf::PqOptions{}, 13, 5));
  EXPECT_TRUE(bf::cross_check_enabled(bf::PqOptions{}, 7, 3));
}

TEST(Verify, IndependentOfTheChoiceOfG) {
  bf::PqOptions fast;
  fast.cross_check = false;
  EXPECT_EQ(bf::pq_signature(bf::verify_pq(7, 3, 2)), bf::pq_signature(bf::verify_pq(7, 3, 4)));
  EXPECT_EQ(bf::pq_signature(bf::verify_pq(13, 3, 3, fast)), bf::pq_signature(bf::verify_pq(13, 3, 9, fast)));
  EXPECT_EQ(bf::pq_signature(bf::verify_pq(11, 5, 3, fast)), bf::pq_signature(bf::verify_pq(11, 5, 5, fast)));
}

TEST(MetacyclicOnCyclic, PointsOppositesAndGIsomorphism) {
  const long long p = 7, q = 3;
  const auto c = bf::make_pq_case(p, q, 2, PqTag::MetacyclicOnCyclic);
  const auto G = bf::pq_group(c);
  const auto cat = bf::catalog_subgroups(c, G);
  for (long long t = 1; t <= q - 1; ++t) {
    const auto& Nt = member(cat, "N_t", -1, t);
    const auto& Ntp = member(cat, "N_t'", -1, t);
    EXPECT_EQ(bf::rho_points(Nt).size(), static_cast<std::size_t>(p));
    EXPECT_EQ(bf::rho_points(Ntp).size(), static_cast<std::size_t>(q));
    EXPECT_EQ(bf::opposite_subgroup(Nt), Ntp);
    EXPECT_TRUE(bf::g_isomorphic(member(cat, "N_t", -1, 1), Nt).has_value());
    EXPECT_FALSE(bf::g_isomorphic(Nt, Ntp).has_value());
    for (long long u = 1; u <= q - 1; ++u) {
      EXPECT_EQ(bf::g_isomorphic(Ntp, member(cat, "N_t'", -1, u)).has_value(), t == u);
    }
  }
}

TEST(MetacyclicOnCyclic, WitnessExponentIsTheInverseOfT) {
  // theta(eta) = eta, theta(pi_1) = pi_t^e is a G-isomorphism N_1 -> N_t
  // exactly when t e = 1 mod q.
  for (const auto& [p, q, g] : {std::tuple{7LL, 3LL, 2LL}, std::tuple{7LL, 3LL, 4LL}, std::tuple{11LL, 5LL, 3LL}}) {
    const auto c = bf::make_pq_case(p, q, g, PqTag::MetacyclicOnCyclic);
    const auto G = bf::pq_group(c);
    const auto cat = bf::catalog_subgroups(c, G);
    const bf::detail::PqCoords X{p, q};
    const bf::Perm eta = bf::lambda_of(*G, X.at(1, 0));
    auto pi = [&](long long t) {
      return X.perm([&](long long u, long long v) { return std::pair{u * bf::mod::pow(g, t, p), v - 1}; });
    };
    for (long long t = 1; t <= q - 1; ++t) {
      for (long long e = 1; e <= q - 1; ++e) {
        const std::pair<bf::Perm, bf::Perm> pairs[] = {{eta, eta}, {pi(1), pi(t).pow(e)}};
        const bool iso = bf::g_isomorphic(member(cat, "N_t", -1, 1), member(cat, "N_t", -1, t), pairs).has_value();
        EXPECT_EQ(iso, (t * e) % q == 1) << p << "," << q << " g=" << g << " t=" << t << " e=" << e;
      }
    }
  }
}

TEST(MetacyclicOnCyclic, GeometricSumExponentDependsOnG) {
  // At (7, 3), t = 2: 1 + g is 3 for g = 2 and 5 for g = 4.
  for (const auto& [g, works] : {std::pair{2LL, false}, std::pair{4LL, true}}) {
    const auto c = bf::make_pq_case(7, 3, g, PqTag::MetacyclicOnCyclic);
    const auto G = bf::pq_group(c);
    const auto cat = bf::catalog_subgroups(c, G);
    const bf::detail::PqCoords X{7, 3};
    auto pi = [&](long long t) {
      return X.perm([&](long long u, long long v) { return std::pair{u * bf::mod::pow(g, t, 7), v - 1}; });
    };
    const bf::Perm eta = bf::lambda_of(*G, X.at(1, 0));
    const std::pair<bf::Perm, bf::Perm> pairs[] = {{eta, eta}, {pi(1), pi(2).pow(1 + g)}};
    EXPECT_EQ(bf::g_isomorphic(member(cat, "N_t", -1, 1), member(cat, "N_t", -1, 2), pairs).has_value(), works)
        << "g=" << g;
  }
}

TEST(CyclicOnMetacyclic, RhoConjugationIndexing) {
  const long long p = 13, q = 3, g = 3;
  const auto c = bf::make_pq_case(p, q, g, PqTag::CyclicOnMetacyclic);
  const auto G = bf::pq_group(c);
  const auto cat = bf::catalog_subgroups(c, G);
  const Elem sigma = *G->named("sigma");
  for (long long i = 0; i < p; ++i) {
    const auto M = bf::conjugate_subgroup(member(cat, "N_s", 0, -1), bf::rho_of(*G, G->pow(sigma, -i)));
    EXPECT_EQ(M, member(cat, "N_s", bf::mod::norm(i * (g - 1), p), -1)) << "i=" << i;
  }
}

TEST(MetacyclicOnMetacyclic, FamiliesPointsAndOpposites) {
  const long long p = 7, q = 3, g = 2;
  const auto c = bf::make_pq_case(p, q, g, PqTag::MetacyclicOnMetacyclic);
  const auto G = bf::pq_group(c);
  const auto cat = bf::catalog_subgroups(c, G);
  const Elem sigma = *G->named("sigma");
  const auto lam = bf::lambda_subgroup(G);
  for (long long t = 2; t <= q - 1; ++t) {
    const auto& N0 = member(cat, "N_st", 0, t);
    const long long unit = *bf::mod::inverse(1 - bf::mod::pow(g, t, p), p);
    for (long long s = 0; s < p; ++s) {
      const auto& N = member(cat, "N_st", s, t);
      const auto& Np = member(cat, "N_st'", s, t);
      EXPECT_EQ(bf::rho_points(N).size(), 1u);
      EXPECT_EQ(bf::rho_points(Np).size(), static_cast<std::size_t>(q));
      EXPECT_EQ(bf::opposite_subgroup(N), Np);
      EXPECT_TRUE(bf::g_isomorphic(lam, N).has_value());
      EXPECT_FALSE(bf::g_isomorphic(lam, Np).has_value());
      // N_st = rho(sigma^i) N_0t rho(sigma^-i) with i (1 - g^t) = s.
      const long long i = bf::mod::norm(s * unit, p);
      EXPECT_EQ(bf::conjugate_subgroup(N0, bf::rho_of(*G, G->pow(sigma, -i))), N);
    }
  }
  // lambda(G) and rho(G) are brace singletons; rho(G) is a G-iso singleton.
  const auto r = bf::build_report(G, [&] {
    std::vector<bf::PermSubgroup> all;
    for (const auto& L : cat) all.push_back(L.subgroup);
    return all;
  }());
  const auto li = *r.index_of(lam), ri = *r.index_of(bf::rho_subgroup(G));
  EXPECT_EQ(r.brace_classes[r.brace_class_of[li]].size(), 1u);
  EXPECT_EQ(r.brace_classes[r.brace_class_of[ri]].size(), 1u);
  EXPECT_EQ(r.giso_classes[r.giso_class_of[ri]].size(), 1u);
  EXPECT_EQ(r.giso_classes[r.giso_class_of[li]].size(), 1u + of_family(cat, "N_st").size());
}

TEST(MetacyclicOnMetacyclic, BraceClassesSplitByT) {
  bf::PqOptions fast;
  fast.cross_check = false;
  const auto v = bf::verify_pq(11, 5, 3, fast);
  const auto& mm = v.cases[3];
  ASSERT_EQ(mm.pq.tag, PqTag::MetacyclicOnMetacyclic);
  // lambda, rho, then one class per t for N_st and one for N_st'.
  EXPECT_EQ(mm.report.brace_classes.size(), 2u + 2u * 3u);
  EXPECT_EQ(mm.report.rho_classes.size(), 2u + 2u * 3u);
  EXPECT_EQ(mm.report.giso_classes.size(), 2u + 3u);
}
