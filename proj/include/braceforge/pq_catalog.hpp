#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "brace.hpp"
#include "catalog.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "fpf.hpp"
#include "laws.hpp"
#include "modular.hpp"
#include "partitions.hpp"
#include "presets.hpp"
#include "subgroup.hpp"

namespace braceforge {

/// Which type of regular subgroup (first letter) acts on which G (second):
/// C cyclic, M metacyclic. Inert means p is not 1 mod q.
enum class PqTag { Inert, CyclicOnCyclic, MetacyclicOnCyclic, CyclicOnMetacyclic, MetacyclicOnMetacyclic };

constexpr std::string_view to_string(PqTag tag) noexcept {
  switch (tag) {
    case PqTag::Inert: return "inert";
    case PqTag::CyclicOnCyclic: return "C-on-C";
    case PqTag::MetacyclicOnCyclic: return "M-on-C";
    case PqTag::CyclicOnMetacyclic: return "C-on-M";
    case PqTag::MetacyclicOnMetacyclic: return "M-on-M";
  }
  return "?";
}

/// p > q primes; g has order q modulo p whenever p = 1 mod q (0 otherwise).
struct PqCase {
  long long p = 0;
  long long q = 0;
  long long g = 0;
  PqTag tag = PqTag::Inert;

  bool split() const noexcept { return tag != PqTag::Inert; }
  bool group_is_metacyclic() const noexcept {
    return tag == PqTag::CyclicOnMetacyclic || tag == PqTag::MetacyclicOnMetacyclic;
  }
  bool subgroups_metacyclic() const noexcept {
    return tag == PqTag::MetacyclicOnCyclic || tag == PqTag::MetacyclicOnMetacyclic;
  }
};

/// Validates (p, q, g, tag). g = nullopt picks the least valid g.
inline PqCase make_pq_case(long long p, long long q, std::optional<long long> g, PqTag tag) {
  const std::string where = "(p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (!mod::is_prime(p) || !mod::is_prime(q) || p <= q) {
    throw Error(ErrorCode::BadCaseParams, where + ": need primes p > q");
  }
  if (static_cast<std::size_t>(p * q) > kMaxOrder) throw Error(ErrorCode::BadCaseParams, where + ": order too large");
  PqCase c{p, q, 0, tag};
  const bool split = p % q == 1;
  if (!split) {
    if (tag != PqTag::Inert) throw Error(ErrorCode::BadCaseParams, where + ": p is not 1 mod q, only the inert case exists");
    if (g) throw Error(ErrorCode::BadCaseParams, where + ": g is meaningless when p is not 1 mod q");
    return c;
  }
  if (tag == PqTag::Inert) throw Error(ErrorCode::BadCaseParams, where + ": p = 1 mod q, case is not inert");
  c.g = g ? mod::norm(*g, p) : *mod::element_of_order(q, p);
  if (mod::order(c.g, p) != q) {
    throw Error(ErrorCode::BadCaseParams, where + ": g=" + std::to_string(*g) + " does not have order q modulo p");
  }
  return c;
}

/// All cases for (p, q): the inert one, or the four split ones.
inline std::vector<PqCase> pq_cases(long long p, long long q, std::optional<long long> g = std::nullopt) {
  if (mod::is_prime(p) && mod::is_prime(q) && p > q && p % q != 1) return {make_pq_case(p, q, g, PqTag::Inert)};
  std::vector<PqCase> out;
  for (PqTag t : {PqTag::CyclicOnCyclic, PqTag::MetacyclicOnCyclic, PqTag::CyclicOnMetacyclic,
                  PqTag::MetacyclicOnMetacyclic}) {
    out.push_back(make_pq_case(p, q, g, t));
  }
  return out;
}

/// Number of regular G-stable subgroups of the case's type.
inline std::size_t expected_subgroup_count(const PqCase& c) {
  switch (c.tag) {
    case PqTag::Inert:
    case PqTag::CyclicOnCyclic: return 1;
    case PqTag::MetacyclicOnCyclic: return static_cast<std::size_t>(2 * (c.q - 1));
    case PqTag::CyclicOnMetacyclic: return static_cast<std::size_t>(c.p);
    case PqTag::MetacyclicOnMetacyclic: return static_cast<std::size_t>(2 + 2 * c.p * (c.q - 2));
  }
  return 0;
}

/// G in sigma/tau coordinates: sigma^u tau^v at index u + p v.
inline GroupPtr pq_group(const PqCase& c) {
  if (c.group_is_metacyclic()) return std::make_shared<const FiniteGroup>(metacyclic_group(c.p, c.q, c.g));
  return std::make_shared<const FiniteGroup>(sigma_tau_group(c.p, c.q, 1, "cyclic:" + std::to_string(c.p * c.q)));
}

struct LabeledSubgroup {
  std::string family;      // N_t, N_t', N_s, N_st, N_st', lambda, rho
  std::string label;       // family with parameters, e.g. N_st[s=1,t=2]
  std::string generators;  // human-readable generator description
  long long s = -1;
  long long t = -1;
  PermSubgroup subgroup;
};

struct LabeledBrace {
  std::string label;
  std::string dot_rule;
  std::string circle_rule;
  SkewBrace brace;
};

namespace detail {

struct PqCoords {
  long long p, q;
  Elem at(long long u, long long v) const { return static_cast<Elem>(mod::norm(u, p) + p * mod::norm(v, q)); }
  long long u(std::size_t x) const { return static_cast<long long>(x) % p; }
  long long v(std::size_t x) const { return static_cast<long long>(x) / p; }

  Perm perm(const std::function<std::pair<long long, long long>(long long, long long)>& f) const {
    std::vector<Elem> img(static_cast<std::size_t>(p * q));
    for (std::size_t x = 0; x < img.size(); ++x) {
      auto [a, b] = f(u(x), v(x));
      img[x] = at(a, b);
    }
    return Perm(std::move(img));
  }
};

inline std::string param(const char* name, long long v) { return std::string(name) + "=" + std::to_string(v); }

}  // namespace detail

/// The explicit subgroups of the case, in family order.
inline std::vector<LabeledSubgroup> catalog_subgroups(const PqCase& c, const GroupPtr& G) {
  const long long p = c.p, q = c.q, g = c.g;
  const detail::PqCoords X{p, q};
  const FiniteGroup& GG = *G;
  const Elem sigma = X.at(1, 0), tau = X.at(0, 1);
  std::vector<LabeledSubgroup> out;
  auto add = [&](std::string family, std::string label, std::string gens, long long s, long long t, PermSubgroup N) {
    out.push_back({std::move(family), std::move(label), std::move(gens), s, t, std::move(N)});
  };
  switch (c.tag) {
    case PqTag::Inert:
    case PqTag::CyclicOnCyclic:
      add("rho", "rho", "rho(sigma), rho(tau)", -1, -1, rho_subgroup(G));
      break;
    case PqTag::MetacyclicOnCyclic:
      for (long long t = 1; t <= q - 1; ++t) {
        const Perm pi_t = X.perm([&](long long u, long long v) {
          return std::pair{u * mod::pow(g, t, p), v - 1};
        });
        add("N_t", "N_t[" + detail::param("t", t) + "]", "lambda(sigma), pi_t: s^u t^v -> s^(u g^t) t^(v-1)", -1, t,
            closure(G, {lambda_of(GG, sigma), pi_t}));
      }
      for (long long t = 1; t <= q - 1; ++t) {
        const Perm eta_t = X.perm([&](long long u, long long v) {
          return std::pair{u + mod::pow(mod::pow(g, t, p), (q - 1) * mod::norm(v, q), p), v};
        });
        add("N_t'", "N_t'[" + detail::param("t", t) + "]", "eta_t: s^u t^v -> s^(u+g^(-tv)) t^v, lambda(tau)", -1, t,
            closure(G, {eta_t, lambda_of(GG, tau)}));
      }
      break;
    case PqTag::CyclicOnMetacyclic:
      for (long long s = 0; s < p; ++s) {
        const Elem x = GG.mul(GG.pow(sigma, -s), tau);
        add("N_s", "N_s[" + detail::param("s", s) + "]", "lambda(sigma), rho(sigma^-s tau)^-1", s, -1,
            closure(G, {lambda_of(GG, sigma), rho_of(GG, x).inverse()}));
      }
      break;
    case PqTag::MetacyclicOnMetacyclic: {
      add("lambda", "lambda", "lambda(sigma), lambda(tau)", -1, -1, lambda_subgroup(G));
      add("rho", "rho", "rho(sigma), rho(tau)", -1, -1, rho_subgroup(G));
      for (long long t = 2; t <= q - 1; ++t) {
        for (long long s = 0; s < p; ++s) {
          const Elem x = X.at(s, t);
          add("N_st", "N_st[" + detail::param("s", s) + "," + detail::param("t", t) + "]",
              "lambda(sigma), lambda(tau) rho(sigma^s tau^t)", s, t,
              closure(G, {lambda_of(GG, sigma), lambda_of(GG, tau) * rho_of(GG, x)}));
        }
      }
      for (long long t = 2; t <= q - 1; ++t) {
        const long long d = *mod::inverse(1 - t, q);
        const Perm beta_t = X.perm([&](long long u, long long v) {
          return std::pair{u + mod::pow(g, d * mod::norm(v, q), p), v};
        });
        const PermSubgroup base = closure(G, {beta_t, rho_of(GG, tau)});
        const long long unit = *mod::inverse(1 - mod::pow(g, t, p), p);
        for (long long s = 0; s < p; ++s) {
          // N_st' is the opposite of N_st = rho(sigma^i) N_0t rho(sigma^-i),
          // where i (1 - g^t) = s mod p.
          const long long i = mod::norm(s * unit, p);
          add("N_st'", "N_st'[" + detail::param("s", s) + "," + detail::param("t", t) + "]",
              "rho(sigma^i) <beta_t, rho(tau)> rho(sigma^-i), i(1-g^t)=s, beta_t: s^u t^v -> s^(u+g^(dv)) t^v", s,
              t, conjugate_subgroup(base, rho_of(GG, GG.pow(sigma, -i))));
        }
      }
      break;
    }
  }
  return out;
}

inline std::vector<LabeledSubgroup> catalog_subgroups(const PqCase& c) { return catalog_subgroups(c, pq_group(c)); }

namespace detail {

using PqRule = std::function<std::pair<long long, long long>(long long, long long, long long, long long)>;

inline SkewBrace pq_brace(long long p, long long q, const PqRule& dot, const PqRule& circle, std::string label) {
  const PqCoords X{p, q};
  const auto n = static_cast<std::size_t>(p * q);
  std::vector<Elem> d(n * n), c(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto [i1, j1] = dot(X.u(a), X.v(a), X.u(b), X.v(b));
      auto [i2, j2] = circle(X.u(a), X.v(a), X.u(b), X.v(b));
      d[a * n + b] = X.at(i1, j1);
      c[a * n + b] = X.at(i2, j2);
    }
  }
  return SkewBrace(n, std::move(d), std::move(c), std::move(label));
}

}  // namespace detail

/// Braces of order pq written out on the carrier eta^i pi^j (index i + p j).
/// With p = 1 mod q this is one brace per isomorphism class, 2q + 2 in all.
inline std::vector<LabeledBrace> catalog_braces_all(long long p, long long q, std::optional<long long> g_opt = {}) {
  const PqTag probe = (mod::is_prime(p) && mod::is_prime(q) && p > q && p % q != 1) ? PqTag::Inert
                                                                                     : PqTag::MetacyclicOnMetacyclic;
  const PqCase c = make_pq_case(p, q, g_opt, probe);
  std::vector<LabeledBrace> out;
  const auto C = sigma_tau_group(p, q, 1, "C" + std::to_string(p * q));
  out.push_back({"trivial(C)", "additive", "additive", trivial_brace(C)});
  if (!c.split()) return out;
  const long long g = c.g;
  auto gp = [&](long long e) { return mod::pow(g, mod::norm(e, q), p); };
  const detail::PqRule cyc = [](long long i, long long j, long long k, long long l) { return std::pair{i + k, j + l}; };
  const detail::PqRule meta = [&](long long i, long long j, long long k, long long l) {
    return std::pair{i + k * gp(j), j + l};
  };
  const auto M = metacyclic_group(p, q, g);
  out.push_back({"trivial(M)", "eta^(i+k g^j) pi^(j+l)", "eta^(i+k g^j) pi^(j+l)", trivial_brace(M)});
  out.push_back({"almost_trivial(M)", "eta^(i+k g^j) pi^(j+l)", "reversed dot", almost_trivial_brace(M)});
  out.push_back({"M_on_C", "eta^(i+k g^j) pi^(j+l)", "eta^(i+k) pi^(j+l)", detail::pq_brace(p, q, meta, cyc, "M_on_C")});
  out.push_back({"M_on_C'", "eta^(i+k g^j) pi^(j+l)", "eta^(i g^l + k g^j) pi^(j+l)",
                 detail::pq_brace(p, q, meta, [&](long long i, long long j, long long k, long long l) {
                   return std::pair{i * gp(l) + k * gp(j), j + l};
                 }, "M_on_C'")});
  out.push_back({"C_on_M", "eta^(i+k) pi^(j+l)", "eta^(i+k g^j) pi^(j+l)", detail::pq_brace(p, q, cyc, meta, "C_on_M")});
  for (long long t = 2; t <= q - 1; ++t) {
    const std::string ts = std::to_string(t);
    out.push_back({"M_on_M[t=" + ts + "]", "eta^(i+k g^j) pi^(j+l)", "eta^(i+k g^(j(1-t))) pi^(j+l)",
                   detail::pq_brace(p, q, meta, [&](long long i, long long j, long long k, long long l) {
                     return std::pair{i + k * gp(j * (1 - t)), j + l};
                   }, "M_on_M[t=" + ts + "]")});
    out.push_back({"M_on_M'[t=" + ts + "]", "eta^(i+k g^j) pi^(j+l)", "eta^(i g^l + k g^(jt)) pi^(j+l)",
                   detail::pq_brace(p, q, meta, [&](long long i, long long j, long long k, long long l) {
                     return std::pair{i * gp(l) + k * gp(j * t), j + l};
                   }, "M_on_M'[t=" + ts + "]")});
  }
  return out;
}

/// The catalog braces whose dot group has the case's subgroup type and whose
/// circle group has the type of G.
inline std::vector<LabeledBrace> catalog_braces(const PqCase& c) {
  std::vector<LabeledBrace> out;
  for (auto& b : catalog_braces_all(c.p, c.q, c.split() ? std::optional<long long>(c.g) : std::nullopt)) {
    if (b.brace.dot_group().is_abelian() == !c.subgroups_metacyclic() &&
        b.brace.circle_group().is_abelian() == !c.group_is_metacyclic()) {
      out.push_back(std::move(b));
    }
  }
  return out;
}

/// Label of the catalog brace expected for a catalog subgroup family.
inline std::string expected_brace_label(const LabeledSubgroup& s, const PqCase& c) {
  if (s.family == "N_t") return "M_on_C";
  if (s.family == "N_t'") return "M_on_C'";
  if (s.family == "N_s") return "C_on_M";
  if (s.family == "N_st") return "M_on_M[t=" + std::to_string(s.t) + "]";
  if (s.family == "N_st'") return "M_on_M'[t=" + std::to_string(s.t) + "]";
  if (s.family == "lambda") return "trivial(M)";
  if (s.family == "rho") return c.group_is_metacyclic() ? "almost_trivial(M)" : "trivial(C)";
  return "";
}

/// Number of isomorphism classes among `braces`, by pairwise search.
inline std::size_t count_brace_classes(const std::vector<SkewBrace>& braces) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < braces.size(); ++i) {
    bool seen = false;
    for (std::size_t r : reps) {
      if (braces_isomorphic(braces[r], braces[i])) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(i);
  }
  return reps.size();
}

struct PqCaseReport {
  PqCase pq;
  GroupPtr group;
  std::vector<LabeledSubgroup> catalog;
  std::vector<PermSubgroup> enumerated;  // of the case's subgroup type
  ClassificationReport report;           // over the catalog subgroups
  std::vector<LawVerdict> verdicts;
  std::vector<std::string> observations;
  bool cross_checked = false;  // compared against the full enumeration
};

struct PqOptions {
  EnumerateOptions enumerate;
  std::optional<bool> cross_check;  // unset: enabled when pq <= kCrossCheckMaxOrder
};

/// Largest order at which verification enumerates by default.
inline constexpr long long kCrossCheckMaxOrder = 63;

inline bool cross_check_enabled(const PqOptions& options, long long p, long long q) {
  return options.cross_check.value_or(p * q <= kCrossCheckMaxOrder);
}

namespace detail {

inline std::string enumerated_type_name(const PqCase& c) {
  if (!c.subgroups_metacyclic()) return "C" + std::to_string(c.p * c.q);
  return c.q == 2 ? "D" + std::to_string(c.p) : "M" + std::to_string(c.p * c.q);
}

}  // namespace detail

/// Checks every structural claim for one case. `all_subgroups` is the full
/// enumeration for the case's G, computed here when null and cross-checking
/// is enabled.
inline PqCaseReport verify_case(const PqCase& c, const std::vector<PermSubgroup>* all_subgroups = nullptr,
                                const PqOptions& pq_options = {}) {
  const EnumerateOptions& options = pq_options.enumerate;
  PqCaseReport r;
  r.pq = c;
  r.group = pq_group(c);
  const FiniteGroup& G = *r.group;
  const long long p = c.p, q = c.q, g = c.g;
  const detail::PqCoords X{p, q};
  const Elem sigma = X.at(1, 0);
  r.catalog = catalog_subgroups(c, r.group);

  static const GroupCatalog builtin;
  const GroupCatalog& types = options.catalog ? *options.catalog : builtin;
  r.cross_checked = all_subgroups || cross_check_enabled(pq_options, p, q);
  const std::string want_type = detail::enumerated_type_name(c);
  if (r.cross_checked) {
    std::vector<PermSubgroup> all = all_subgroups ? *all_subgroups : enumerate_regular_gstable(r.group, options);
    for (auto& N : all) {
      if (types.identify(abstract_group(N)) == want_type) r.enumerated.push_back(N);
    }
  }

  std::vector<PermSubgroup> cat;
  std::vector<std::string> labels;
  for (const auto& s : r.catalog) {
    cat.push_back(s.subgroup);
    labels.push_back(s.label);
  }
  r.report = build_report(r.group, cat, types, labels);
  const auto& rep = r.report;

  std::map<std::string, std::size_t> at;  // catalog label -> report index
  for (std::size_t i = 0; i < rep.subgroups.size(); ++i) at[rep.labels[i]] = i;
  auto family = [&](const std::string& fam, long long s = -1, long long t = -1) {
    std::vector<std::size_t> idx;
    for (const auto& e : r.catalog) {
      if (e.family == fam && (s < 0 || e.s == s) && (t < 0 || e.t == t)) idx.push_back(at.at(e.label));
    }
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  r.verdicts.reserve(32);  // verdict references stay valid
  auto entry_of = [&](std::size_t i) -> const LabeledSubgroup& {
    for (const auto& e : r.catalog) {
      if (e.label == rep.labels[i]) return e;
    }
    throw Error(ErrorCode::BadInput, "unlabeled subgroup " + rep.labels[i]);
  };
  auto verdict = [&](std::string name) -> LawVerdict& {
    r.verdicts.emplace_back();
    r.verdicts.back().name = std::move(name);
    return r.verdicts.back();
  };
  auto sub = [&](std::size_t i) -> const PermSubgroup& { return rep.subgroups[i]; };
  auto lbl = [&](std::size_t i) { return rep.labels[i]; };

  verdict("catalog_count_formula").check(r.catalog.size() == expected_subgroup_count(c), [&] {
    return std::to_string(r.catalog.size()) + " != " + std::to_string(expected_subgroup_count(c));
  });
  {
    auto& v = verdict("catalog_subgroups_distinct");
    std::set<PermSubgroup> uniq(cat.begin(), cat.end());
    v.check(uniq.size() == cat.size(), [&] { return std::to_string(cat.size() - uniq.size()) + " duplicates"; });
  }
  {
    auto& v = verdict("catalog_regular_g_stable_typed");
    for (std::size_t i = 0; i < rep.subgroups.size(); ++i) {
      v.check(sub(i).regular() && sub(i).g_stable() && rep.invariants[i].type == want_type, [&] { return lbl(i); });
    }
  }
  {
    auto& v = verdict("catalog_matches_enumeration");
    v.applicable = r.cross_checked;
    std::vector<PermSubgroup> sorted_cat = rep.subgroups;
    if (v.applicable) v.check(sorted_cat == r.enumerated, [&] {
      return "catalog " + std::to_string(sorted_cat.size()) + " vs enumeration " + std::to_string(r.enumerated.size());
    });
  }
  {
    auto& v = verdict("partition_laws");
    for (const auto& l : rep.laws) v.check(l.holds, [&] { return l.name + ": " + l.witness; });
  }
  {
    auto& v = verdict("catalog_brace_matches_subgroup_brace");
    const auto braces = catalog_braces_all(p, q, c.split() ? std::optional<long long>(g) : std::nullopt);
    for (const auto& s : r.catalog) {
      const std::string want = expected_brace_label(s, c);
      auto it = std::find_if(braces.begin(), braces.end(), [&](const LabeledBrace& b) { return b.label == want; });
      v.check(it != braces.end() && braces_isomorphic(brace_from_subgroup(s.subgroup), it->brace).has_value(),
              [&] { return s.label + " vs " + want; });
    }
  }
  auto same = [](const std::vector<std::size_t>& of, std::size_t a, std::size_t b) { return of[a] == of[b]; };
  auto class_is = [&](const std::vector<std::size_t>& of, const std::vector<std::size_t>& members) {
    // members form exactly one whole class
    std::size_t cls = of[members.front()];
    std::size_t count = std::count(of.begin(), of.end(), cls);
    return count == members.size() &&
           std::all_of(members.begin(), members.end(), [&](std::size_t m) { return of[m] == cls; });
  };

  switch (c.tag) {
    case PqTag::Inert:
    case PqTag::CyclicOnCyclic: {
      verdict("unique_subgroup_is_rho_equals_lambda")
          .check(rep.subgroups.size() == 1 && sub(0) == rho_subgroup(r.group) && sub(0) == lambda_subgroup(r.group),
                 [] { return std::string("rho(G) != lambda(G) or extra subgroups"); });
      break;
    }
    case PqTag::MetacyclicOnCyclic: {
      const auto Nt = family("N_t"), Ntp = family("N_t'");
      auto& giso = verdict("m_on_c_g_isomorphism_classes");
      giso.check(class_is(rep.giso_class_of, Nt), [] { return std::string("N_t not one G-iso class"); });
      for (std::size_t a : Ntp) {
        giso.check(class_is(rep.giso_class_of, {a}), [&] { return lbl(a) + " G-isomorphic to another subgroup"; });
      }
      auto& brace = verdict("m_on_c_two_brace_classes");
      brace.check(rep.brace_classes.size() == 2 && class_is(rep.brace_class_of, Nt) && class_is(rep.brace_class_of, Ntp),
                  [] { return std::string("brace classes differ from {N_t}, {N_t'}"); });
      auto& pts = verdict("m_on_c_rho_point_counts");
      for (std::size_t a : Nt) pts.check(rep.invariants[a].rho_points == static_cast<std::size_t>(p), [&] { return lbl(a); });
      for (std::size_t a : Ntp) pts.check(rep.invariants[a].rho_points == static_cast<std::size_t>(q), [&] { return lbl(a); });
      auto& size = verdict("m_on_c_class_size");
      for (const auto& info : rep.brace_info) {
        size.check(info.members.size() == static_cast<std::size_t>(q - 1) &&
                       info.predicted_size == info.members.size(),
                   [&] { return "class of " + lbl(info.members.front()); });
      }
      auto& opp = verdict("m_on_c_opposite_pairing");
      for (long long t = 1; t <= q - 1; ++t) {
        const std::size_t a = family("N_t", -1, t).front(), b = family("N_t'", -1, t).front();
        opp.check(opposite_subgroup(sub(a)) == sub(b), [&] { return "t=" + std::to_string(t); });
      }
      // theta(eta) = eta, theta(pi_1) = pi_t^e extends to a G-isomorphism
      // exactly when t e = 1 mod q.
      auto& wit = verdict("m_on_c_witness_exponent");
      const Perm eta = lambda_of(G, sigma);
      const Perm pi1 = X.perm([&](long long u, long long v) { return std::pair{u * g, v - 1}; });
      for (long long t = 1; t <= q - 1; ++t) {
        const Perm pit = X.perm([&](long long u, long long v) { return std::pair{u * mod::pow(g, t, p), v - 1}; });
        const std::size_t b = family("N_t", -1, t).front();
        const long long e = *mod::inverse(t, q);
        const std::pair<Perm, Perm> pairs[] = {{eta, eta}, {pi1, pit.pow(e)}};
        wit.check(g_isomorphic(sub(family("N_t", -1, 1).front()), sub(b), pairs).has_value(),
                  [&] { return "t=" + std::to_string(t) + " e=" + std::to_string(e); });
        long long geometric = 0;
        for (long long k = 0; k < t; ++k) geometric += mod::pow(g, k, p);
        const std::pair<Perm, Perm> lit[] = {{eta, eta}, {pi1, pit.pow(geometric)}};
        const bool works = g_isomorphic(sub(family("N_t", -1, 1).front()), sub(b), lit).has_value();
        r.observations.push_back("t=" + std::to_string(t) + ": exponent 1+g+...+g^(t-1)=" + std::to_string(geometric) +
                                 (works ? " gives" : " does not give") + " a G-isomorphism N_1 -> N_t; t^-1 mod q=" +
                                 std::to_string(e) + " does");
      }
      break;
    }
    case PqTag::CyclicOnMetacyclic: {
      auto& conj = verdict("c_on_m_rho_conjugation_indexing");
      const std::size_t n0 = family("N_s", 0).front();
      for (long long i = 0; i < p; ++i) {
        const long long s = mod::norm(i * (g - 1), p);
        const PermSubgroup M = conjugate_subgroup(sub(n0), rho_of(G, G.pow(sigma, -i)));
        conj.check(M == sub(family("N_s", s).front()), [&] { return "i=" + std::to_string(i); });
      }
      const auto all_s = family("N_s");
      verdict("c_on_m_single_brace_class").check(class_is(rep.brace_class_of, all_s), [] { return std::string(); });
      verdict("c_on_m_single_g_iso_class").check(class_is(rep.giso_class_of, all_s), [] { return std::string(); });
      verdict("c_on_m_single_rho_class").check(class_is(rep.rho_class_of, all_s), [] { return std::string(); });
      break;
    }
    case PqTag::MetacyclicOnMetacyclic: {
      const std::size_t lam = family("lambda").front(), rho = family("rho").front();
      auto& single = verdict("m_on_m_lambda_rho_singletons");
      single.check(class_is(rep.brace_class_of, {lam}) && class_is(rep.brace_class_of, {rho}),
                   [] { return std::string("brace class"); });
      single.check(class_is(rep.giso_class_of, {rho}), [] { return std::string("rho G-iso class"); });
      auto& fpf = verdict("m_on_m_fpf_endomorphisms");
      {
        const auto F = enumerate_abelian_fpf(G);
        // psi_st(sigma^u tau^v) = (sigma^s tau^t)^v
        auto psi_of = [&](long long s, long long t) {
          GroupHom psi{std::vector<Elem>(G.order())};
          for (std::size_t x = 0; x < G.order(); ++x) psi.images[x] = G.pow(X.at(s, t), X.v(x));
          return psi;
        };
        std::set<GroupHom> expected;
        for (long long t = 2; t <= q - 1; ++t) {
          for (long long s = 0; s < p; ++s) expected.insert(psi_of(s, t));
        }
        std::set<GroupHom> nontrivial;
        std::size_t trivial = 0;
        for (const auto& e : F) {
          if (e.trivial) {
            ++trivial;
          } else {
            nontrivial.insert(e.psi);
          }
        }
        fpf.check(trivial == 1, [] { return std::string("trivial endomorphism missing"); });
        fpf.check(nontrivial == expected, [&] {
          return std::to_string(nontrivial.size()) + " nontrivial vs " + std::to_string(expected.size());
        });
        for (long long t = 2; t <= q - 1; ++t) {
          for (long long s = 0; s < p; ++s) {
            const GroupHom psi = psi_of(s, t);
            fpf.check(alpha_subgroup(r.group, psi) == sub(family("N_st", s, t).front()),
                      [&] { return "alpha image of psi_" + std::to_string(s) + "," + std::to_string(t); });
          }
        }
      }
      auto& giso = verdict("m_on_m_g_isomorphism_classes");
      for (std::size_t a : family("N_st")) {
        giso.check(same(rep.giso_class_of, a, lam), [&] { return lbl(a) + " not G-isomorphic to lambda(G)"; });
      }
      for (std::size_t a : family("N_st'")) {
        for (std::size_t b : family("N_st'")) {
          const bool same_t = entry_of(a).t == entry_of(b).t;
          giso.check(same(rep.giso_class_of, a, b) == same_t, [&] { return lbl(a) + " vs " + lbl(b); });
        }
        giso.check(!same(rep.giso_class_of, a, lam), [&] { return lbl(a) + " G-isomorphic to lambda(G)"; });
      }
      auto& pts = verdict("m_on_m_rho_point_counts");
      for (std::size_t a : family("N_st")) pts.check(rep.invariants[a].rho_points == 1, [&] { return lbl(a); });
      for (std::size_t a : family("N_st'")) {
        pts.check(rep.invariants[a].rho_points == static_cast<std::size_t>(q), [&] { return lbl(a); });
      }
      auto& conj = verdict("m_on_m_rho_conjugation_indexing");
      auto& opp = verdict("m_on_m_opposite_pairing");
      auto& brace = verdict("m_on_m_brace_classes_by_t");
      for (long long t = 2; t <= q - 1; ++t) {
        const std::size_t n0 = family("N_st", 0, t).front();
        for (long long i = 0; i < p; ++i) {
          const long long s = mod::norm(i * (1 - mod::pow(g, t, p)), p);
          conj.check(conjugate_subgroup(sub(n0), rho_of(G, G.pow(sigma, -i))) == sub(family("N_st", s, t).front()),
                     [&] { return "t=" + std::to_string(t) + " i=" + std::to_string(i); });
        }
        // The opposites of a rho-class are rho(sigma^s) N_0t' rho(sigma^-s), s = 0..p-1.
        std::set<PermSubgroup> literal;
        const std::size_t o0 = family("N_st'", 0, t).front();
        for (long long s = 0; s < p; ++s) literal.insert(conjugate_subgroup(sub(o0), rho_of(G, G.pow(sigma, -s))));
        std::set<PermSubgroup> fam;
        for (std::size_t a : family("N_st'", -1, t)) fam.insert(sub(a));
        conj.check(literal == fam, [&] { return "opposite family t=" + std::to_string(t); });
        for (long long s = 0; s < p; ++s) {
          const std::size_t a = family("N_st", s, t).front(), b = family("N_st'", s, t).front();
          opp.check(opposite_subgroup(sub(a)) == sub(b), [&] { return lbl(a); });
        }
        brace.check(class_is(rep.brace_class_of, family("N_st", -1, t)) &&
                        class_is(rep.brace_class_of, family("N_st'", -1, t)),
                    [&] { return "t=" + std::to_string(t); });
      }
      break;
    }
  }
  return r;
}

struct PqVerification {
  long long p = 0, q = 0, g = 0;
  std::vector<PqCaseReport> cases;
  std::vector<LabeledBrace> braces;
  std::size_t brace_classes = 0;
  std::size_t expected_brace_classes = 0;
  std::vector<LawVerdict> verdicts;  // brace-level checks across all cases
  bool cross_checked = false;

  bool all_hold() const {
    if (!braceforge::all_hold(verdicts)) return false;
    for (const auto& c : cases) {
      if (!braceforge::all_hold(c.verdicts)) return false;
    }
    return true;
  }
};

/// All cases for (p, q) plus the brace catalog. With cross-checking, the
/// catalog is compared against the braces of every enumerated subgroup of
/// both groups of order pq.
inline PqVerification verify_pq(long long p, long long q, std::optional<long long> g = std::nullopt,
                                const PqOptions& options = {}) {
  PqVerification v;
  v.p = p;
  v.q = q;
  const auto cases = pq_cases(p, q, g);
  v.g = cases.front().g;
  v.cross_checked = cross_check_enabled(options, p, q);
  std::map<bool, std::vector<PermSubgroup>> enumerated;  // keyed by "G metacyclic"
  for (const auto& c : cases) {
    const std::vector<PermSubgroup>* all = nullptr;
    if (v.cross_checked) {
      if (!enumerated.count(c.group_is_metacyclic())) {
        enumerated[c.group_is_metacyclic()] = enumerate_regular_gstable(pq_group(c), options.enumerate);
      }
      all = &enumerated[c.group_is_metacyclic()];
    }
    v.cases.push_back(verify_case(c, all, options));
  }
  v.braces = catalog_braces_all(p, q, g);
  std::vector<SkewBrace> bs;
  for (const auto& b : v.braces) bs.push_back(b.brace);
  v.brace_classes = count_brace_classes(bs);
  v.expected_brace_classes = cases.front().split() ? static_cast<std::size_t>(2 * q + 2) : 1;

  v.verdicts.reserve(8);
  auto verdict = [&](std::string name) -> LawVerdict& {
    v.verdicts.emplace_back();
    v.verdicts.back().name = std::move(name);
    return v.verdicts.back();
  };
  auto& axioms = verdict("catalog_braces_satisfy_axioms");
  for (const auto& b : v.braces) {
    axioms.check(!brace_relation_witness(b.brace).has_value(), [&] { return b.label; });
  }
  verdict("catalog_brace_class_count").check(v.brace_classes == v.expected_brace_classes && bs.size() == v.brace_classes, [&] {
    return std::to_string(v.brace_classes) + " classes from " + std::to_string(bs.size()) + " braces, expected " +
           std::to_string(v.expected_brace_classes);
  });
  auto& opp = verdict("catalog_opposite_tables");
  auto find = [&](const std::string& label) -> const SkewBrace* {
    for (const auto& b : v.braces) {
      if (b.label == label) return &b.brace;
    }
    return nullptr;
  };
  std::vector<std::pair<std::string, std::string>> pairs;
  if (cases.front().split()) {
    pairs.emplace_back("M_on_C", "M_on_C'");
    for (long long t = 2; t <= q - 1; ++t) {
      pairs.emplace_back("M_on_M[t=" + std::to_string(t) + "]", "M_on_M'[t=" + std::to_string(t) + "]");
    }
  }
  for (const auto& [a, b] : pairs) {
    const SkewBrace* A = find(a);
    const SkewBrace* B = find(b);
    opp.check(A && B && opposite_brace_alternate(*A) == *B && braces_isomorphic(opposite_brace(*A), *B).has_value(),
              [&] { return a + " / " + b; });
  }
  // Every brace of an enumerated subgroup is isomorphic to exactly one
  // catalog brace, and every catalog brace occurs.
  auto& cover = verdict("catalog_braces_match_enumeration");
  cover.applicable = v.cross_checked;
  std::vector<bool> hit(bs.size(), !v.cross_checked);
  for (const auto& [meta, list] : enumerated) {
    for (const auto& N : list) {
      const SkewBrace B = brace_from_subgroup(N);
      std::size_t matches = 0;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        if (braces_isomorphic(B, bs[i])) {
          ++matches;
          hit[i] = true;
        }
      }
      cover.check(matches == 1, [&] { return std::to_string(matches) + " catalog matches for a subgroup brace"; });
    }
  }
  for (std::size_t i = 0; i < bs.size(); ++i) cover.check(hit[i], [&] { return v.braces[i].label + " never occurs"; });
  return v;
}

/// Order-independent summary of a verification: per case, the sorted class
/// sizes of each partition and the sorted rho-point counts.
inline std::vector<std::vector<std::size_t>> pq_signature(const PqVerification& v) {
  std::vector<std::vector<std::size_t>> sig;
  for (const auto& c : v.cases) {
    for (const auto* part : {&c.report.brace_classes, &c.report.giso_classes, &c.report.rho_classes}) {
      std::vector<std::size_t> sizes;
      for (const auto& cls : *part) sizes.push_back(cls.size());
      std::sort(sizes.begin(), sizes.end());
      sig.push_back(std::move(sizes));
    }
    std::vector<std::size_t> pts;
    for (const auto& inv : c.report.invariants) pts.push_back(inv.rho_points);
    std::sort(pts.begin(), pts.end());
    sig.push_back(std::move(pts));
  }
  sig.push_back({v.brace_classes});
  return sig;
}

}  // namespace braceforge
