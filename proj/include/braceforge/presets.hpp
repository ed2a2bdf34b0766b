#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "modular.hpp"

namespace braceforge {

namespace detail {

inline long long parse_int(std::string_view s, std::string_view spec) {
  if (s.empty()) throw Error(ErrorCode::BadSpec, "missing integer in '" + std::string(spec) + "'");
  long long v = 0;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i == s.size()) throw Error(ErrorCode::BadSpec, "bad integer in '" + std::string(spec) + "'");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9' || v > 1'000'000'000) {
      throw Error(ErrorCode::BadSpec, "bad integer in '" + std::string(spec) + "'");
    }
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

inline std::vector<long long> parse_ints(std::string_view s, std::string_view spec) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(parse_int(s.substr(start, comma - start), spec));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline void check_order(long long n, std::string_view spec) {
  if (n < 1 || static_cast<std::size_t>(n) > kMaxOrder) {
    throw Error(ErrorCode::BadSpec, "order out of range in '" + std::string(spec) + "'");
  }
}

template <class Mul>
FiniteGroup tabulate(std::size_t n, Mul&& mul, std::string label) {
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>(mul(a, b));
  }
  return FiniteGroup(n, std::move(table), std::move(label));
}

// Group of permutations of `points` points, all of them or only the even ones.
inline FiniteGroup small_permutation_group(int points, bool even_only, std::string label) {
  std::vector<Elem> p(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) p[static_cast<std::size_t>(i)] = static_cast<Elem>(i);
  std::vector<Perm> elems;
  do {
    Perm perm = Perm::trusted(p);
    if (even_only) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    elems.push_back(std::move(perm));
  } while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const Perm& x) {
    return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
  };
  return tabulate(elems.size(), [&](std::size_t a, std::size_t b) { return index(elems[a] * elems[b]); },
                  std::move(label));
}

}  // namespace detail

inline FiniteGroup cyclic_group(std::size_t n) {
  FiniteGroup G = detail::tabulate(n, [n](std::size_t a, std::size_t b) { return (a + b) % n; },
                                   "cyclic:" + std::to_string(n));
  if (n > 1) G.set_name("c", 1);
  return G;
}

/// Elements sigma^u tau^v at index u + p v, with sigma of order p, tau of
/// order q and tau sigma tau^-1 = sigma^g. g = 1 gives the cyclic group of
/// order pq in the same coordinates.
inline FiniteGroup sigma_tau_group(long long p, long long q, long long g, std::string label) {
  const auto n = static_cast<std::size_t>(p * q);
  FiniteGroup G = detail::tabulate(n, [&](std::size_t a, std::size_t b) {
    long long u = static_cast<long long>(a) % p, v = static_cast<long long>(a) / p;
    long long k = static_cast<long long>(b) % p, l = static_cast<long long>(b) / p;
    long long nu = mod::norm(u + k * mod::pow(g, v, p), p);
    long long nv = (v + l) % q;
    return static_cast<std::size_t>(nu + p * nv);
  }, std::move(label));
  G.set_name("sigma", static_cast<Elem>(p > 1 ? 1 : 0));
  G.set_name("tau", static_cast<Elem>(q > 1 ? p : 0));
  G.set_param("p", p);
  G.set_param("q", q);
  G.set_param("g", g);
  return G;
}

/// Nonabelian group of order pq: q | p - 1 and g has order q modulo p.
inline FiniteGroup metacyclic_group(long long p, long long q, long long g) {
  const std::string label = "metacyclic:" + std::to_string(p) + "," + std::to_string(q) + "," +
                            std::to_string(g);
  if (!mod::is_prime(p) || !mod::is_prime(q)) {
    throw Error(ErrorCode::BadMetacyclicParams, label + " needs prime p and q");
  }
  if (static_cast<std::size_t>(p * q) > kMaxOrder) {
    throw Error(ErrorCode::BadSpec, label + " exceeds the supported order");
  }
  if (mod::order(g, p) != q) {
    throw Error(ErrorCode::BadMetacyclicParams,
                label + ": order of g modulo p is " + std::to_string(mod::order(g, p)) +
                    ", expected " + std::to_string(q));
  }
  return sigma_tau_group(p, q, mod::norm(g, p), label);
}

/// Order 2m: sigma^m = tau^2 = 1, tau sigma tau^-1 = sigma^-1; index u + m v.
inline FiniteGroup dihedral_group(long long m) {
  const auto n = static_cast<std::size_t>(2 * m);
  FiniteGroup G = detail::tabulate(n, [m](std::size_t a, std::size_t b) {
    long long u = static_cast<long long>(a) % m, v = static_cast<long long>(a) / m;
    long long k = static_cast<long long>(b) % m, l = static_cast<long long>(b) / m;
    long long nu = mod::norm(v ? u - k : u + k, m);
    return static_cast<std::size_t>(nu + m * ((v + l) % 2));
  }, "dihedral:" + std::to_string(m));
  if (m > 1) G.set_name("sigma", 1);
  G.set_name("tau", static_cast<Elem>(m));
  return G;
}

/// Order 4m: sigma^2m = 1, tau^2 = sigma^m, tau sigma tau^-1 = sigma^-1;
/// index u + 2m v. dicyclic:2 is the quaternion group.
inline FiniteGroup dicyclic_group(long long m, std::string label) {
  const long long s = 2 * m;
  const auto n = static_cast<std::size_t>(4 * m);
  FiniteGroup G = detail::tabulate(n, [m, s](std::size_t a, std::size_t b) {
    long long u = static_cast<long long>(a) % s, v = static_cast<long long>(a) / s;
    long long k = static_cast<long long>(b) % s, l = static_cast<long long>(b) / s;
    long long nu = v ? u - k : u + k;
    long long nv = v + l;
    if (nv == 2) {
      nu += m;
      nv = 0;
    }
    return static_cast<std::size_t>(mod::norm(nu, s) + s * nv);
  }, std::move(label));
  G.set_name("sigma", 1);
  G.set_name("tau", static_cast<Elem>(s));
  return G;
}

/// Direct product; (a, b) sits at index a + |A| b.
inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  const std::size_t na = A.order();
  return detail::tabulate(na * B.order(), [&](std::size_t x, std::size_t y) {
    Elem a = A.mul(static_cast<Elem>(x % na), static_cast<Elem>(y % na));
    Elem b = B.mul(static_cast<Elem>(x / na), static_cast<Elem>(y / na));
    return a + na * b;
  }, A.label() + "*" + B.label());
}

/// Builds a group from a spec string:
///   cyclic:n  dihedral:m  quaternion:8  dicyclic:m  metacyclic:p,q,g
///   alternating:n  symmetric:n  (n <= 5)   and products  A*B*...
inline FiniteGroup preset_group(std::string_view spec) {
  if (auto star = spec.find('*'); star != std::string_view::npos) {
    FiniteGroup left = preset_group(spec.substr(0, star));
    FiniteGroup right = preset_group(spec.substr(star + 1));
    if (left.order() * right.order() > kMaxOrder) {
      throw Error(ErrorCode::BadSpec, "product '" + std::string(spec) + "' is too large");
    }
    return direct_product(left, right);
  }
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::BadSpec, "expected name:args, got '" + std::string(spec) + "'");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  auto ints = detail::parse_ints(args, spec);

  auto one_arg = [&]() {
    if (ints.size() != 1) throw Error(ErrorCode::BadSpec, "expected one argument in '" + std::string(spec) + "'");
    return ints[0];
  };
  if (name == "cyclic") {
    long long n = one_arg();
    detail::check_order(n, spec);
    return cyclic_group(static_cast<std::size_t>(n));
  }
  if (name == "dihedral") {
    long long m = one_arg();
    if (m < 1) throw Error(ErrorCode::BadSpec, "dihedral needs m >= 1");
    detail::check_order(2 * m, spec);
    return dihedral_group(m);
  }
  if (name == "quaternion") {
    if (one_arg() != 8) throw Error(ErrorCode::BadSpec, "only quaternion:8 is supported");
    return dicyclic_group(2, "quaternion:8");
  }
  if (name == "dicyclic") {
    long long m = one_arg();
    if (m < 2) throw Error(ErrorCode::BadSpec, "dicyclic needs m >= 2");
    detail::check_order(4 * m, spec);
    return dicyclic_group(m, "dicyclic:" + std::to_string(m));
  }
  if (name == "metacyclic") {
    if (ints.size() != 3) throw Error(ErrorCode::BadSpec, "metacyclic needs p,q,g");
    return metacyclic_group(ints[0], ints[1], ints[2]);
  }
  if (name == "alternating" || name == "symmetric") {
    long long k = one_arg();
    if (k < 1 || k > 5) throw Error(ErrorCode::BadSpec, std::string(name) + " supports 1..5 points");
    return detail::small_permutation_group(static_cast<int>(k), name == "alternating",
                                           std::string(spec));
  }
  throw Error(ErrorCode::BadSpec, "unknown group family '" + std::string(name) + "'");
}

}  // namespace braceforge
