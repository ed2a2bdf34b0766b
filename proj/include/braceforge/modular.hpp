#pragma once

#include <cstdint>
#include <numeric>
#include <optional>

namespace braceforge::mod {

// Canonical residue in [0, m).
constexpr std::int64_t norm(std::int64_t a, std::int64_t m) noexcept {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t pow(std::int64_t base, std::int64_t exp, std::int64_t m) noexcept {
  std::int64_t result = 1 % m;
  base = norm(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

constexpr bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Inverse of a modulo m, if gcd(a, m) = 1.
constexpr std::optional<std::int64_t> inverse(std::int64_t a, std::int64_t m) noexcept {
  std::int64_t r0 = m, r1 = norm(a, m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return std::nullopt;
  return norm(s0, m);
}

// Multiplicative order of a modulo m; 0 when a is not a unit.
constexpr std::int64_t order(std::int64_t a, std::int64_t m) noexcept {
  a = norm(a, m);
  if (m == 1) return 1;
  if (std::gcd(a, m) != 1) return 0;
  std::int64_t x = a;
  std::int64_t k = 1;
  while (x != 1) {
    x = x * a % m;
    ++k;
  }
  return k;
}

// Smallest integer in [2, p) whose order modulo p is q, if one exists.
constexpr std::optional<std::int64_t> element_of_order(std::int64_t q, std::int64_t p) noexcept {
  for (std::int64_t g = 2; g < p; ++g) {
    if (order(g, p) == q) return g;
  }
  return std::nullopt;
}

}  // namespace braceforge::mod
