#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace braceforge {

/// Index of an element of a finite group (or a point of a permutation
/// domain). The identity of every FiniteGroup has index 0.
using Elem = std::uint16_t;

/// Largest supported group order / permutation degree.
inline constexpr std::size_t kMaxOrder = 255;

/// A permutation of {0, ..., n-1} stored as its image array. Composition
/// follows function notation: (a * b)[x] = a[b[x]], i.e. b acts first.
/// Perms order lexicographically by image array.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<Elem> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Elem x : images_) {
      if (x >= images_.size() || seen[x]) {
        throw Error(ErrorCode::BadInput, "image array is not a bijection");
      }
      seen[x] = true;
    }
  }

  static Perm identity(std::size_t n) {
    Perm p;
    p.images_.resize(n);
    std::iota(p.images_.begin(), p.images_.end(), Elem{0});
    return p;
  }

  // Builds from an image array already known to be a bijection.
  static Perm trusted(std::vector<Elem> images) {
    Perm p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Elem operator[](std::size_t x) const noexcept { return images_[x]; }
  std::span<const Elem> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x] != x) return false;
    }
    return true;
  }

  bool has_fixed_point() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x] == x) return true;
    }
    return false;
  }

  Perm inverse() const {
    std::vector<Elem> inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Elem>(x);
    return trusted(std::move(inv));
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    std::vector<Elem> out(b.images_.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = a.images_[b.images_[x]];
    return trusted(std::move(out));
  }

  std::size_t order() const {
    std::size_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (seen[x]) continue;
      std::size_t len = 0;
      for (std::size_t y = x; !seen[y]; y = images_[y]) {
        seen[y] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  Perm pow(long long k) const {
    std::size_t ord = order();
    long long e = k % static_cast<long long>(ord);
    if (e < 0) e += static_cast<long long>(ord);
    Perm result = identity(degree());
    for (long long i = 0; i < e; ++i) result = *this * result;
    return result;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(images_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<Elem> images_;
};

/// Conjugate phi^-1 * eta * phi.
inline Perm conjugate_by(const Perm& eta, const Perm& phi) { return phi.inverse() * eta * phi; }

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    auto imgs = p.images();
    std::string_view bytes(reinterpret_cast<const char*>(imgs.data()), imgs.size() * sizeof(Elem));
    return std::hash<std::string_view>{}(bytes);
  }
};

}  // namespace braceforge
