#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace braceforge {

/// A finite group given by its multiplication table over element indices
/// 0..n-1, identity at index 0. Immutable once constructed; share it through
/// GroupPtr.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(1, {0}, "trivial") {}

  /// Assumes `table` is a valid group table with identity 0. Use
  /// group_from_table() for untrusted input.
  FiniteGroup(std::size_t n, std::vector<Elem> table, std::string label)
      : n_(n), table_(std::move(table)), label_(std::move(label)) {
    inv_.assign(n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        if (mul(static_cast<Elem>(x), static_cast<Elem>(y)) == 0) {
          inv_[x] = static_cast<Elem>(y);
          break;
        }
      }
    }
    orders_.assign(n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      Elem y = static_cast<Elem>(x);
      std::size_t k = 1;
      while (y != 0) {
        y = mul(y, static_cast<Elem>(x));
        ++k;
      }
      orders_[x] = k;
    }
    compute_generators();
  }

  std::size_t order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return table_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  std::size_t element_order(Elem a) const noexcept { return orders_[a]; }
  const std::string& label() const noexcept { return label_; }
  std::span<const Elem> table() const noexcept { return table_; }

  /// Greedy minimal generating sequence: each entry is the first element (in
  /// index order) outside the subgroup generated by the previous entries.
  const std::vector<Elem>& generators() const noexcept { return gens_; }

  Elem pow(Elem a, long long k) const {
    long long ord = static_cast<long long>(orders_[a]);
    long long e = ((k % ord) + ord) % ord;
    Elem r = 0;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  Elem conj(Elem g, Elem x) const noexcept { return mul(mul(g, x), inv(g)); }

  bool is_abelian() const noexcept {
    for (Elem a : gens_) {
      for (Elem b : gens_) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  std::vector<Elem> center() const {
    std::vector<Elem> z;
    for (std::size_t x = 0; x < n_; ++x) {
      bool central = true;
      for (Elem g : gens_) {
        if (mul(g, static_cast<Elem>(x)) != mul(static_cast<Elem>(x), g)) {
          central = false;
          break;
        }
      }
      if (central) z.push_back(static_cast<Elem>(x));
    }
    return z;
  }

  /// Named elements attached by presets ("sigma", "tau", ...).
  std::optional<Elem> named(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) return std::nullopt;
    return it->second;
  }
  const std::map<std::string, Elem>& names() const noexcept { return names_; }
  void set_name(const std::string& name, Elem e) { names_[name] = e; }

  /// Integer parameters attached by presets (p, q, g for metacyclic groups).
  std::optional<long long> param(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    return it->second;
  }
  void set_param(const std::string& key, long long value) { params_[key] = value; }

  void set_label(std::string label) { label_ = std::move(label); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  void compute_generators() {
    std::vector<bool> in(n_, false);
    in[0] = true;
    std::vector<Elem> members{0};
    for (std::size_t x = 0; x < n_; ++x) {
      if (in[x]) continue;
      gens_.push_back(static_cast<Elem>(x));
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (Elem g : gens_) {
          Elem y = mul(members[i], g);
          if (!in[y]) {
            in[y] = true;
            members.push_back(y);
          }
        }
      }
    }
  }

  std::size_t n_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<std::size_t> orders_;
  std::vector<Elem> gens_;
  std::string label_;
  std::map<std::string, Elem> names_;
  std::map<std::string, long long> params_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Validates an arbitrary n x n table (row-major or nested) and returns the
/// group with its identity relabelled to index 0.
inline FiniteGroup group_from_table(const std::vector<std::vector<long long>>& rows,
                                    std::string label = "table") {
  const std::size_t n = rows.size();
  if (n == 0 || n > kMaxOrder) {
    throw Error(ErrorCode::BadInput, "table order must be in 1.." + std::to_string(kMaxOrder));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::BadInput, "row " + std::to_string(i) + " has wrong length");
    }
    for (long long v : rows[i]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(ErrorCode::BadInput, "entry out of range in row " + std::to_string(i));
      }
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(rows[a][b]); };

  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = at(c, x) == x && at(x, c) == x;
    if (ok) e = c;
  }
  if (!e) throw Error(ErrorCode::NoIdentity, "no two-sided identity element");

  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row_seen[at(a, b)]) {
        throw Error(ErrorCode::NotLatinSquare, "row " + std::to_string(a) + " repeats " +
                                                   std::to_string(at(a, b)));
      }
      if (col_seen[at(b, a)]) {
        throw Error(ErrorCode::NotLatinSquare, "column " + std::to_string(a) + " repeats " +
                                                   std::to_string(at(b, a)));
      }
      row_seen[at(a, b)] = true;
      col_seen[at(b, a)] = true;
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    std::size_t right = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b) == *e) right = b;
    }
    if (at(right, a) != *e) {
      throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) +
                                            " has distinct left and right inverses");
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "," +
                                                     std::to_string(b) + "," +
                                                     std::to_string(c) + ")");
        }
      }
    }
  }

  // Swap labels e <-> 0.
  auto relabel = [&](std::size_t x) -> std::size_t {
    if (x == *e) return 0;
    if (x == 0) return *e;
    return x;
  };
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[relabel(a) * n + relabel(b)] = static_cast<Elem>(relabel(at(a, b)));
    }
  }
  return FiniteGroup(n, std::move(table), std::move(label));
}

/// Row-major table of `g`, as nested rows.
inline std::vector<std::vector<long long>> table_rows(const FiniteGroup& g) {
  std::vector<std::vector<long long>> rows(g.order(), std::vector<long long>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      rows[a][b] = g.mul(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }
  return rows;
}

// Left regular representation: lambda(g)[x] = g x.
inline Perm lambda_of(const FiniteGroup& G, Elem g) {
  std::vector<Elem> img(G.order());
  for (std::size_t x = 0; x < G.order(); ++x) img[x] = G.mul(g, static_cast<Elem>(x));
  return Perm::trusted(std::move(img));
}

// Right regular representation: rho(g)[x] = x g^-1, a homomorphism.
inline Perm rho_of(const FiniteGroup& G, Elem g) {
  std::vector<Elem> img(G.order());
  const Elem gi = G.inv(g);
  for (std::size_t x = 0; x < G.order(); ++x) img[x] = G.mul(static_cast<Elem>(x), gi);
  return Perm::trusted(std::move(img));
}

/// The action of G on Perm(G): ^g pi = lambda(g) pi lambda(g)^-1.
inline Perm conj_by_group(const FiniteGroup& G, Elem g, const Perm& pi) {
  std::vector<Elem> img(G.order());
  const Elem gi = G.inv(g);
  for (std::size_t x = 0; x < G.order(); ++x) {
    img[x] = G.mul(g, pi[G.mul(gi, static_cast<Elem>(x))]);
  }
  return Perm::trusted(std::move(img));
}

}  // namespace braceforge
