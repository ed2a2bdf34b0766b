#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "hom_search.hpp"
#include "modular.hpp"
#include "presets.hpp"

namespace braceforge {

struct CatalogEntry {
  std::string name;
  GroupPtr group;
};

/// Every isomorphism type of a given order, for the orders the engine knows
/// completely: 1..15, primes p, p^2, and pq with p > q primes. Callers may
/// register complete lists for further orders.
class GroupCatalog {
 public:
  bool supports(std::size_t n) const { return builtin_supports(n) || user_.count(n) > 0; }

  std::vector<CatalogEntry> groups_of_order(std::size_t n) const {
    if (builtin_supports(n)) return builtin(n);
    if (auto it = user_.find(n); it != user_.end()) return it->second;
    throw Error(ErrorCode::UnsupportedOrder,
                "no complete list of groups of order " + std::to_string(n) +
                    "; supply a Cayley table for every isomorphism type of that order");
  }

  /// Registers a user group. Groups isomorphic to one already registered for
  /// the same order are ignored.
  void add(const std::string& name, FiniteGroup g) {
    auto& list = user_[g.order()];
    for (const auto& e : list) {
      if (is_isomorphic(*e.group, g)) return;
    }
    list.push_back({name, std::make_shared<const FiniteGroup>(std::move(g))});
  }

  /// Catalog name of the isomorphism type of g, or "order-n" when the order
  /// is not covered.
  std::string identify(const FiniteGroup& g) const {
    if (!supports(g.order())) return "order-" + std::to_string(g.order());
    for (const auto& e : groups_of_order(g.order())) {
      if (is_isomorphic(*e.group, g)) return e.name;
    }
    return "order-" + std::to_string(g.order());
  }

  static bool builtin_supports(std::size_t n) {
    if (n >= 1 && n <= 15) return true;
    if (n > kMaxOrder) return false;
    auto f = factor(n);
    if (f.size() == 1) return true;                                // p
    if (f.size() == 2) return true;                                // p^2 or pq
    return false;
  }

 private:
  static std::vector<long long> factor(std::size_t n) {
    std::vector<long long> f;
    long long m = static_cast<long long>(n);
    for (long long d = 2; d * d <= m; ++d) {
      while (m % d == 0) {
        f.push_back(d);
        m /= d;
      }
    }
    if (m > 1) f.push_back(m);
    return f;
  }

  static CatalogEntry entry(std::string name, FiniteGroup g) {
    return {std::move(name), std::make_shared<const FiniteGroup>(std::move(g))};
  }

  static std::vector<CatalogEntry> builtin(std::size_t n) {
    std::vector<CatalogEntry> out;
    const std::string cn = "C" + std::to_string(n);
    switch (n) {
      case 1: out.push_back(entry("C1", cyclic_group(1))); return out;
      case 4:
        out.push_back(entry("C4", cyclic_group(4)));
        out.push_back(entry("C2xC2", preset_group("cyclic:2*cyclic:2")));
        return out;
      case 8:
        out.push_back(entry("C8", cyclic_group(8)));
        out.push_back(entry("C4xC2", preset_group("cyclic:4*cyclic:2")));
        out.push_back(entry("C2xC2xC2", preset_group("cyclic:2*cyclic:2*cyclic:2")));
        out.push_back(entry("D4", dihedral_group(4)));
        out.push_back(entry("Q8", preset_group("quaternion:8")));
        return out;
      case 9:
        out.push_back(entry("C9", cyclic_group(9)));
        out.push_back(entry("C3xC3", preset_group("cyclic:3*cyclic:3")));
        return out;
      case 12:
        out.push_back(entry("C12", cyclic_group(12)));
        out.push_back(entry("C6xC2", preset_group("cyclic:6*cyclic:2")));
        out.push_back(entry("A4", preset_group("alternating:4")));
        out.push_back(entry("D6", dihedral_group(6)));
        out.push_back(entry("Dic3", preset_group("dicyclic:3")));
        return out;
      default: break;
    }
    auto f = factor(n);
    if (f.size() == 1) {
      out.push_back(entry(cn, cyclic_group(n)));
    } else if (f[0] == f[1]) {
      const long long p = f[0];
      out.push_back(entry(cn, cyclic_group(n)));
      out.push_back(entry("C" + std::to_string(p) + "xC" + std::to_string(p),
                          direct_product(cyclic_group(static_cast<std::size_t>(p)),
                                         cyclic_group(static_cast<std::size_t>(p)))));
    } else {
      const long long q = f[0], p = f[1];
      out.push_back(entry(cn, cyclic_group(n)));
      if (p % q == 1) {
        const long long g = *mod::element_of_order(q, p);
        out.push_back(entry(q == 2 ? "D" + std::to_string(p) : "M" + std::to_string(n),
                            metacyclic_group(p, q, g)));
      }
    }
    return out;
  }

  std::map<std::size_t, std::vector<CatalogEntry>> user_;
};

}  // namespace braceforge
