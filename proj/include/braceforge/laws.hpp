#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace braceforge {

/// Outcome of checking one law over a finite collection of instances.
struct LawVerdict {
  std::string name;
  bool holds = true;
  bool applicable = true;
  std::size_t checked = 0;
  std::string witness;  // first violation, empty when the law holds

  /// `describe` yields the witness text and is only invoked on the first
  /// failure.
  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++checked;
    if (!ok && holds) {
      holds = false;
      witness = describe();
    }
  }
};

inline bool all_hold(const std::vector<LawVerdict>& laws) {
  for (const auto& l : laws) {
    if (!l.holds) return false;
  }
  return true;
}

}  // namespace braceforge
