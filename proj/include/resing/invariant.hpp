#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "resing/field.hpp"

namespace resing {

/// One ambient-dimension level of the resolution invariant.
struct InvariantLevel {
  Rational order;
  std::uint32_t exceptional_count = 0;

  friend bool operator==(const InvariantLevel&, const InvariantLevel&) = default;
  friend std::strong_ordering operator<=>(const InvariantLevel& a, const InvariantLevel& b) {
    if (a.order < b.order) return std::strong_ordering::less;
    if (b.order < a.order) return std::strong_ordering::greater;
    return a.exceptional_count <=> b.exceptional_count;
  }
};

/// (inv_n; inv_{n-1}; ...) preceded by the number of generators that are not
/// yet locally monomial. Compared lexicographically; a terminal chart has
/// pending == 0 and no levels, the global minimum.
struct ResolutionInvariant {
  std::uint32_t pending = 0;
  std::vector<InvariantLevel> levels;

  bool terminal() const { return pending == 0; }

  friend bool operator==(const ResolutionInvariant&, const ResolutionInvariant&) = default;
  friend std::strong_ordering operator<=>(const ResolutionInvariant& a, const ResolutionInvariant& b) {
    if (auto c = a.pending <=> b.pending; c != 0) return c;
    return std::lexicographical_compare_three_way(a.levels.begin(), a.levels.end(), b.levels.begin(),
                                                  b.levels.end());
  }

  std::string to_string() const {
    std::string out = "[" + std::to_string(pending) + ";";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      out += (i ? "; (" : " (") + resing::to_string(levels[i].order) + "," +
             std::to_string(levels[i].exceptional_count) + ")";
    }
    return out + "]";
  }
};

}  // namespace resing
