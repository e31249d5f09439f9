#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "evomap/change.hpp"

namespace evomap {

/// Live op counts of one diff, grouped like a change-distribution table.
struct DiffStats {
  /// (row label, count) in table order; `add`, `del` and `map` cover all
  /// element types. The last row is the total.
  std::vector<std::pair<std::string, std::size_t>> rows;
  std::array<std::size_t, kOpKindCount> by_kind{};
  std::size_t basic = 0;
  std::size_t complex = 0;
  std::size_t total = 0;
};

DiffStats compute_stats(const DiffMapping& d);

/// Tab-separated report. With `basic` also given, appends the size
/// comparison block (sizes, basic/complex split, ratio in percent).
std::string format_stats(const DiffMapping& compact, const DiffMapping* basic = nullptr);

}  // namespace evomap
