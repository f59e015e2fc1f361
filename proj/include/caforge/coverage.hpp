#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>

#include "caforge/core.hpp"
#include "caforge/groups.hpp"

namespace caforge {

inline constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

/// Column sets times full orbits per column set.
std::uint64_t total_orbits(const OrbitTable& table);

/// Uncovered orbits of `array`, ordered by column-set rank then tuple rank.
///
/// Column sets are scanned one at a time with a mask of one flag per orbit,
/// so auxiliary memory is O(v^t + |uncovered|) whatever k is. The scan
/// stops once more than `cap` items have been found and sets `truncated`.
/// Column sets are split into chunks processed with OpenMP; the merge is in
/// chunk order, so the result does not depend on the thread count.
CoverageReport uncovered_list(const Array& array, const OrbitTable& table, std::uint64_t cap = kNoCap);
CoverageReport uncovered_list(const Array& array, const Parameters& p, GroupKind group,
                              std::uint64_t cap = kNoCap);

/// Single-threaded reference for uncovered_list; same output.
CoverageReport uncovered_list_serial(const Array& array, const OrbitTable& table,
                                     std::uint64_t cap = kNoCap);

/// True iff every t-way interaction appears in some row (no group action).
bool verify_covering_array(const Array& array, const Parameters& p);

/// First interaction, in scan order, that no row covers.
std::optional<Interaction> first_uncovered(const Array& array, const Parameters& p);

/// Orbits covered by `row` and by no row of `prior`.
std::uint64_t count_new_coverage(const Array& prior, std::span<const Symbol> row, const OrbitTable& table);

/// Throws InvalidArgument unless the array is n x k over [0, v).
void check_array(const Array& array, const Parameters& p);

}  // namespace caforge
