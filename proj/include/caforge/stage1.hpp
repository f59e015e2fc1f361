#pragma once

#include <cstdint>
#include <vector>

#include "caforge/core.hpp"
#include "caforge/coverage.hpp"
#include "caforge/groups.hpp"

namespace caforge {

struct Stage1Config {
  std::uint64_t n = 0;  // rows
  double r = 0;         // accept once at most floor(r) orbits remain uncovered
  unsigned max_retries = 20;
  std::uint64_t seed = 0;
};

struct Stage1Result {
  Array array;
  CoverageReport report;
  unsigned attempts = 0;
  std::uint64_t resamples = 0;  // Moser-Tardos only
};

/// Draws uniform n x k arrays until one leaves at most floor(r) orbits
/// uncovered. Attempt i draws from stream (seed, stage1_attempt, i).
/// Throws RetriesExhausted after max_retries attempts.
Stage1Result rand_first_stage(const Parameters& p, GroupKind group, const Stage1Config& cfg);

/// Rows used by the Moser-Tardos construction: the Godbole-Skipper-Sunley
/// count with the per-orbit log base and orbit count under a group action.
std::uint64_t mt_rows(const Parameters& p, GroupKind group);

struct MtResult {
  Array array;  // covers every full orbit; develop over the group to finish
  std::uint64_t resamples = 0;
};

inline constexpr std::uint64_t kDefaultIterationCap = 1'000'000;

/// Moser-Tardos resampling: scan orbits in a fixed order (column sets
/// lexicographically, tuples by rank); on the first uncovered one, redraw
/// all entries of its t columns and restart the scan.
MtResult mt_construct(const Parameters& p, GroupKind group, std::uint64_t seed,
                      std::uint64_t iteration_cap = kDefaultIterationCap);

/// A set of m orbit representatives (canonical tuple ranks).
struct TupleSubset {
  std::vector<std::uint32_t> ranks;

  /// The m lowest-ranked full-orbit representatives.
  static TupleSubset first(const OrbitTable& table, std::uint64_t m);
};

/// Moser-Tardos restricted to the subset: resample until every column set
/// covers every orbit of `subset`, then report what remains uncovered.
Stage1Result mt_first_stage(const Parameters& p, GroupKind group, const TupleSubset& subset, std::uint64_t n,
                            std::uint64_t seed, std::uint64_t iteration_cap = kDefaultIterationCap);

}  // namespace caforge
