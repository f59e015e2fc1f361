#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caforge/core.hpp"
#include "caforge/groups.hpp"
#include "caforge/stage1.hpp"

namespace caforge {

enum class Stage1Kind { rand, mt };
enum class Stage2Kind { naive, greedy, col, den };

std::string_view to_string(Stage1Kind s);
std::string_view to_string(Stage2Kind s);
Stage1Kind parse_stage1(std::string_view s);
Stage2Kind parse_stage2(std::string_view s);

struct RunSpec {
  Parameters p;
  Stage1Kind stage1 = Stage1Kind::rand;
  Stage2Kind stage2 = Stage2Kind::naive;
  double r_mult = 1;  // r = r_mult * rho under the group; infinity skips stage one
  GroupKind group = GroupKind::trivial;
  std::uint64_t seed = 0;
  bool verify = false;
  unsigned max_retries = 20;
  std::uint64_t iteration_cap = kDefaultIterationCap;
  std::optional<double> time_budget;  // seconds

  /// Throws InvalidArgument on a spec that cannot run.
  void validate() const;
};

struct RunReport {
  std::uint64_t n_stage1 = 0;
  std::uint64_t uncovered_after_stage1 = 0;
  std::uint64_t rows_stage2 = 0;
  std::uint64_t N_final = 0;
  double bound_predicted = 0;
  unsigned retries = 0;  // stage-one attempts beyond the first
  std::uint64_t resamples = 0;
  double wall_time = 0;
  std::optional<bool> verified;  // empty when verification was skipped
  std::uint64_t subset_size = 0;  // Moser-Tardos only
};

struct RunResult {
  Array array;
  RunReport report;
};

/// One two-stage construction: stage one, stage two on what it left
/// uncovered, development over the group, then optional verification of
/// every t-way interaction of the final array.
///
/// bound_predicted is the size the construction is held to. For a random
/// first stage it is |G| (x + min(r, O)) + s with x the unrounded first-stage
/// row count, O the full orbit count and s the constant rows, which for
/// r_mult = 1 is the closed-form two-stage bound of the group. The row count
/// and the accepted uncovered count are capped so that N_final never exceeds
/// its ceiling. For Moser-Tardos it is |G| (n + expected uncovered outside the subset) + s.
RunResult run(const RunSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "t,k,v,group,stage1,stage2,r_mult,seed,n_stage1,uncovered,rows_stage2,N_final,bound,verified,seconds";

/// Runs every spec in order and writes one CSV row each. A failed run keeps
/// its row with `error:<kind>` in the verified column. With timing off the
/// seconds column is 0, so equal grids give byte-identical output.
void benchmark(const std::vector<RunSpec>& grid, std::ostream& out, bool timing = true);

/// Grid file: stanzas of key=value lines separated by blank lines; '#'
/// starts a comment. Keys: t k v group stage1 stage2 r_mult seed verify
/// max_retries iteration_cap time_budget. A value may list alternatives
/// separated by commas, and integer keys accept a..b ranges; a stanza expands
/// to the cartesian product in the key order above.
std::vector<RunSpec> parse_grid(std::istream& in);

}  // namespace caforge
