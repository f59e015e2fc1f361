#include "caforge/stage1.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "caforge/combinations.hpp"
#include "caforge/rng.hpp"

namespace caforge {

namespace {

std::uint64_t cap_of(double r) {
  if (!(r < 1.8e19)) return kNoCap;
  return static_cast<std::uint64_t>(std::floor(r));
}

// Scan state for one Moser-Tardos run. `wanted[i]` marks orbit index i of
// the table as one whose absence on a column set is a bad event.
class Resampler {
 public:
  Resampler(const OrbitTable& table, std::vector<std::uint8_t> wanted, Array& a, Rng& rng)
      : table_(table), wanted_(std::move(wanted)), a_(a), rng_(rng), seen_(wanted_.size()) {}

  std::uint64_t run(std::uint64_t cap) {
    const auto& p = table_.params();
    const std::uint64_t sets = binomial_u64(p.k, p.t);
    std::uint64_t frontier = 0;
    std::vector<std::uint32_t> dirty;
    std::uint64_t resamples = 0;
    for (;;) {
      bool clean = true;
      ColumnSetCursor cur(p.k, p.t);
      for (std::uint64_t idx = 0; idx < sets; ++idx, cur.next()) {
        const auto cols = cur.current();
        // column sets before the last bad event that avoid its columns are
        // still covered; the first bad event found is the same as a full rescan
        if (idx < frontier && !intersects(cols, dirty)) continue;
        if (satisfied(cols)) continue;
        if (resamples == cap)
          throw IterationCapExceeded("Moser-Tardos exceeded " + std::to_string(cap) + " resamples");
        resample(cols);
        ++resamples;
        frontier = idx;
        dirty.assign(cols.begin(), cols.end());
        clean = false;
        break;
      }
      if (clean) return resamples;
    }
  }

 private:
  static bool intersects(std::span<const std::uint32_t> a, const std::vector<std::uint32_t>& b) {
    for (auto x : a)
      for (auto y : b)
        if (x == y) return true;
    return false;
  }

  bool satisfied(std::span<const std::uint32_t> cols) {
    std::fill(seen_.begin(), seen_.end(), 0);
    const unsigned v = table_.v();
    for (std::size_t r = 0; r < a_.rows(); ++r) {
      const auto row = a_.row(r);
      std::uint32_t rank = 0;
      for (auto c : cols) rank = rank * v + row[c];
      const std::int64_t i = table_.orbit_index(table_.canonical(rank));
      if (i >= 0) seen_[i] = 1;
    }
    for (std::size_t i = 0; i < wanted_.size(); ++i)
      if (wanted_[i] && !seen_[i]) return false;
    return true;
  }

  void resample(std::span<const std::uint32_t> cols) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      for (auto c : cols) a_.at(r, c) = rng_.symbol(table_.v());
  }

  const OrbitTable& table_;
  std::vector<std::uint8_t> wanted_;
  Array& a_;
  Rng& rng_;
  std::vector<std::uint8_t> seen_;
};

}  // namespace

Stage1Result rand_first_stage(const Parameters& p, GroupKind group, const Stage1Config& cfg) {
  p.validate();
  if (cfg.r < 0) throw InvalidArgument("r must be non-negative");
  const OrbitTable table(p, group);
  const std::uint64_t cap = cap_of(cfg.r);
  for (unsigned attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Array a(cfg.n, p.k);
    Rng rng(cfg.seed, Stream::stage1_attempt, attempt);
    rng.fill(a, p.v);
    CoverageReport rep = uncovered_list(a, table, cap);
    if (!rep.truncated) return Stage1Result{std::move(a), std::move(rep), attempt + 1, 0};
  }
  throw RetriesExhausted("no " + std::to_string(cfg.n) + "-row array left at most " + std::to_string(cap) +
                         " orbits uncovered in " + std::to_string(cfg.max_retries) + " attempts");
}

std::uint64_t mt_rows(const Parameters& p, GroupKind group) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  p.validate();
  if (p.k < 2 * p.t) throw InvalidArgument("Moser-Tardos needs k >= 2t (" + p.str() + ")");
  const BigUint dep = binomial(p.k, p.t) - binomial(p.k - p.t, p.t);
  const BigUint per_set = orbit_count(Parameters{p.t, p.t, p.v}, group).full;
  const Real vt(ipow(p.v, p.t));
  const Real len(orbit_length(group, p.v));
  const Real l = boost::multiprecision::log1p(len / (vt - len));
  const Real n = (log(Real(dep)) + log(Real(per_set)) + 1) / l;
  return static_cast<std::uint64_t>(ceil(n));
}

MtResult mt_construct(const Parameters& p, GroupKind group, std::uint64_t seed, std::uint64_t iteration_cap) {
  const std::uint64_t n = mt_rows(p, group);
  const OrbitTable table(p, group);
  Array a(n, p.k);
  Rng rng(seed, Stream::moser_tardos);
  rng.fill(a, p.v);
  Resampler mt(table, std::vector<std::uint8_t>(table.representatives().size(), 1), a, rng);
  const std::uint64_t resamples = mt.run(iteration_cap);
  return MtResult{std::move(a), resamples};
}

TupleSubset TupleSubset::first(const OrbitTable& table, std::uint64_t m) {
  const auto& reps = table.representatives();
  if (m < 1 || m > reps.size()) throw InvalidArgument("subset size must lie in [1, orbits per column set]");
  return TupleSubset{std::vector<std::uint32_t>(reps.begin(), reps.begin() + static_cast<std::ptrdiff_t>(m))};
}

Stage1Result mt_first_stage(const Parameters& p, GroupKind group, const TupleSubset& subset, std::uint64_t n,
                            std::uint64_t seed, std::uint64_t iteration_cap) {
  p.validate();
  if (p.k < 2 * p.t) throw InvalidArgument("Moser-Tardos needs k >= 2t (" + p.str() + ")");
  const OrbitTable table(p, group);
  std::vector<std::uint8_t> wanted(table.representatives().size(), 0);
  for (auto r : subset.ranks) {
    if (r >= table.tuple_count() || table.orbit_index(r) < 0)
      throw InvalidArgument("subset entry is not a full-orbit representative");
    wanted[table.orbit_index(r)] = 1;
  }
  Array a(n, p.k);
  Rng rng(seed, Stream::moser_tardos);
  rng.fill(a, p.v);
  Resampler mt(table, std::move(wanted), a, rng);
  const std::uint64_t resamples = mt.run(iteration_cap);
  CoverageReport rep = uncovered_list(a, table, kNoCap);
  return Stage1Result{std::move(a), std::move(rep), 1, resamples};
}

}  // namespace caforge
