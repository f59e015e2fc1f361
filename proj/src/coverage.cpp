#include "caforge/coverage.hpp"

#include <algorithm>
#include <atomic>

#include <omp.h>

#include "caforge/combinations.hpp"

namespace caforge {

namespace {

// Marks the orbits hit by the rows on `cols`; returns the number marked.
std::size_t mark_column_set(const Array& a, std::span<const std::uint32_t> cols, const OrbitTable& table,
                            std::vector<std::uint8_t>& mask) {
  std::fill(mask.begin(), mask.end(), 0);
  const std::size_t want = mask.size();
  const unsigned v = table.v();
  const std::size_t k = a.cols();
  const Symbol* base = a.data();
  std::size_t hit = 0;
  for (std::size_t r = 0; r < a.rows() && hit < want; ++r) {
    const Symbol* row = base + r * k;
    std::uint32_t rank = 0;
    for (auto c : cols) rank = rank * v + row[c];
    const std::int64_t idx = table.orbit_index(table.canonical(rank));
    if (idx >= 0 && !mask[idx]) {
      mask[idx] = 1;
      ++hit;
    }
  }
  return hit;
}

void emit_unmarked(std::span<const std::uint32_t> cols, const OrbitTable& table,
                   const std::vector<std::uint8_t>& mask, std::vector<Interaction>& out, std::uint64_t cap) {
  const auto& reps = table.representatives();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (mask[i]) continue;
    Interaction it;
    it.columns.assign(cols.begin(), cols.end());
    it.symbols.resize(table.t());
    tuple_unrank(reps[i], table.v(), it.symbols);
    out.push_back(std::move(it));
    if (out.size() > cap) return;
  }
}

struct Chunk {
  std::uint64_t first = 0;
  std::uint64_t count = 0;
  std::vector<Interaction> items;
  bool complete = false;
};

// Scans column sets [first, first+count) and stops after more than `cap`
// items, or when `stop` reports that other chunks already exceeded the cap.
bool scan_range(const Array& a, const OrbitTable& table, std::uint64_t first, std::uint64_t count,
                std::uint64_t cap, std::vector<Interaction>& out, const std::atomic<bool>* stop) {
  std::vector<std::uint8_t> mask(table.representatives().size());
  ColumnSetCursor cur(table.params().k, table.t(), first);
  for (std::uint64_t i = 0; i < count; ++i, cur.next()) {
    if (stop && stop->load(std::memory_order_relaxed)) return false;
    const auto cols = cur.current();
    if (mark_column_set(a, cols, table, mask) == mask.size()) continue;
    emit_unmarked(cols, table, mask, out, cap);
    if (out.size() > cap) return true;
  }
  return true;
}

CoverageReport finish(std::vector<Interaction> items, std::uint64_t cap) {
  CoverageReport rep;
  rep.truncated = items.size() > cap;
  rep.uncovered_count = items.size();
  rep.uncovered = std::move(items);
  return rep;
}

}  // namespace

void check_array(const Array& array, const Parameters& p) {
  p.validate();
  if (array.rows() > 0 && array.cols() != p.k)
    throw InvalidArgument("array has " + std::to_string(array.cols()) + " columns, expected " +
                          std::to_string(p.k));
  for (std::size_t r = 0; r < array.rows(); ++r)
    for (Symbol s : array.row(r))
      if (s >= p.v) throw InvalidArgument("symbol " + std::to_string(s) + " out of range");
}

std::uint64_t total_orbits(const OrbitTable& table) {
  const auto& p = table.params();
  return binomial_u64(p.k, p.t) * table.representatives().size();
}

CoverageReport uncovered_list_serial(const Array& array, const OrbitTable& table, std::uint64_t cap) {
  check_array(array, table.params());
  const auto& p = table.params();
  std::vector<Interaction> items;
  scan_range(array, table, 0, binomial_u64(p.k, p.t), cap, items, nullptr);
  return finish(std::move(items), cap);
}

CoverageReport uncovered_list(const Array& array, const OrbitTable& table, std::uint64_t cap) {
  check_array(array, table.params());
  const auto& p = table.params();

  const std::uint64_t sets = binomial_u64(p.k, p.t);
  const int threads = omp_get_max_threads();
  if (threads <= 1 || sets < 64) return uncovered_list_serial(array, table, cap);

  const std::uint64_t nchunks = std::min<std::uint64_t>(sets, static_cast<std::uint64_t>(threads) * 16);
  std::vector<Chunk> chunks(nchunks);
  for (std::uint64_t i = 0; i < nchunks; ++i) {
    chunks[i].first = sets * i / nchunks;
    chunks[i].count = sets * (i + 1) / nchunks - chunks[i].first;
  }

  std::atomic<std::uint64_t> found{0};
  std::atomic<bool> stop{false};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(nchunks); ++i) {
    Chunk& ch = chunks[i];
    if (stop.load(std::memory_order_relaxed)) continue;
    ch.complete = scan_range(array, table, ch.first, ch.count, cap, ch.items, &stop);
    if (found.fetch_add(ch.items.size()) + ch.items.size() > cap) stop.store(true);
  }

  // Merge in chunk order; a chunk skipped or interrupted before the cap was
  // reached in order is rescanned here so the result matches the serial scan.
  std::vector<Interaction> items;
  for (auto& ch : chunks) {
    if (!ch.complete) {
      ch.items.clear();
      scan_range(array, table, ch.first, ch.count, cap - items.size(), ch.items, nullptr);
    }
    for (auto& it : ch.items) {
      items.push_back(std::move(it));
      if (items.size() > cap) return finish(std::move(items), cap);
    }
  }
  return finish(std::move(items), cap);
}

CoverageReport uncovered_list(const Array& array, const Parameters& p, GroupKind group, std::uint64_t cap) {
  return uncovered_list(array, OrbitTable(p, group), cap);
}

bool verify_covering_array(const Array& array, const Parameters& p) {
  return uncovered_list(array, OrbitTable(p, GroupKind::trivial), 0).uncovered_count == 0;
}

std::optional<Interaction> first_uncovered(const Array& array, const Parameters& p) {
  auto rep = uncovered_list(array, OrbitTable(p, GroupKind::trivial), 0);
  if (rep.uncovered.empty()) return std::nullopt;
  return rep.uncovered.front();
}

std::uint64_t count_new_coverage(const Array& prior, std::span<const Symbol> row, const OrbitTable& table) {
  const auto& p = table.params();
  if (row.size() != p.k) throw InvalidArgument("row length must equal k");
  check_array(prior, p);
  const unsigned v = table.v();
  std::uint64_t fresh = 0;
  ColumnSetCursor cur(p.k, p.t);
  do {
    const auto cols = cur.current();
    std::uint32_t rank = 0;
    for (auto c : cols) rank = rank * v + row[c];
    const std::uint32_t target = table.canonical(rank);
    if (table.orbit_index(target) < 0) continue;
    bool seen = false;
    for (std::size_t r = 0; r < prior.rows() && !seen; ++r) {
      std::uint32_t pr = 0;
      for (auto c : cols) pr = pr * v + prior.at(r, c);
      seen = table.canonical(pr) == target;
    }
    fresh += !seen;
  } while (cur.next());
  return fresh;
}

}  // namespace caforge
