#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "caforge/core.hpp"
#include "caforge/groups.hpp"
#include "caforge/rng.hpp"

namespace caforge {

/// One row per item: the item's columns take its symbols, the rest are random.
Array naive_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng);

/// Online first-fit placement of items into rows with flexible cells.
///
/// Each item goes into the first row it is compatible with, fixing its
/// cells; under a group action the orbit member committed is the one that
/// agrees with the most already-fixed cells of that row (lowest group element
/// on ties). An item that fits nowhere opens a new row with t fixed cells.
class GreedyCover {
 public:
  explicit GreedyCover(const OrbitTable& table);

  void add(const Interaction& item);
  std::size_t rows() const { return rows_.size(); }
  const PartialArray& partial() const { return rows_; }
  /// Fills the remaining flexible cells uniformly at random.
  Array finish(Rng& rng) const;

 private:
  const OrbitTable& table_;
  PartialArray rows_;
  std::vector<Symbol> image_;
};

Array greedy_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng);

/// Vertices are committed orbit members; two vertices are adjacent when they
/// share a column that they assign different symbols. Neighbor lists are sorted.
struct IncompatibilityGraph {
  std::vector<Interaction> vertices;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::uint64_t m_edges = 0;

  std::size_t size() const { return vertices.size(); }
};

/// True when the two interactions share a column with different symbols.
bool conflicts(const Interaction& a, const Interaction& b);

/// Adds items in order. Under a group action each item is committed to the
/// orbit member with the fewest conflicts against the vertices already
/// committed (lowest tuple rank on ties) before its edges are added.
IncompatibilityGraph build_incompat_graph(std::span<const Interaction> items, const OrbitTable& table);

struct SmallestLast {
  std::vector<std::uint32_t> order;  // coloring order: reverse of removal
  unsigned degeneracy = 0;
};

/// Repeatedly removes a minimum-degree vertex (lowest index on ties).
SmallestLast smallest_last_order(const IncompatibilityGraph& g);

/// First-available-color greedy coloring along `order`; returns color per vertex.
std::vector<std::uint32_t> greedy_coloring(const IncompatibilityGraph& g, std::span<const std::uint32_t> order);

struct ColorCoverResult {
  Array rows;
  unsigned colors = 0;
  unsigned degeneracy = 0;
  std::vector<std::uint32_t> color_of;
};

/// Smallest-last greedy coloring; each color class becomes one row.
/// Throws InconsistentClass if a class does not merge into a single row.
ColorCoverResult color_cover(const IncompatibilityGraph& g, const OrbitTable& table, Rng& rng);

struct DensityResult {
  Array rows;
  std::vector<std::uint64_t> removed;   // items covered by each row
  std::vector<std::uint64_t> required;  // ceil(u * orbit_length / v^t) before each row
};

/// Conditional-expectation row construction. Starting from an all-flexible
/// row, repeatedly fixes the (column, symbol) that maximizes the expected
/// number of remaining items a uniform completion covers (lowest column,
/// then lowest symbol, on ties) until no column of a remaining item is
/// free; columns touching no item are filled at random. Throws
/// GuaranteeViolated if a row covers fewer than the required count.
DensityResult density_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng);

}  // namespace caforge
