#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace caforge {

/// Walks the t-subsets of [0, k) in lexicographic order.
class ColumnSetCursor {
 public:
  ColumnSetCursor(unsigned k, unsigned t);
  /// Starts at the subset of the given lexicographic rank.
  ColumnSetCursor(unsigned k, unsigned t, std::uint64_t rank);

  std::span<const std::uint32_t> current() const { return cols_; }
  bool done() const { return done_; }
  /// Advances; returns false once every subset has been visited.
  bool next();

 private:
  unsigned k_;
  std::vector<std::uint32_t> cols_;
  bool done_ = false;
};

/// Lexicographic rank of a sorted t-subset of [0, k).
std::uint64_t column_set_rank(std::span<const std::uint32_t> cols, unsigned k);
std::vector<std::uint32_t> column_set_unrank(std::uint64_t rank, unsigned k, unsigned t);

}  // namespace caforge
