#include "caforge/combinations.hpp"

#include <numeric>

#include "caforge/core.hpp"

namespace caforge {

ColumnSetCursor::ColumnSetCursor(unsigned k, unsigned t) : k_(k), cols_(t) {
  std::iota(cols_.begin(), cols_.end(), 0u);
  done_ = t > k;
}

ColumnSetCursor::ColumnSetCursor(unsigned k, unsigned t, std::uint64_t rank)
    : k_(k), cols_(column_set_unrank(rank, k, t)) {}

bool ColumnSetCursor::next() {
  if (done_) return false;
  const std::size_t t = cols_.size();
  std::size_t i = t;
  while (i > 0 && cols_[i - 1] == k_ - t + i - 1) --i;
  if (i == 0) {
    done_ = true;
    return false;
  }
  ++cols_[i - 1];
  for (std::size_t j = i; j < t; ++j) cols_[j] = cols_[j - 1] + 1;
  return true;
}

std::uint64_t column_set_rank(std::span<const std::uint32_t> cols, unsigned k) {
  // count subsets preceding cols lexicographically
  const unsigned t = static_cast<unsigned>(cols.size());
  std::uint64_t rank = 0;
  std::uint32_t prev = 0;
  for (unsigned i = 0; i < t; ++i) {
    const std::uint32_t start = i == 0 ? 0 : prev + 1;
    for (std::uint32_t c = start; c < cols[i]; ++c) rank += binomial_u64(k - c - 1, t - i - 1);
    prev = cols[i];
  }
  return rank;
}

std::vector<std::uint32_t> column_set_unrank(std::uint64_t rank, unsigned k, unsigned t) {
  std::vector<std::uint32_t> out(t);
  std::uint32_t c = 0;
  for (unsigned i = 0; i < t; ++i) {
    for (;; ++c) {
      const std::uint64_t block = binomial_u64(k - c - 1, t - i - 1);
      if (rank < block) break;
      rank -= block;
    }
    out[i] = c++;
  }
  return out;
}

}  // namespace caforge
