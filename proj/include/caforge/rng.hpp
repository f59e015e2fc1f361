#pragma once

#include <cstdint>
#include <random>

#include "caforge/core.hpp"

namespace caforge {

/// Named random streams. Every stream is a std::mt19937_64 seeded through
/// std::seed_seq from (seed, stream, index), so a run is reproducible from its
/// seed and each retry/stage draws from its own independent sequence.
enum class Stream : std::uint32_t {
  stage1_attempt = 1,
  stage2_fill = 2,
  moser_tardos = 3,
  naive_fill = 4,
  test = 99,
};

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection; independent of the
  /// standard library's distribution implementation.
  std::uint64_t below(std::uint64_t bound);

  Symbol symbol(unsigned v) { return static_cast<Symbol>(below(v)); }

  /// Fills every cell of the array uniformly from [0, v).
  void fill(Array& a, unsigned v);

 private:
  std::mt19937_64 engine_;
};

}  // namespace caforge
