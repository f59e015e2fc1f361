#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace caforge {

using BigUint = boost::multiprecision::cpp_int;
using Symbol = std::uint8_t;

inline constexpr unsigned kMaxLevels = 255;

// Error kinds surfaced by construction and validation.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct RetriesExhausted : Error {
  using Error::Error;
};
struct IterationCapExceeded : Error {
  using Error::Error;
};
struct VerificationFailed : Error {
  using Error::Error;
};
struct GuaranteeViolated : Error {
  using Error::Error;
};
struct InconsistentClass : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};

/// Strength t, factor count k and level count v of a covering array.
struct Parameters {
  unsigned t = 2;
  unsigned k = 2;
  unsigned v = 2;

  /// Throws InvalidArgument unless k >= t >= 2 and 2 <= v <= 255.
  void validate() const;
  std::string str() const;

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// Exact binomial coefficient C(n, r); zero when r > n.
BigUint binomial(unsigned n, unsigned r);

/// C(n, r) when it fits in 64 bits; throws InvalidArgument otherwise.
std::uint64_t binomial_u64(unsigned n, unsigned r);

BigUint ipow(unsigned base, unsigned exp);

/// C(k,t) * v^t
BigUint interaction_count(const Parameters& p);

/// Constants derived from (t,k,v) that the bound formulas share.
struct DerivedConstants {
  BigUint vt;          // v^t
  double rho = 0;      // 1 / ln(v^t / (v^t - 1)), the expected-uncovered constant
  BigUint eta;         // C(k,t)
  BigUint dep_degree;  // C(k,t) - C(k-t,t)

  static DerivedConstants of(const Parameters& p);
};

/// A set of t columns (strictly increasing) with one symbol per column.
struct Interaction {
  std::vector<std::uint32_t> columns;
  std::vector<Symbol> symbols;

  friend bool operator==(const Interaction&, const Interaction&) = default;
  friend auto operator<=>(const Interaction&, const Interaction&) = default;
};

std::string to_string(const Interaction& it);

/// Dense row-major n x k array of symbols.
class Array {
 public:
  Array() = default;
  Array(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<Symbol> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Symbol> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const Symbol* data() const { return data_.data(); }

  void append_row(std::span<const Symbol> r);
  void append(const Array& other);

  friend bool operator==(const Array&, const Array&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// A cell of a partially specified row: a fixed symbol, or kFlexible.
using Cell = std::int16_t;
inline constexpr Cell kFlexible = -1;

/// Row whose cells are either fixed to a symbol or still free.
class FlexRow {
 public:
  explicit FlexRow(std::size_t k) : cells_(k, kFlexible) {}

  std::size_t size() const { return cells_.size(); }
  Cell operator[](std::size_t c) const { return cells_[c]; }
  bool is_fixed(std::size_t c) const { return cells_[c] != kFlexible; }

  bool compatible(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols) const;
  /// Number of the given columns already fixed to the given symbols.
  unsigned overlap(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols) const;
  /// Fixes the given cells; throws InconsistentClass on a conflicting fixed cell.
  void fix(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols);
  void fix(std::size_t column, Symbol s) { cells_[column] = static_cast<Cell>(s); }

  std::size_t fixed_count() const;

 private:
  std::vector<Cell> cells_;
};

/// Rows with fixed or flexible cells.
using PartialArray = std::vector<FlexRow>;

/// Uncovered interactions (orbit representatives under a group action).
struct CoverageReport {
  std::vector<Interaction> uncovered;
  std::uint64_t uncovered_count = 0;
  bool truncated = false;  // enumeration stopped once the cap was exceeded
};

}  // namespace caforge
