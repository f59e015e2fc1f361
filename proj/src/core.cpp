#include "caforge/core.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "caforge/rng.hpp"

namespace caforge {

void Parameters::validate() const {
  if (t < 2) throw InvalidArgument("t must be at least 2");
  if (k < t) throw InvalidArgument("k must be at least t");
  if (v < 2) throw InvalidArgument("v must be at least 2");
  if (v > kMaxLevels) throw InvalidArgument("v must be at most 255");
}

std::string Parameters::str() const {
  std::ostringstream os;
  os << "t=" << t << ",k=" << k << ",v=" << v;
  return os.str();
}

BigUint binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigUint out = 1;
  for (unsigned i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

std::uint64_t binomial_u64(unsigned n, unsigned r) {
  BigUint b = binomial(n, r);
  if (b > std::numeric_limits<std::uint64_t>::max())
    throw InvalidArgument("C(" + std::to_string(n) + "," + std::to_string(r) + ") exceeds 64 bits");
  return b.convert_to<std::uint64_t>();
}

BigUint ipow(unsigned base, unsigned exp) {
  BigUint out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

BigUint interaction_count(const Parameters& p) { return binomial(p.k, p.t) * ipow(p.v, p.t); }

DerivedConstants DerivedConstants::of(const Parameters& p) {
  using boost::multiprecision::cpp_bin_float_50;
  DerivedConstants d;
  d.vt = ipow(p.v, p.t);
  d.eta = binomial(p.k, p.t);
  d.dep_degree = d.eta - binomial(p.k - p.t, p.t);
  cpp_bin_float_50 vt(d.vt);
  d.rho = static_cast<double>(1 / boost::multiprecision::log1p(1 / (vt - 1)));
  return d;
}

std::string to_string(const Interaction& it) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < it.columns.size(); ++i) {
    if (i) os << ", ";
    os << "c" << it.columns[i] << "=" << static_cast<unsigned>(it.symbols[i]);
  }
  os << "}";
  return os.str();
}

void Array::append_row(std::span<const Symbol> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw InvalidArgument("row length does not match array width");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Array::append(const Array& other) {
  if (other.rows() == 0) return;
  if (rows_ == 0 && cols_ == 0) cols_ = other.cols();
  if (other.cols() != cols_) throw InvalidArgument("array widths differ");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

bool FlexRow::compatible(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    Cell c = cells_[columns[i]];
    if (c != kFlexible && c != symbols[i]) return false;
  }
  return true;
}

unsigned FlexRow::overlap(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols) const {
  unsigned n = 0;
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (cells_[columns[i]] == symbols[i]) ++n;
  return n;
}

void FlexRow::fix(std::span<const std::uint32_t> columns, std::span<const Symbol> symbols) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    Cell& c = cells_[columns[i]];
    if (c != kFlexible && c != symbols[i])
      throw InconsistentClass("conflicting fixed cell in column " + std::to_string(columns[i]));
    c = static_cast<Cell>(symbols[i]);
  }
}

std::size_t FlexRow::fixed_count() const {
  std::size_t n = 0;
  for (Cell c : cells_) n += c != kFlexible;
  return n;
}

Rng::Rng(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // largest multiple of bound representable; reject draws above it
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

void Rng::fill(Array& a, unsigned v) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (auto& s : a.row(r)) s = symbol(v);
}

}  // namespace caforge
