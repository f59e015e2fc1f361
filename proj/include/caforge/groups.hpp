#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caforge/core.hpp"

namespace caforge {

enum class GroupKind { trivial, cyclic, frobenius };

std::string_view to_string(GroupKind g);
GroupKind parse_group(std::string_view s);

/// Returns (p, e) with v = p^e, or nullopt when v is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned v);

/// GF(p^e) by lookup tables. Symbols are ranks of polynomial coefficient
/// vectors, c0 + c1*p + ... The modulus is the smallest monic irreducible
/// polynomial of degree e when coefficient vectors are ranked the same way
/// (x^2+x+1 for GF(4), x^3+x+1 for GF(8), x^2+1 for GF(9)).
class FiniteField {
 public:
  explicit FiniteField(unsigned order);

  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  /// Coefficients of the modulus, lowest degree first, leading 1 included.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Symbol add(Symbol a, Symbol b) const { return add_[a * q_ + b]; }
  Symbol mul(Symbol a, Symbol b) const { return mul_[a * q_ + b]; }
  Symbol neg(Symbol a) const { return neg_[a]; }
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }
  /// Multiplicative inverse; a must be nonzero.
  Symbol inv(Symbol a) const { return inv_[a]; }

 private:
  unsigned q_, p_, e_;
  std::vector<unsigned> modulus_;
  std::vector<Symbol> add_, mul_, neg_, inv_;
};

/// A permutation group acting on the symbols [0, v), listed element by
/// element. Trivial: identity. Cyclic: x -> x + b (mod v). Frobenius:
/// x -> a*x + b over GF(v), a != 0, enumerated a-major.
class GroupAction {
 public:
  GroupAction(GroupKind kind, unsigned v);

  GroupKind kind() const { return kind_; }
  unsigned levels() const { return v_; }
  std::size_t order() const { return perms_.size(); }
  /// perm(g)[x] is the image of symbol x under element g.
  std::span<const Symbol> perm(std::size_t g) const { return perms_[g]; }
  const FiniteField* field() const { return field_ ? &*field_ : nullptr; }

  /// Number of constant rows appended after development (v for Frobenius).
  unsigned constant_rows() const { return kind_ == GroupKind::frobenius ? v_ : 0; }

  /// Canonical representative of the orbit of `symbols`; `is_short` is set
  /// for constant tuples under Frobenius.
  std::vector<Symbol> canonicalize(std::span<const Symbol> symbols, bool* is_short = nullptr) const;

  /// Every row developed over the group, followed by the constant rows.
  Array develop(const Array& base) const;

 private:
  GroupKind kind_;
  unsigned v_;
  std::optional<FiniteField> field_;
  std::vector<std::vector<Symbol>> perms_;
};

/// Mixed-radix, first-symbol-most-significant rank of a tuple.
std::uint32_t tuple_rank(std::span<const Symbol> symbols, unsigned v);
void tuple_unrank(std::uint32_t rank, unsigned v, std::span<Symbol> out);

/// Orbit structure of t-tuples under a group: for every tuple rank, the rank
/// of its canonical form; plus the list of canonical full-orbit ranks.
class OrbitTable {
 public:
  OrbitTable(const Parameters& p, GroupKind kind);

  const Parameters& params() const { return params_; }
  const GroupAction& group() const { return group_; }
  GroupKind kind() const { return group_.kind(); }
  unsigned t() const { return params_.t; }
  unsigned v() const { return params_.v; }
  /// v^t
  std::uint32_t tuple_count() const { return static_cast<std::uint32_t>(canon_.size()); }

  std::uint32_t canonical(std::uint32_t rank) const { return canon_[rank]; }
  bool is_short(std::uint32_t rank) const { return short_[rank] != 0; }

  /// Canonical ranks of the orbits that must be covered, ascending.
  const std::vector<std::uint32_t>& representatives() const { return reps_; }
  /// Index of a canonical rank within representatives(), or -1 for short orbits.
  std::int64_t orbit_index(std::uint32_t canonical_rank) const { return index_[canonical_rank]; }

  /// Tuples in one full orbit: 1, v, or v(v-1).
  unsigned orbit_length() const;

 private:
  Parameters params_;
  GroupAction group_;
  std::vector<std::uint32_t> canon_;
  std::vector<std::uint8_t> short_;
  std::vector<std::uint32_t> reps_;
  std::vector<std::int64_t> index_;
};

struct OrbitCount {
  BigUint full;
  BigUint short_orbits;
};

/// Full orbits needing coverage and short orbits handled by constant rows.
OrbitCount orbit_count(const Parameters& p, GroupKind kind);

/// Row-count multiplier of development, |group|.
unsigned group_order(GroupKind kind, unsigned v);

/// Tuples in one full orbit.
unsigned orbit_length(GroupKind kind, unsigned v);

}  // namespace caforge
