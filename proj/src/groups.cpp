#include "caforge/groups.hpp"

#include <algorithm>

namespace caforge {

std::string_view to_string(GroupKind g) {
  switch (g) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::frobenius: return "frobenius";
  }
  return "?";
}

GroupKind parse_group(std::string_view s) {
  if (s == "trivial") return GroupKind::trivial;
  if (s == "cyclic") return GroupKind::cyclic;
  if (s == "frobenius") return GroupKind::frobenius;
  throw InvalidArgument("unknown group '" + std::string(s) + "'");
}

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned v) {
  if (v < 2) return std::nullopt;
  unsigned p = 0;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return std::make_pair(v, 1u);
  unsigned e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1) return std::nullopt;
  return std::make_pair(p, e);
}

namespace {

using Poly = std::vector<unsigned>;  // lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inverse_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

// remainder of a modulo b over GF(p); b nonzero
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const unsigned lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const unsigned f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p * p - f * b[i]) % p;
    trim(a);
  }
  return a;
}

Poly from_rank(unsigned r, unsigned p, unsigned len) {
  Poly out(len);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = r % p;
    r /= p;
  }
  return out;
}

bool irreducible(const Poly& f, unsigned p) {
  const unsigned e = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= e / 2; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned r = 0; r < count; ++r) {
      Poly g = from_rank(r, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(unsigned order) : q_(order) {
  auto pe = prime_power(order);
  if (!pe) throw InvalidArgument("v must be a prime power");
  p_ = pe->first;
  e_ = pe->second;

  if (e_ == 1) {
    modulus_ = {0, 1};
  } else {
    for (unsigned r = 0; r < q_; ++r) {
      Poly f = from_rank(r, p_, e_);
      f.push_back(1);
      if (irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
  }

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    const Poly pa = from_rank(a, p_, e_);
    for (unsigned b = 0; b < q_; ++b) {
      const Poly pb = from_rank(b, p_, e_);
      unsigned sum = 0, scale = 1;
      for (unsigned i = 0; i < e_; ++i) {
        sum += (pa[i] + pb[i]) % p_ * scale;
        scale *= p_;
      }
      add_[a * q_ + b] = static_cast<Symbol>(sum);

      Poly prod(2 * e_ - 1, 0);
      for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
      Poly rem = e_ == 1 ? prod : poly_mod(prod, modulus_, p_);
      unsigned r = 0;
      scale = 1;
      for (unsigned i = 0; i < rem.size(); ++i) {
        r += rem[i] % p_ * scale;
        scale *= p_;
      }
      mul_[a * q_ + b] = static_cast<Symbol>(r);
    }
  }
  for (unsigned a = 0; a < q_; ++a)
    for (unsigned b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Symbol>(b);
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Symbol>(b);
    }
}

GroupAction::GroupAction(GroupKind kind, unsigned v) : kind_(kind), v_(v) {
  switch (kind) {
    case GroupKind::trivial: {
      std::vector<Symbol> id(v);
      for (unsigned x = 0; x < v; ++x) id[x] = static_cast<Symbol>(x);
      perms_.push_back(std::move(id));
      break;
    }
    case GroupKind::cyclic:
      for (unsigned b = 0; b < v; ++b) {
        std::vector<Symbol> g(v);
        for (unsigned x = 0; x < v; ++x) g[x] = static_cast<Symbol>((x + b) % v);
        perms_.push_back(std::move(g));
      }
      break;
    case GroupKind::frobenius:
      field_.emplace(v);
      for (unsigned a = 1; a < v; ++a)
        for (unsigned b = 0; b < v; ++b) {
          std::vector<Symbol> g(v);
          for (unsigned x = 0; x < v; ++x)
            g[x] = field_->add(field_->mul(static_cast<Symbol>(a), static_cast<Symbol>(x)),
                               static_cast<Symbol>(b));
          perms_.push_back(std::move(g));
        }
      break;
  }
}

std::vector<Symbol> GroupAction::canonicalize(std::span<const Symbol> s, bool* is_short) const {
  std::vector<Symbol> out(s.begin(), s.end());
  if (is_short) *is_short = false;
  if (s.empty()) return out;
  switch (kind_) {
    case GroupKind::trivial:
      break;
    case GroupKind::cyclic:
      for (auto& x : out) x = static_cast<Symbol>((x + v_ - s[0]) % v_);
      break;
    case GroupKind::frobenius: {
      std::size_t j = 0;
      while (j < s.size() && s[j] == s[0]) ++j;
      if (j == s.size()) {
        std::fill(out.begin(), out.end(), Symbol{0});
        if (is_short) *is_short = true;
        break;
      }
      const FiniteField& f = *field_;
      const Symbol a = f.inv(f.sub(s[j], s[0]));
      for (std::size_t i = 0; i < s.size(); ++i) out[i] = f.mul(a, f.sub(s[i], s[0]));
      break;
    }
  }
  return out;
}

Array GroupAction::develop(const Array& base) const {
  Array out(base.rows() * order() + constant_rows(), base.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < base.rows(); ++i) {
    auto src = base.row(i);
    for (const auto& g : perms_) {
      auto dst = out.row(r++);
      for (std::size_t c = 0; c < src.size(); ++c) dst[c] = g[src[c]];
    }
  }
  for (unsigned s = 0; s < constant_rows(); ++s) {
    auto dst = out.row(r++);
    std::fill(dst.begin(), dst.end(), static_cast<Symbol>(s));
  }
  return out;
}

std::uint32_t tuple_rank(std::span<const Symbol> symbols, unsigned v) {
  std::uint32_t r = 0;
  for (Symbol s : symbols) r = r * v + s;
  return r;
}

void tuple_unrank(std::uint32_t rank, unsigned v, std::span<Symbol> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(rank % v);
    rank /= v;
  }
}

OrbitTable::OrbitTable(const Parameters& p, GroupKind kind) : params_(p), group_(kind, p.v) {
  p.validate();
  const BigUint vt = ipow(p.v, p.t);
  if (vt > (1u << 28)) throw InvalidArgument("v^t too large for per-column-set tables");
  const auto n = vt.convert_to<std::uint32_t>();
  canon_.resize(n);
  short_.assign(n, 0);
  index_.assign(n, -1);
  std::vector<Symbol> tuple(p.t);
  for (std::uint32_t r = 0; r < n; ++r) {
    tuple_unrank(r, p.v, tuple);
    bool sh = false;
    canon_[r] = tuple_rank(group_.canonicalize(tuple, &sh), p.v);
    short_[r] = sh;
    if (canon_[r] == r && !sh) {
      index_[r] = static_cast<std::int64_t>(reps_.size());
      reps_.push_back(r);
    }
  }
}

unsigned OrbitTable::orbit_length() const { return caforge::orbit_length(kind(), v()); }

unsigned group_order(GroupKind kind, unsigned v) {
  switch (kind) {
    case GroupKind::trivial: return 1;
    case GroupKind::cyclic: return v;
    case GroupKind::frobenius: return v * (v - 1);
  }
  return 1;
}

unsigned orbit_length(GroupKind kind, unsigned v) { return group_order(kind, v); }

OrbitCount orbit_count(const Parameters& p, GroupKind kind) {
  p.validate();
  const BigUint sets = binomial(p.k, p.t);
  switch (kind) {
    case GroupKind::trivial: return {sets * ipow(p.v, p.t), 0};
    case GroupKind::cyclic: return {sets * ipow(p.v, p.t - 1), 0};
    case GroupKind::frobenius:
      if (!prime_power(p.v)) throw InvalidArgument("v must be a prime power");
      return {sets * ((ipow(p.v, p.t - 1) - 1) / (p.v - 1)), sets};
  }
  return {};
}

}  // namespace caforge
