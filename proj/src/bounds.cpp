#include "caforge/bounds.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace caforge {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

Real ln(const BigUint& x) { return boost::multiprecision::log(Real(x)); }
Real ln(unsigned x) { return boost::multiprecision::log(Real(x)); }

// ln(v^t / (v^t - 1))
Real log_base(const Parameters& p) {
  const Real vt(ipow(p.v, p.t));
  return boost::multiprecision::log1p(1 / (vt - 1));
}

Real group_log_base(const Parameters& p, GroupKind g) {
  const Real vt(ipow(p.v, p.t));
  const Real len(orbit_length(g, p.v));
  return boost::multiprecision::log1p(len / (vt - len));
}

void require_prime_power(unsigned v) {
  if (!prime_power(v)) throw InvalidArgument("v must be a prime power");
}

void require_k_2t(const Parameters& p) {
  if (p.k < 2 * p.t) throw InvalidArgument("k must be at least 2t (" + p.str() + ")");
}

template <typename U>
std::uint64_t discrete_slj_steps(U u, U vt) {
  std::uint64_t steps = 0;
  while (u > vt) {
    u -= (u + vt - 1) / vt;
    ++steps;
  }
  // from here on every step removes exactly one
  return steps + static_cast<std::uint64_t>(u);
}

}  // namespace

double orbit_log_base(const Parameters& p, GroupKind group) {
  p.validate();
  return static_cast<double>(group_log_base(p, group));
}

double rho(const Parameters& p, GroupKind group) {
  p.validate();
  return static_cast<double>(1 / group_log_base(p, group));
}

double slj_bound(const Parameters& p) {
  p.validate();
  return static_cast<double>((ln(binomial(p.k, p.t)) + p.t * ln(p.v)) / log_base(p));
}

std::uint64_t discrete_slj_bound(const Parameters& p) {
  p.validate();
  const BigUint vt = ipow(p.v, p.t);
  const BigUint u0 = binomial(p.k, p.t) * vt;
  if (u0 <= std::numeric_limits<std::uint64_t>::max())
    return discrete_slj_steps(u0.convert_to<std::uint64_t>(), vt.convert_to<std::uint64_t>());
  return discrete_slj_steps<BigUint>(u0, vt);
}

double two_stage_bound(const Parameters& p) {
  p.validate();
  const Real l = log_base(p);
  return static_cast<double>((ln(binomial(p.k, p.t)) + p.t * ln(p.v) + log(l) + 1) / l);
}

double gss_bound(const Parameters& p) {
  p.validate();
  require_k_2t(p);
  const BigUint dep = binomial(p.k, p.t) - binomial(p.k - p.t, p.t);
  return static_cast<double>((ln(dep) + p.t * ln(p.v) + 1) / log_base(p));
}

double cyclic_two_stage_bound(const Parameters& p) {
  p.validate();
  const Real q(ipow(p.v, p.t - 1));
  const Real l = log(q / (q - 1));
  return static_cast<double>(p.v * (ln(binomial(p.k, p.t)) + (p.t - 1) * ln(p.v) + log(l) + 1) / l);
}

double frobenius_two_stage_bound(const Parameters& p) {
  p.validate();
  require_prime_power(p.v);
  const Real q(ipow(p.v, p.t - 1));
  const Real v(p.v);
  const Real l = log(q / (q - v + 1));
  const Real n = (ln(binomial(p.k, p.t)) + log((q - 1) / (v - 1)) + log(l) + 1) / l;
  return static_cast<double>(v * (v - 1) * n + v);
}

double group_two_stage_bound(const Parameters& p, GroupKind group) {
  switch (group) {
    case GroupKind::trivial: return two_stage_bound(p);
    case GroupKind::cyclic: return cyclic_two_stage_bound(p);
    case GroupKind::frobenius: return frobenius_two_stage_bound(p);
  }
  return 0;
}

FirstStageN first_stage_n(const Parameters& p, GroupKind group, double target_uncovered) {
  p.validate();
  if (!(target_uncovered > 0)) throw InvalidArgument("target_uncovered must be positive");
  const BigUint orbits = orbit_count(p, group).full;
  FirstStageN out;
  if (Real(target_uncovered) >= Real(orbits)) {
    out.saturated = true;
    return out;
  }
  const Real exact = log(Real(orbits) / Real(target_uncovered)) / group_log_base(p, group);
  out.exact = static_cast<double>(exact);
  out.n = static_cast<std::uint64_t>(ceil(exact));
  return out;
}

double expected_incompat_edges(const Parameters& p, double n) {
  p.validate();
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (std::isinf(n)) return 0;
  using LD = long double;
  const LD vt = std::pow(static_cast<LD>(p.v), static_cast<LD>(p.t));
  const LD base = std::log1p(-1 / vt);
  LD sum = 0;
  for (unsigned i = 1; i <= p.t; ++i) {
    const LD d = vt - std::pow(static_cast<LD>(p.v), static_cast<LD>(p.t - i));
    const LD pairs = binomial(p.t, i).convert_to<LD>() * binomial(p.k - p.t, p.t - i).convert_to<LD>();
    if (pairs == 0) continue;
    sum += pairs * d * std::exp(static_cast<LD>(n) * (base + std::log1p(-1 / d)));
  }
  return static_cast<double>(binomial(p.k, p.t).convert_to<LD>() * vt * sum / 2);
}

double chromatic_estimate(double m_edges) {
  if (m_edges < 0) throw InvalidArgument("edge count must be non-negative");
  return 0.5 + std::sqrt(2 * m_edges + 0.25);
}

ColoringEstimate coloring_two_stage_estimate(const Parameters& p, ColoringMode mode) {
  const double c = mode == ColoringMode::optimistic ? 1.0 : 2.0;
  const auto limit = static_cast<std::uint64_t>(std::ceil(slj_bound(p)));
  ColoringEstimate best{std::numeric_limits<double>::infinity(), 0};
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const double value = static_cast<double>(n) + chromatic_estimate(c * expected_incompat_edges(p, n));
    if (value < best.value) best = {value, n};
  }
  return best;
}

LllFirstStage lll_first_stage_n(const Parameters& p, GroupKind group) {
  p.validate();
  require_k_2t(p);
  using LD = long double;
  const BigUint eta = binomial(p.k, p.t);
  const LD ln_eta = static_cast<LD>(ln(eta));
  const LD ln_dep = static_cast<LD>(ln(eta - binomial(p.k - p.t, p.t)));
  const LD l = static_cast<LD>(group_log_base(p, group));
  const BigUint per_set = orbit_count(Parameters{p.t, p.t, p.v}, group).full;
  const auto orbits = per_set.convert_to<std::uint64_t>();

  LllFirstStage best;
  LD best_value = std::numeric_limits<LD>::infinity();
  for (std::uint64_t m = 1; m <= orbits; ++m) {
    const LD n1 = (1 + ln_dep + std::log(static_cast<LD>(m))) / l;
    const LD n2 = m == orbits ? -std::numeric_limits<LD>::infinity()
                              : (ln_eta + 1 + std::log1p(-static_cast<LD>(m) / orbits)) / l;
    const LD value = std::max(n1, n2);
    if (value < best_value) {
      best_value = value;
      best.m = m;
    }
  }
  best.exact = static_cast<double>(best_value);
  best.n = static_cast<std::uint64_t>(std::ceil(std::max<LD>(0, best_value)));
  return best;
}

double lll_two_stage_bound(const Parameters& p) {
  p.validate();
  const BigUint eta = binomial(p.k, p.t);
  const BigUint dep = eta - binomial(p.k - p.t, p.t);
  const Real l = log_base(p);
  const Real vt(ipow(p.v, p.t));
  const Real lhs = Real(eta) * vt * l / Real(dep);
  if (lhs > vt)
    throw InvalidArgument("side condition fails: eta*v^t*ln(v^t/(v^t-1))/dep = " +
                          std::to_string(static_cast<double>(lhs)) + " exceeds v^t = " +
                          std::to_string(static_cast<double>(vt)));
  const Real value = (ln(eta) + p.t * ln(p.v) + log(l) + 2) / l - Real(eta) / Real(dep);
  return static_cast<double>(value);
}

BoundReport bound_report(const Parameters& p) {
  p.validate();
  BoundReport r;
  r.params = p;
  r.slj = slj_bound(p);
  r.discrete_slj = discrete_slj_bound(p);
  r.two_stage = two_stage_bound(p);
  if (p.k >= 2 * p.t) {
    r.gss = gss_bound(p);
    auto lll = lll_first_stage_n(p);
    r.lll_first_stage_n = lll.n;
    r.lll_first_stage_m = lll.m;
  }
  r.cyclic_two_stage = cyclic_two_stage_bound(p);
  if (prime_power(p.v)) r.frobenius_two_stage = frobenius_two_stage_bound(p);
  try {
    r.lll_two_stage = lll_two_stage_bound(p);
  } catch (const InvalidArgument&) {
  }
  r.optimistic_coloring = coloring_two_stage_estimate(p, ColoringMode::optimistic).value;
  r.conservative_coloring = coloring_two_stage_estimate(p, ColoringMode::conservative).value;
  return r;
}

}  // namespace caforge
