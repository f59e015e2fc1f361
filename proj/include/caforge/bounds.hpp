#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "caforge/core.hpp"
#include "caforge/groups.hpp"

namespace caforge {

/// Upper bounds on the number of rows of a CA(N;t,k,v). Logarithms are natural.
struct BoundReport {
  Parameters params;
  double slj = 0;
  std::uint64_t discrete_slj = 0;
  double two_stage = 0;
  std::optional<double> gss;  // needs k >= 2t
  double cyclic_two_stage = 0;
  std::optional<double> frobenius_two_stage;  // needs v a prime power
  std::optional<double> lll_two_stage;        // needs the side condition
  double optimistic_coloring = 0;
  double conservative_coloring = 0;
  std::optional<std::uint64_t> lll_first_stage_n;
  std::optional<std::uint64_t> lll_first_stage_m;
};

/// ln(v^t / (v^t - L)) for the orbit length L of the group: the log of the
/// inverse per-row miss probability of one full orbit.
double orbit_log_base(const Parameters& p, GroupKind group);

/// 1 / orbit_log_base: the expected number of orbits left uncovered by the
/// first stage of the plain two-stage construction.
double rho(const Parameters& p, GroupKind group = GroupKind::trivial);

double slj_bound(const Parameters& p);
/// Steps of u <- u - ceil(u / v^t) from u = C(k,t) v^t down to zero.
std::uint64_t discrete_slj_bound(const Parameters& p);
double two_stage_bound(const Parameters& p);
double gss_bound(const Parameters& p);
double cyclic_two_stage_bound(const Parameters& p);
double frobenius_two_stage_bound(const Parameters& p);
/// two_stage_bound, cyclic_two_stage_bound or frobenius_two_stage_bound.
double group_two_stage_bound(const Parameters& p, GroupKind group);

struct FirstStageN {
  std::uint64_t n = 0;
  double exact = 0;        // unrounded n, never below zero
  bool saturated = false;  // target >= total orbits; nothing to do in stage one
};

/// Rows so that the expected number of uncovered full orbits is at most
/// `target_uncovered`.
FirstStageN first_stage_n(const Parameters& p, GroupKind group, double target_uncovered);

/// Expected number of edges of the incompatibility graph after n random rows.
double expected_incompat_edges(const Parameters& p, double n);

/// 1/2 + sqrt(2m + 1/4)
double chromatic_estimate(double m_edges);

enum class ColoringMode { optimistic, conservative };

struct ColoringEstimate {
  double value = 0;
  std::uint64_t n = 0;
};

/// min over integer n of n + chromatic_estimate(c * gamma(n)), c = 1 or 2.
ColoringEstimate coloring_two_stage_estimate(const Parameters& p, ColoringMode mode);

struct LllFirstStage {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double exact = 0;
};

/// Minimizes max(n1(m), n2(m)) over m in [1, v^t]. For a group action the
/// tuple count v^t becomes the number of full orbits per column set and the
/// log base the per-orbit one.
LllFirstStage lll_first_stage_n(const Parameters& p, GroupKind group = GroupKind::trivial);

double lll_two_stage_bound(const Parameters& p);

BoundReport bound_report(const Parameters& p);

}  // namespace caforge
