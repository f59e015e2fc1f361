#include "doctest.h"

#include <cmath>

#include "caforge/bounds.hpp"
#include "caforge/rng.hpp"
#include "caforge/stage2.hpp"
#include "caforge/coverage.hpp"
#include "oracles.hpp"

using namespace caforge;

TEST_CASE("Stein-Lovasz-Johnson") {
  CHECK(std::ceil(slj_bound({6, 54, 3})) == 17236);
  CHECK(std::ceil(slj_bound({6, 56, 3})) == 17403);
  CHECK(slj_bound({2, 2, 2}) == doctest::Approx(std::log(4.0) / std::log(4.0 / 3)));
  CHECK(slj_bound({6, 20, 3}) == doctest::Approx(12498.74).epsilon(1e-6));
}

TEST_CASE("discrete SLJ agrees with the recurrence") {
  CHECK(discrete_slj_bound({6, 56, 3}) == 13021);
  CHECK(discrete_slj_bound({2, 2, 2}) == 4);
  CHECK(discrete_slj_bound({6, 20, 3}) == 8117);
  for (unsigned t = 2; t <= 4; ++t)
    for (unsigned v = 2; v <= 4; ++v)
      for (unsigned k = t; k <= 14; k += 3) {
        const Parameters p{t, k, v};
        CHECK(discrete_slj_bound(p) == oracle::discrete_slj(p));
      }
  CHECK(discrete_slj_bound({6, 30, 3}) == oracle::discrete_slj({6, 30, 3}));
}

TEST_CASE("two-stage bound") {
  CHECK(two_stage_bound({6, 54, 3}) == doctest::Approx(13162.26).epsilon(1e-6));
  CHECK(two_stage_bound({6, 53, 3}) == doctest::Approx(13076.46).epsilon(1e-6));
  const double b56 = two_stage_bound({6, 56, 3});
  CHECK(b56 > 13328);
  CHECK(b56 < 13329);
}

TEST_CASE("grid invariants") {
  for (unsigned t = 2; t <= 6; ++t)
    for (unsigned v = 2; v <= 6; ++v)
      for (unsigned k = t; k <= 100; ++k) {
        const Parameters p{t, k, v};
        const double slj = slj_bound(p);
        REQUIRE(discrete_slj_bound(p) <= std::ceil(slj));
        if (k >= t + 1) REQUIRE(two_stage_bound(p) < slj);
      }
  for (unsigned k = 12; k <= 100; ++k) {
    const Parameters p{6, k, 3};
    const double gap = two_stage_bound(p) - static_cast<double>(discrete_slj_bound(p));
    CHECK(gap >= 300);
    CHECK(gap <= 320);
  }
}

TEST_CASE("first-stage rows") {
  const Parameters p{6, 54, 3};
  const double r = rho(p);
  const auto fs = first_stage_n(p, GroupKind::trivial, r);
  CHECK(fs.n >= 12433);
  CHECK(fs.n <= 12434);
  const auto all = first_stage_n(p, GroupKind::trivial, interaction_count(p).convert_to<double>());
  CHECK(all.n == 0);
  CHECK(all.saturated);
  const Parameters q{6, 53, 3};
  const auto n53 = first_stage_n(q, GroupKind::trivial, rho(q));
  CHECK(std::abs(static_cast<double>(n53.n) - (two_stage_bound(q) - rho(q))) <= 1);
  // expected uncovered after n rows is at most the target
  for (GroupKind g : {GroupKind::trivial, GroupKind::cyclic, GroupKind::frobenius}) {
    const Parameters s{3, 9, 3};
    const auto f = first_stage_n(s, g, 5);
    const double expect = orbit_count(s, g).full.convert_to<double>() * std::exp(-orbit_log_base(s, g) * f.n);
    CHECK(expect <= 5 + 1e-9);
    if (f.n > 0) CHECK(expect * std::exp(orbit_log_base(s, g)) > 5);
  }
  CHECK_THROWS_AS((first_stage_n(p, GroupKind::trivial, 0)), InvalidArgument);
}

TEST_CASE("Godbole-Skipper-Sunley bound") {
  CHECK(gss_bound({6, 54, 3}) == doctest::Approx(17494).epsilon(1e-4));
  CHECK(gss_bound({2, 4, 2}) == doctest::Approx((std::log(5.0) + 2 * std::log(2.0) + 1) / std::log(4.0 / 3)));
  CHECK_THROWS_AS((gss_bound({6, 11, 3})), InvalidArgument);
}

TEST_CASE("group bounds") {
  const double expected[] = {13059.49, 13145.18, 13229.21, 13311.66, 13392.58};
  for (unsigned k = 53; k <= 57; ++k)
    CHECK(cyclic_two_stage_bound({6, k, 3}) == doctest::Approx(expected[k - 53]).epsilon(1e-6));
  const double l2 = std::log(2.0);
  CHECK(cyclic_two_stage_bound({2, 3, 2}) == doctest::Approx(2 * (std::log(3.0) + l2 + std::log(l2) + 1) / l2));
  CHECK(frobenius_two_stage_bound({6, 53, 3}) == doctest::Approx(13034.02).epsilon(1e-6));
  CHECK_THROWS_AS((frobenius_two_stage_bound({6, 53, 6})), InvalidArgument);
  // the general orbit formula reproduces each closed form
  for (unsigned t = 2; t <= 5; ++t)
    for (unsigned v : {2u, 3u, 4u, 5u})
      for (unsigned k = t + 1; k <= 40; k += 7) {
        const Parameters p{t, k, v};
        for (GroupKind g : {GroupKind::trivial, GroupKind::cyclic, GroupKind::frobenius}) {
          const double l = orbit_log_base(p, g);
          const double o = orbit_count(p, g).full.convert_to<double>();
          const double s = g == GroupKind::frobenius ? v : 0;
          const double general = group_order(g, v) * (std::log(o * l) + 1) / l + s;
          CHECK(group_two_stage_bound(p, g) == doctest::Approx(general).epsilon(1e-9));
        }
      }
}

TEST_CASE("expected incompatibility edges") {
  CHECK(expected_incompat_edges({2, 3, 2}, 0) == doctest::Approx(42));
  CHECK(expected_incompat_edges({3, 6, 3}, INFINITY) == 0);
  CHECK(expected_incompat_edges({3, 6, 3}, 5000) == doctest::Approx(0));

  // n = 0: every pair of distinct interactions that conflict, counted directly
  const Parameters p{2, 4, 3};
  std::vector<Interaction> all;
  for (const auto& c : oracle::subsets(p.k, p.t))
    for (const auto& x : oracle::tuples(p.t, p.v)) all.push_back({c, x});
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) pairs += conflicts(all[i], all[j]);
  CHECK(expected_incompat_edges(p, 0) == doctest::Approx(static_cast<double>(pairs)));
}

TEST_CASE("chromatic estimate") {
  CHECK(chromatic_estimate(0) == 1);
  CHECK(chromatic_estimate(1) == 2);
  CHECK(chromatic_estimate(3) == 3);
  double prev = 0;
  for (double m = 0; m < 100; m += 0.5) {
    CHECK(chromatic_estimate(m) >= prev);
    prev = chromatic_estimate(m);
  }
}

TEST_CASE("coloring estimates") {
  const Parameters p{6, 56, 3};
  const auto opt = coloring_two_stage_estimate(p, ColoringMode::optimistic);
  const auto con = coloring_two_stage_estimate(p, ColoringMode::conservative);
  CHECK(std::abs(opt.value - 11919) <= 1);
  CHECK(std::abs(con.value - 12159) <= 1);
  for (unsigned k = 4; k <= 20; k += 4) {
    const Parameters q{3, k, 3};
    CHECK(coloring_two_stage_estimate(q, ColoringMode::conservative).value >=
          coloring_two_stage_estimate(q, ColoringMode::optimistic).value);
  }
}

TEST_CASE("LLL first stage") {
  const auto big = lll_first_stage_n({3, 350, 3});
  CHECK(big.m == 16);
  CHECK(std::abs(static_cast<double>(big.n) - 422) <= 1);

  // exhaustive oracle over m
  const Parameters p{2, 5, 2};
  const double eta = binomial(5, 2).convert_to<double>();
  const double dep = eta - binomial(3, 2).convert_to<double>();
  const double l = std::log(4.0 / 3);
  double best = INFINITY;
  for (int m = 1; m <= 4; ++m) {
    const double n1 = (1 + std::log(dep) + std::log(m)) / l;
    const double n2 = m == 4 ? -INFINITY : (std::log(eta) + 1 + std::log(1 - m / 4.0)) / l;
    best = std::min(best, std::max(n1, n2));
  }
  CHECK(lll_first_stage_n(p).n == static_cast<std::uint64_t>(std::ceil(best)));
}

TEST_CASE("LLL two-stage bound") {
  for (unsigned k = 8; k <= 60; k += 13) {
    const Parameters p{3, k, 3};
    const auto d = DerivedConstants::of(p);
    const double eta = d.eta.convert_to<double>(), dep = d.dep_degree.convert_to<double>();
    CHECK(lll_two_stage_bound(p) ==
          doctest::Approx(two_stage_bound(p) + d.rho - eta / dep).epsilon(1e-9));
  }
  for (unsigned k : {50u, 120u, 200u}) CHECK(lll_two_stage_bound({3, k, 3}) < gss_bound({3, k, 3}));
  CHECK(lll_two_stage_bound({4, 40, 4}) > two_stage_bound({4, 40, 4}));
  CHECK_THROWS_AS((lll_two_stage_bound({3, 300, 3})), InvalidArgument);
}

TEST_CASE("bound report fills optional fields") {
  const auto r = bound_report({6, 53, 6});
  CHECK_FALSE(r.frobenius_two_stage);
  const auto s = bound_report({6, 11, 3});
  CHECK_FALSE(s.gss);
  CHECK_FALSE(s.lll_first_stage_n);
  const auto u = bound_report({6, 54, 3});
  CHECK(u.gss);
  CHECK(u.frobenius_two_stage);
}
