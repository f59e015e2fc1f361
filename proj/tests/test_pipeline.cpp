#include "doctest.h"

#include <cmath>
#include <sstream>

#include "caforge/bounds.hpp"
#include "caforge/coverage.hpp"
#include "caforge/pipeline.hpp"
#include "oracles.hpp"

using namespace caforge;

namespace {

RunSpec spec_of(Parameters p, Stage1Kind s1, Stage2Kind s2, GroupKind g, std::uint64_t seed, double r_mult = 1) {
  RunSpec s;
  s.p = p;
  s.stage1 = s1;
  s.stage2 = s2;
  s.group = g;
  s.seed = seed;
  s.r_mult = r_mult;
  return s;
}

}  // namespace

TEST_CASE("rand + naive always verifies") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto s = spec_of({2, 5, 2}, Stage1Kind::rand, Stage2Kind::naive, GroupKind::trivial, seed);
    s.verify = true;
    const auto res = run(s);
    CHECK(res.report.verified == std::optional<bool>(true));
    CHECK(oracle::covers_all(res.array, s.p));
    CHECK(res.report.N_final == res.report.n_stage1 + res.report.rows_stage2);
    CHECK(res.report.N_final >= 4);
  }
}

TEST_CASE("final size and group development") {
  for (GroupKind g : {GroupKind::trivial, GroupKind::cyclic, GroupKind::frobenius}) {
    auto s = spec_of({3, 8, 3}, Stage1Kind::rand, Stage2Kind::greedy, g, 4);
    s.verify = true;
    const auto res = run(s);
    const auto order = group_order(g, 3);
    const unsigned consts = g == GroupKind::frobenius ? 3 : 0;
    CHECK(res.report.N_final == order * (res.report.n_stage1 + res.report.rows_stage2) + consts);
    CHECK(res.array.rows() == res.report.N_final);
    CHECK(res.report.N_final >= 27);
  }
}

TEST_CASE("rand + naive stays within the closed-form bound") {
  for (GroupKind g : {GroupKind::trivial, GroupKind::cyclic, GroupKind::frobenius})
    for (unsigned t = 2; t <= 3; ++t)
      for (unsigned v = 2; v <= 3; ++v)
        for (unsigned k = t + 1; k <= 10; k += 2)
          for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Parameters p{t, k, v};
            const auto res = run(spec_of(p, Stage1Kind::rand, Stage2Kind::naive, g, seed));
            CHECK(res.report.bound_predicted == doctest::Approx(group_two_stage_bound(p, g)).epsilon(1e-9));
            CHECK(static_cast<double>(res.report.N_final) <= std::ceil(group_two_stage_bound(p, g)));
          }
}

TEST_CASE("unbounded r skips the first stage") {
  auto s = spec_of({2, 6, 2}, Stage1Kind::rand, Stage2Kind::den, GroupKind::trivial, 1, INFINITY);
  s.verify = true;
  const auto res = run(s);
  CHECK(res.report.n_stage1 == 0);
  CHECK(res.report.uncovered_after_stage1 == interaction_count(s.p));
  CHECK(res.report.N_final <= discrete_slj_bound(s.p));
}

TEST_CASE("Moser-Tardos first stage in the pipeline") {
  for (GroupKind g : {GroupKind::trivial, GroupKind::cyclic, GroupKind::frobenius}) {
    auto s = spec_of({3, 8, 3}, Stage1Kind::mt, Stage2Kind::col, g, 2);
    s.verify = true;
    const auto res = run(s);
    CHECK(res.report.verified == std::optional<bool>(true));
    CHECK(res.report.subset_size >= 1);
  }
  CHECK_THROWS_AS((run(spec_of({6, 11, 3}, Stage1Kind::mt, Stage2Kind::naive, GroupKind::trivial, 1))), InvalidArgument);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((run(spec_of({2, 5, 6}, Stage1Kind::rand, Stage2Kind::naive, GroupKind::frobenius, 1))),
                  InvalidArgument);
  CHECK_THROWS_AS((run(spec_of({2, 5, 2}, Stage1Kind::rand, Stage2Kind::naive, GroupKind::trivial, 1, 0))),
                  InvalidArgument);
  auto s = spec_of({3, 12, 3}, Stage1Kind::rand, Stage2Kind::naive, GroupKind::trivial, 1);
  s.time_budget = 1e-9;
  CHECK_THROWS_AS((run(s)), BudgetExceeded);
}

TEST_CASE("runs are reproducible from the seed") {
  const auto s = spec_of({3, 9, 3}, Stage1Kind::rand, Stage2Kind::den, GroupKind::cyclic, 17);
  CHECK(run(s).array == run(s).array);
}

TEST_CASE("larger r gives smaller arrays on average") {
  const Parameters p{3, 12, 3};
  double mean[4] = {0, 0, 0, 0};
  const int seeds = 20;
  for (int c = 1; c <= 3; ++c)
    for (int seed = 0; seed < seeds; ++seed)
      mean[c] += static_cast<double>(
                     run(spec_of(p, Stage1Kind::rand, Stage2Kind::den, GroupKind::trivial, seed, c)).report.N_final) /
                 seeds;
  CHECK(mean[3] <= mean[2]);
  CHECK(mean[2] <= mean[1]);
}

TEST_CASE("benchmark csv") {
  std::vector<RunSpec> grid{spec_of({2, 5, 2}, Stage1Kind::rand, Stage2Kind::naive, GroupKind::trivial, 1),
                            spec_of({2, 5, 2}, Stage1Kind::rand, Stage2Kind::greedy, GroupKind::trivial, 2),
                            spec_of({6, 11, 3}, Stage1Kind::mt, Stage2Kind::naive, GroupKind::trivial, 3)};
  grid[2].stage1 = Stage1Kind::mt;
  std::ostringstream a, b;
  benchmark(grid, a, false);
  benchmark(grid, b, false);
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 14);
  }
  CHECK(rows == 3);
  CHECK(a.str().find("error:invalid_argument") != std::string::npos);
  std::ostringstream empty;
  CHECK_THROWS_AS((benchmark({}, empty)), InvalidArgument);
}

TEST_CASE("grid files") {
  std::istringstream in(
      "# table shape\n"
      "t = 3\nk = 5..7\nv = 2\nstage2 = naive, den\nseed = 4\n"
      "\n\n"
      "t=2\nk=4\nv=3\ngroup=cyclic\nr_mult=inf\nverify=true  # trailing comment\n");
  const auto grid = parse_grid(in);
  REQUIRE(grid.size() == 7);
  CHECK(grid[0].p.k == 5);
  CHECK(grid[0].stage2 == Stage2Kind::naive);
  CHECK(grid[1].stage2 == Stage2Kind::den);
  CHECK(grid[5].p.k == 7);
  CHECK(grid[5].seed == 4);
  CHECK(grid[6].group == GroupKind::cyclic);
  CHECK(std::isinf(grid[6].r_mult));
  CHECK(grid[6].verify);

  for (const char* bad : {"t=2\nk=4\n", "t=2\nk=4\nv=2\nfoo=1\n", "t=2\nk=4\nv=x\n", "t=2\nt=3\nk=4\nv=2\n",
                          "t=2\nk=4\nv=2\nstage2=magic\n", "t=2 k=4\n", "", "t=2\nk=9..3\nv=2\n",
                          "t=2\nk=4\nv=2\nr_mult=-1\n", "t=6\nk=11\nv=3\nstage1=mt\n"}) {
    std::istringstream is(bad);
    CHECK_THROWS_AS((parse_grid(is)), InvalidArgument);
  }
}
