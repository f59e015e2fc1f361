#include "doctest.h"

#include <set>

#include "caforge/core.hpp"
#include "caforge/rng.hpp"
#include "oracles.hpp"

using namespace caforge;

TEST_CASE("binomial matches Pascal's triangle") {
  CHECK(binomial(54, 6) == BigUint(25827165));
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 5) == 0);
  for (unsigned n = 0; n <= 60; ++n)
    for (unsigned r = 0; r <= n + 1; ++r) CHECK(binomial(n, r) == oracle::pascal(n, r));
  CHECK(binomial_u64(54, 6) == 25827165u);
  CHECK_THROWS_AS((binomial_u64(200, 100)), InvalidArgument);
}

TEST_CASE("interaction count") {
  CHECK(interaction_count({6, 54, 3}) == BigUint("18828003285"));
  CHECK(interaction_count({2, 2, 2}) == 4);
  CHECK(interaction_count({3, 5, 2}) == 80);
  for (unsigned t = 2; t <= 4; ++t)
    for (unsigned k = t; k <= 12; ++k)
      for (unsigned v = 2; v <= 4; ++v) {
        const Parameters p{t, k, v};
        const BigUint direct = BigUint(oracle::subsets(k, t).size()) * BigUint(oracle::tuples(t, v).size());
        CHECK(interaction_count(p) == direct);
      }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW((Parameters{2, 2, 2}.validate()));
  CHECK_THROWS_AS((Parameters{1, 5, 2}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Parameters{3, 2, 2}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Parameters{2, 5, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((Parameters{2, 5, 256}.validate()), InvalidArgument);
}

TEST_CASE("derived constants") {
  for (unsigned t = 2; t <= 6; ++t)
    for (unsigned v = 2; v <= 6; ++v) {
      const auto d = DerivedConstants::of({t, 2 * t + 3, v});
      const double vt = d.vt.convert_to<double>();
      CHECK(d.rho > vt - 1);
      CHECK(d.rho < vt);
      CHECK(d.dep_degree < BigUint(t) * binomial(2 * t + 3, t - 1));
    }
  CHECK(DerivedConstants::of({6, 54, 3}).rho == doctest::Approx(728.5).epsilon(1e-3));
}

TEST_CASE("flex rows") {
  FlexRow row(5);
  const std::vector<std::uint32_t> cols{1, 3};
  const std::vector<Symbol> a{0, 1}, b{0, 2}, c{1, 1};
  CHECK(row.compatible(cols, a));
  CHECK(row.overlap(cols, a) == 0);
  row.fix(cols, a);
  CHECK(row.fixed_count() == 2);
  CHECK(row.overlap(cols, a) == 2);
  CHECK(row.compatible(cols, a));
  CHECK_FALSE(row.compatible(cols, b));
  CHECK_FALSE(row.compatible(cols, c));
  CHECK_THROWS_AS((row.fix(cols, b)), InconsistentClass);
  const std::vector<std::uint32_t> other{0, 1};
  CHECK(row.compatible(other, std::vector<Symbol>{2, 0}));
  CHECK(row.overlap(other, std::vector<Symbol>{2, 0}) == 1);
}

TEST_CASE("array rows and append") {
  Array a(2, 3);
  a.at(1, 2) = 4;
  CHECK(a.row(1)[2] == 4);
  const std::vector<Symbol> r{1, 2, 3};
  a.append_row(r);
  CHECK(a.rows() == 3);
  CHECK(a.at(2, 1) == 2);
  CHECK_THROWS_AS((a.append_row(std::vector<Symbol>{1})), InvalidArgument);
  Array b(1, 3);
  a.append(b);
  CHECK(a.rows() == 4);
}

TEST_CASE("random streams are reproducible and independent") {
  Rng a(42, Stream::stage1_attempt, 0), b(42, Stream::stage1_attempt, 0), c(42, Stream::stage1_attempt, 1);
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("below is uniform over its range") {
  Rng rng(7, Stream::test);
  std::vector<int> hist(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const auto x = rng.below(6);
    REQUIRE(x < 6);
    ++hist[x];
  }
  // chi-square with 5 degrees of freedom; 20.5 is the 0.999 quantile
  double chi = 0;
  for (int h : hist) chi += (h - draws / 6.0) * (h - draws / 6.0) / (draws / 6.0);
  CHECK(chi < 20.5);
}
