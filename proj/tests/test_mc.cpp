#include <catch_amalgamated.hpp>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "renbounds/mc.hpp"

using namespace renbounds;
using Catch::Approx;

TEST_CASE("simulate_counts: deterministic arrivals", "[mc]") {
  const auto d = DistributionSpec::discrete({{1.0, 1.0}});
  const auto e = mc::simulate_counts(d, 5.5, 500, 7);
  for (std::int64_t n = 0; n <= e.n_max; ++n) {
    const auto c = e.counts[static_cast<std::size_t>(n)];
    if (n == 5) {
      CHECK(c == 500);
    } else {
      CHECK(c == 0);
    }
  }
  CHECK(e.ecdf(4) == 0.0);
  CHECK(e.ecdf(5) == 1.0);
  CHECK(e.dkw_slack == Approx(std::sqrt(std::log(2000.0) / 1000.0)).epsilon(1e-12));
}

TEST_CASE("simulate_counts: Poisson oracle at t = 100", "[mc]") {
  const auto d = DistributionSpec::exponential(1.0);
  const auto e = mc::simulate_counts(d, 100.0, 100000, 20250809, 1e-3, 2);
  // P(Pois(100) <= 100)
  const double pois100 = boost::math::gamma_q(101.0, 100.0);
  CHECK(pois100 == Approx(0.52656219852999847038).epsilon(1e-12));
  CHECK(std::fabs(e.ecdf(100) - pois100) <= e.dkw_slack);
  // simultaneous band over the whole lattice
  double worst = 0.0;
  for (std::int64_t n = 0; n <= e.n_max; ++n) {
    const auto exact = mc::exact_count_cdf(d, 100.0, n);
    REQUIRE(exact.has_value());
    worst = std::max(worst, std::fabs(e.ecdf(n) - *exact));
  }
  CHECK(worst <= e.dkw_slack);
}

TEST_CASE("simulate_counts: heavy-tailed mean count", "[mc]") {
  const auto d = DistributionSpec::pareto(1.0, 2.5);
  const std::int64_t N = 100000;
  const auto e = mc::simulate_counts(d, 1000.0, N, 11, 1e-3, 2);
  double mean = 0.0;
  for (std::int64_t n = 0; n <= e.n_max; ++n) {
    mean += static_cast<double>(n) *
            static_cast<double>(e.counts[static_cast<std::size_t>(n)]);
  }
  mean /= static_cast<double>(N);
  // elementary renewal theorem: E X_t ~ t/mu = 600; CLT std dev for the count
  const double sd = d.sigma() * std::sqrt(1000.0) * std::pow(d.mu(), -1.5);
  CHECK(std::fabs(mean - 600.0) <= 5.0 * sd / std::sqrt(static_cast<double>(N)) + 1.0);
}

TEST_CASE("simulate_counts: histograms identical across worker counts", "[mc]") {
  const auto d = DistributionSpec::gamma(2.0, 1.0);
  const auto e1 = mc::simulate_counts(d, 50.0, 4000, 99, 1e-3, 1);
  const auto e2 = mc::simulate_counts(d, 50.0, 4000, 99, 1e-3, 2);
  const auto e8 = mc::simulate_counts(d, 50.0, 4000, 99, 1e-3, 8);
  CHECK(e1.counts == e2.counts);
  CHECK(e1.counts == e8.counts);
  CHECK(e1.n_max == e8.n_max);
}

TEST_CASE("simulate_counts: event cap raises simulation error", "[mc]") {
  const auto d = DistributionSpec::exponential(1.0);
  CHECK_THROWS_AS(mc::simulate_counts(d, 1000.0, 10, 1, 1e-3, 1, /*max_events=*/50),
                  SimulationError);
  CHECK_THROWS_AS(mc::simulate_counts(d, 0.0, 10, 1), std::domain_error);
  CHECK_THROWS_AS(mc::simulate_counts(d, 1.0, 0, 1), std::domain_error);
  CHECK_THROWS_AS(mc::simulate_counts(d, 1.0, 10, 1, 2.0), std::domain_error);
  CHECK_THROWS_AS(mc::exact_count_cdf(d, 1.0, -1), std::domain_error);
}

TEST_CASE("kolmogorov_distance: degenerate small-t limit", "[mc]") {
  const auto d = DistributionSpec::exponential(1.0);
  const auto e = mc::simulate_counts(d, 1e-6, 2000, 3);
  // F(1) ~ 1 and the Phi argument blows up, so the deviation at n=1 is ~0
  CHECK(e.ecdf(1) >= 1.0 - 1e-3);
  CHECK(std::fabs(e.ecdf(1) - phi_cdf(mc::z_phi(d, 1, 1e-6))) < 1e-3);
  const auto ks = mc::kolmogorov_distance(e);
  CHECK(ks.distance_to_phi <= 1.0);
}

TEST_CASE("kolmogorov_distance: matches the exact Poisson sup", "[mc]") {
  const auto d = DistributionSpec::exponential(1.0);
  const auto e = mc::simulate_counts(d, 100.0, 100000, 4, 1e-3, 2);
  const auto ks = mc::kolmogorov_distance(e);
  // exact sup over the lattice, frozen from the Poisson oracle
  const double exact_sup = 0.026562198529998470377;
  CHECK(ks.distance_to_phi == Approx(exact_sup).margin(e.dkw_slack));
  CHECK(ks.distance_to_phi <= 1.0);
  CHECK(ks.argmax_n >= 1);
}

TEST_CASE("exact_count_cdf closed forms", "[mc]") {
  const auto de = DistributionSpec::exponential(1.0);
  auto v = mc::exact_count_cdf(de, 100.0, 100);
  REQUIRE(v.has_value());
  CHECK(*v == Approx(0.52656219852999847038).epsilon(1e-12));

  // deterministic unit arrivals: X_5.5 = 5 surely
  const auto dd = DistributionSpec::discrete({{1.0, 1.0}});
  CHECK(*mc::exact_count_cdf(dd, 5.5, 5) == 1.0);
  CHECK(*mc::exact_count_cdf(dd, 5.5, 4) == 0.0);

  // Gamma arrivals via the regularized incomplete gamma of T_{n+1}
  const auto dg = DistributionSpec::gamma(2.0, 1.0);
  const auto g = mc::exact_count_cdf(dg, 10.0, 5);
  REQUIRE(g.has_value());
  CHECK(*g == Approx(boost::math::gamma_q(12.0, 10.0)).epsilon(1e-13));
  CHECK(*g == Approx(0.69677614630310668819).epsilon(1e-12));

  // no closed form for heavy tails
  CHECK_FALSE(mc::exact_count_cdf(DistributionSpec::pareto(1.0, 2.5), 10.0, 5));
}

TEST_CASE("exact_count_cdf: lattice DP agrees with simulation", "[mc]") {
  const auto d = DistributionSpec::discrete({{0.5, 0.25}, {1.0, 0.5}, {2.5, 0.25}});
  const auto e = mc::simulate_counts(d, 20.0, 100000, 17, 1e-3, 2);
  for (std::int64_t n = 1; n <= e.n_max; ++n) {
    const auto exact = mc::exact_count_cdf(d, 20.0, n);
    REQUIRE(exact.has_value());
    CHECK(std::fabs(e.ecdf(n) - *exact) <= e.dkw_slack);
  }
}

TEST_CASE("exact_count_cdf: gamma matches simulation within DKW", "[mc]") {
  const auto d = DistributionSpec::gamma(2.0, 1.0);
  const auto e = mc::simulate_counts(d, 30.0, 100000, 23, 1e-3, 2);
  double worst = 0.0;
  for (std::int64_t n = 0; n <= e.n_max; ++n) {
    worst = std::max(worst, std::fabs(e.ecdf(n) - *mc::exact_count_cdf(d, 30.0, n)));
  }
  CHECK(worst <= e.dkw_slack);
}

TEST_CASE("empirical cdf is monotone and reaches one", "[mc]") {
  const auto d = DistributionSpec::lognormal(0.0, 0.5);
  const auto e = mc::simulate_counts(d, 25.0, 20000, 5);
  double prev = 0.0, total = 0.0;
  for (std::int64_t n = 0; n <= e.n_max; ++n) {
    const double f = e.ecdf(n);
    CHECK(f >= prev);
    prev = f;
    total += static_cast<double>(e.counts[static_cast<std::size_t>(n)]);
  }
  CHECK(e.ecdf(e.n_max) == 1.0);
  CHECK(total == 20000.0);
}
