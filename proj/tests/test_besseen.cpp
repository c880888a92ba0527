#include <catch_amalgamated.hpp>

#include <cmath>

#include "renbounds/besseen.hpp"
#include "renbounds/enumeration.hpp"
#include "renbounds/special_fn.hpp"

using namespace renbounds;
using Catch::Approx;

namespace {
SummandProfile synthetic_profile(double beta2, double beta3) {
  SummandProfile p;
  p.n = 1;
  p.beta2 = beta2;
  p.beta3 = beta3;
  p.tail_sum = [](double) { return 0.0; };
  return p;
}
}  // namespace

TEST_CASE("bound regime selection and the exact discrete case", "[besseen]") {
  CHECK(besseen::bound(synthetic_profile(0.7, 0.5), 0.0).c2 == 15.0);
  CHECK(besseen::bound(synthetic_profile(0.7, 0.5), 0.0).regime ==
        besseen::Regime::BetaLarge);

  const auto d = DistributionSpec::discrete({{0.0, 0.5}, {2.0, 0.5}});
  const auto p = summand_profile(d, 4);
  const auto b0 = besseen::bound(p, 0.0);
  CHECK(b0.regime == besseen::Regime::BetaSmallZSmall);
  CHECK(b0.c2 == 37.0);
  CHECK(b0.tail_term == Approx(8.0).epsilon(1e-15));
  CHECK(b0.main_term == Approx(18.5).epsilon(1e-15));
  CHECK(b0.total == Approx(26.5).epsilon(1e-15));
  CHECK(b0.clamped() == 1.0);

  const auto b3 = besseen::bound(p, 3.0);
  CHECK(b3.c2 == 25431.0);
  CHECK(b3.regime == besseen::Regime::BetaSmallZLarge);
  CHECK(b3.tail_term == 0.0);  // |xi| = 1/2 never exceeds 3/4
  CHECK(b3.total == Approx(25431.0 * 0.5 / 16.0).epsilon(1e-15));
}

TEST_CASE("bound boundary conventions are inclusive", "[besseen]") {
  // beta2+beta3 == 1 selects the beta-large constant
  CHECK(besseen::bound(synthetic_profile(1.0, 0.0), 0.0).c2 == 15.0);
  CHECK(besseen::bound(synthetic_profile(0.5, 0.5 - 1e-12), 0.0).c2 == 37.0);
  // |z| == 2 selects the small-z constant
  CHECK(besseen::bound(synthetic_profile(0.0, 0.5), 2.0).c2 == 37.0);
  CHECK(besseen::bound(synthetic_profile(0.0, 0.5), -2.0).c2 == 37.0);
  CHECK(besseen::bound(synthetic_profile(0.0, 0.5), 2.0 + 1e-12).c2 == 25431.0);
  // the exactly-on-boundary dyadic family lands in the beta-large regime
  const auto fam = enumeration::SummandFamily::three_point(8, 2.0, 1.0 / 64.0);
  CHECK(fam.profile().beta_sum() == 1.0);
  CHECK(besseen::bound(fam.profile(), 0.0).c2 == 15.0);
}

TEST_CASE("bound regime selection across the (beta, z) grid", "[besseen]") {
  for (double beta = 0.0; beta <= 2.0; beta += 0.1) {
    for (double z = -6.0; z <= 6.0; z += 0.25) {
      const auto b = besseen::bound(synthetic_profile(beta, 0.0), z);
      if (beta >= 1.0) {
        CHECK(b.c2 == 15.0);
        CHECK(b.regime == besseen::Regime::BetaLarge);
      } else if (std::fabs(z) <= 2.0) {
        CHECK(b.c2 == 37.0);
        CHECK(b.regime == besseen::Regime::BetaSmallZSmall);
      } else {
        CHECK(b.c2 == 25431.0);
        CHECK(b.regime == besseen::Regime::BetaSmallZLarge);
      }
      CHECK(b.total == b.tail_term + b.main_term);
      CHECK(b.total >= 0.0);
    }
  }
}

TEST_CASE("bound is symmetric in z", "[besseen]") {
  const auto p = summand_profile(DistributionSpec::exponential(1.0), 50);
  for (double z = 0.0; z <= 6.0; z += 0.31) {
    CHECK(besseen::bound(p, z).total == besseen::bound(p, -z).total);
  }
}

TEST_CASE("uniform_bound", "[besseen]") {
  CHECK(besseen::uniform_bound(synthetic_profile(0.0, 0.0)) == 0.0);
  CHECK(besseen::uniform_bound(synthetic_profile(0.0, 0.5)) == Approx(2.05));
  CHECK(besseen::uniform_bound(synthetic_profile(0.6, 0.4)) == Approx(4.1));
}

TEST_CASE("concentration_tail", "[besseen]") {
  // point-mass-at-0 summands: max term vanishes
  const enumeration::AtomDist zero{{0.0}, {1.0}};
  const double b = besseen::concentration_tail(zero, 5, 1.0, 2.0, 2.0);
  CHECK(b == Approx(std::exp(2.0) * std::pow(3.0, -2.0)).epsilon(1e-14));

  // analytic value with p=2, B=1, x=2 plus an exact max term
  const enumeration::AtomDist eta{{-0.5, 0.5, 1.5}, {0.5, 0.3, 0.2}};
  const double theta = 1.0;  // (x v B)/p = 2/2
  const double max_term = 1.0 - std::pow(1.0 - 0.2, 3.0);
  CHECK(besseen::concentration_tail(eta, 3, 1.0, 2.0, 2.0) ==
        Approx(max_term + std::exp(2.0) / 9.0).epsilon(1e-14));
  CHECK(besseen::concentration_tail_union(eta, 3, 1.0, 2.0, 2.0) ==
        Approx(3.0 * 0.2 + std::exp(2.0) / 9.0).epsilon(1e-14));
  (void)theta;

  // dominance over the exact enumerated tail for a small discrete case
  const auto fam = enumeration::SummandFamily::bernoulli(3, 0.3);
  const auto w = fam.truncated_sum();
  const auto xb = fam.truncated();
  for (double x : {0.5, 1.0, 2.0}) {
    for (double p : {1.0, 2.0}) {
      CHECK(w.prob_geq(x) <= besseen::concentration_tail(xb, 3, 1.0, x, p) + 1e-12);
    }
  }
  CHECK_THROWS_AS(besseen::concentration_tail(zero, 5, 1.0, -1.0, 2.0),
                  std::domain_error);
}

TEST_CASE("mgf_bound", "[besseen]") {
  const double e = std::exp(1.0);
  CHECK(besseen::mgf_bound(1.0, 1.0, 1.0) == Approx(std::exp(e - 2.0)).epsilon(1e-14));
  CHECK(besseen::mgf_bound(1.0, 1.0, 2.0) ==
        Approx(std::exp(e * e - 3.0)).epsilon(1e-14));
  CHECK(besseen::mgf_bound(1.0, 1.0, 1e-8) == Approx(1.0).margin(1e-7));
  CHECK_THROWS_AS(besseen::mgf_bound(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("truncated_max_tail", "[besseen]") {
  // beta2 = 0 reduces the bound to the tail sum
  auto p0 = synthetic_profile(0.0, 0.5);
  p0.tail_sum = [](double theta) { return theta < 0.4 ? 2.0 : 0.0; };
  CHECK(besseen::truncated_max_tail(p0, 2.0, 3.0) == Approx(4.0).epsilon(1e-14));

  // formula value: z=2, p=2, beta2=0.1, zero tails -> e^2 (1 + 4/8)^{-2} 0.1
  const auto p1 = synthetic_profile(0.1, 0.0);
  CHECK(besseen::truncated_max_tail(p1, 2.0, 2.0) ==
        Approx(std::exp(2.0) * (4.0 / 9.0) * 0.1).epsilon(1e-14));
  CHECK(besseen::truncated_max_tail(p1, 2.0, 2.0) ==
        Approx(0.32840249328580673).epsilon(1e-13));

  // exceeds the exact enumerated joint tail
  const auto fam = enumeration::SummandFamily::bernoulli(6, 0.1);
  const auto prof = fam.profile();
  CHECK(fam.joint_tail_with_max(4.0) <=
        besseen::truncated_max_tail(prof, 4.0, 2.0) + 1e-12);

  CHECK_THROWS_AS(besseen::truncated_max_tail(p1, 1.9, 2.0), std::domain_error);
  CHECK_THROWS_AS(besseen::truncated_max_tail(p1, 2.0, 1.9), std::domain_error);
}

TEST_CASE("smoothing_concentration", "[besseen]") {
  const auto p = synthetic_profile(0.2, 0.3);
  // interval shrinks to nothing: 6(b2+b3)e^{-a/2} remains
  const double a = 0.7;
  CHECK(besseen::smoothing_concentration(a, a + 1e-12, p) ==
        Approx(6.0 * 0.5 * std::exp(-0.35)).margin(1e-11));
  CHECK(besseen::smoothing_concentration(0.0, 1.0, synthetic_profile(0.25, 0.25)) ==
        Approx(9.0).epsilon(1e-14));
  CHECK_THROWS_AS(besseen::smoothing_concentration(1.0, 1.0, p), std::domain_error);

  // dominance over the exact enumerated interval probability
  const auto fam = enumeration::SummandFamily::symmetric_two_point(8);
  const auto v = fam.truncated_sum_leave_one();
  const auto prof = fam.profile();
  for (const auto& [lo, hi] : std::vector<std::pair<double, double>>{
           {0.0, 1.0}, {-1.0, 0.0}, {0.5, 2.0}}) {
    CHECK(v.prob_between(lo, hi) <=
          besseen::smoothing_concentration(lo, hi, prof) + 1e-12);
  }
}

TEST_CASE("constant table arithmetic", "[besseen]") {
  const double e2 = std::exp(2.0);
  CHECK(1.867 * e2 + 1.176 < 15.0);
  CHECK(4.1 * 9.0 < 37.0);
  CHECK(4.0 * e2 + 16.0 / std::pow(std::exp(1.0), 1.5) * 7115.0 < 25431.0);
  CHECK(128.0 + 2.0 * 25431.0 == 50990.0);
}
