#include <catch_amalgamated.hpp>

#include <cmath>

#include "renbounds/special_fn.hpp"
#include "renbounds/stein.hpp"

using namespace renbounds;
using Catch::Approx;

TEST_CASE("solution reference values and continuity", "[stein]") {
  CHECK(stein::solution(0.0, 0.0) == Approx(0.6266570686577501).epsilon(1e-14));
  // both branches agree across the joint at w = z
  const double below = stein::solution(3.0, 3.0 - 1e-13);
  const double above = stein::solution(3.0, 3.0 + 1e-13);
  CHECK(std::fabs(below - above) <= 1e-12);
  // composition through the scaled tail: sqrt(2pi) S(-1) (1-Phi(2))
  CHECK(stein::solution(2.0, 1.0) ==
        Approx(constants::sqrt_2pi * scaled_tail(-1.0) * phi_tail(2.0)).epsilon(1e-14));
  CHECK(stein::solution(2.0, 1.0) == Approx(0.079103387506914612522).epsilon(1e-13));
  CHECK_THROWS_AS(stein::solution(std::nan(""), 0.0), std::domain_error);
}

TEST_CASE("solution magnitude bounds on a grid", "[stein]") {
  for (double z = -5.0; z <= 5.0; z += 0.25) {
    const double cap = (z != 0.0)
                           ? std::min(constants::sqrt_2pi / 4.0, 1.0 / std::fabs(z))
                           : constants::sqrt_2pi / 4.0;
    for (double w = -8.0; w <= 8.0; w += 0.2) {
      const double f = stein::solution(z, w);
      CHECK(f > 0.0);
      CHECK(f <= cap + 1e-12);
    }
  }
}

TEST_CASE("solution_derivative closed form and bounds", "[stein]") {
  // the w -> -inf limit of f_z' is 0: w f_z -> -(1 - Phi(z)) cancels the
  // indicator term; checked through the closed form at w = -40
  const double limit_val =
      (constants::sqrt_2pi * (-40.0) * scaled_tail(40.0) + 1.0) * phi_tail(0.0);
  CHECK(stein::solution_derivative(0.0, -40.0) == Approx(limit_val).epsilon(1e-13));
  CHECK(std::fabs(stein::solution_derivative(0.0, -40.0)) < 1e-3);

  const double v = stein::solution_derivative(1.0, 0.5);
  CHECK(v >= -1.0);
  CHECK(v <= 1.0);

  // central-difference oracle at (z, w) = (2, 1)
  const double h = 1e-6;
  const double fd = (stein::solution(2.0, 1.0 + h) - stein::solution(2.0, 1.0 - h)) /
                    (2.0 * h);
  CHECK(stein::solution_derivative(2.0, 1.0) == Approx(fd).margin(1e-5));
}

TEST_CASE("solution_derivative jump handling at w == z", "[stein]") {
  const double z = 1.5;
  const double f_at = stein::solution(z, z);
  const double left = z * f_at + 1.0 - phi_cdf(z);
  const double right = z * f_at - phi_cdf(z);
  CHECK(stein::solution_derivative(z, z) == Approx(left).epsilon(1e-14));
  CHECK(stein::solution_derivative_left(z, z) == Approx(left).epsilon(1e-14));
  CHECK(stein::solution_derivative_right(z, z) == Approx(right).epsilon(1e-14));
  CHECK(stein::derivative_has_jump(z, z));
  CHECK_FALSE(stein::derivative_has_jump(z, z + 1e-9));
  CHECK(stein::evaluate(z, z).at_jump);
}

TEST_CASE("stein equation residual vanishes off the jump", "[stein]") {
  for (double z = -5.0; z <= 5.0; z += 0.37) {
    const double pz = phi_cdf(z);
    for (double w = -8.0; w <= 8.0; w += 0.29) {
      if (std::fabs(w - z) < 1e-6) continue;
      const double res = stein::solution_derivative(z, w) - w * stein::solution(z, w) -
                         ((w <= z ? 1.0 : 0.0) - pz);
      CHECK(std::fabs(res) <= 1e-10);
    }
  }
}

TEST_CASE("w f_z is nondecreasing in w", "[stein]") {
  for (double z : {-3.0, -1.0, 0.0, 0.7, 2.0, 4.5}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double w = -8.0; w <= 8.0; w += 0.05) {
      const double wf = w * stein::solution(z, w);
      CHECK(wf >= prev - 1e-12);
      prev = wf;
    }
  }
}

TEST_CASE("wf_derivative reference points and case bounds", "[stein]") {
  // case w <= 0: g <= (1-Phi(z)) 2/(1+|w|^3)
  const double g1 = stein::wf_derivative(2.5, -1.0);
  CHECK(g1 <= phi_tail(2.5) * 2.0 / (1.0 + 1.0) + 1e-12);
  CHECK(g1 > 0.0);

  // g(3, 0) = sqrt(2pi)(1-Phi(3)) Phi(0); also matches the fd oracle
  CHECK(stein::wf_derivative(3.0, 0.0) ==
        Approx(0.001691846286976363793).epsilon(1e-12));
  const double h = 1e-6;
  auto wf = [](double z, double w) { return w * stein::solution(z, w); };
  CHECK(stein::wf_derivative(3.0, 0.0) ==
        Approx((wf(3.0, h) - wf(3.0, -h)) / (2.0 * h)).margin(1e-6));
  CHECK(stein::wf_derivative(3.0, 0.0) > 0.0);

  // far side of the jump: g <= Phi(z) 2/(1+|w|^3) <= 2
  CHECK(stein::wf_derivative(2.2, 5.0) <= 2.0);

  // derivative consistency across a grid
  for (double z : {-2.0, 0.5, 3.0}) {
    for (double w = -6.0; w <= 6.0; w += 0.37) {
      if (std::fabs(w - z) < 1e-3) continue;
      const double fd = (wf(z, w + h) - wf(z, w - h)) / (2.0 * h);
      CHECK(stein::wf_derivative(z, w) == Approx(fd).margin(1e-6));
    }
  }
}

TEST_CASE("wf_derivative_bound branches and domination", "[stein]") {
  // w <= z/2 branch
  const double b1 = stein::wf_derivative_bound(3.0, 1.0);
  const double expect1 = 4.0 * 10.0 * 28.0 / 2.0 *
                         std::exp(9.0 / 8.0) * phi_tail(3.0);
  CHECK(b1 == Approx(expect1).epsilon(1e-12));
  CHECK(stein::wf_derivative(3.0, 1.0) <= b1);

  // w > z/2 branch
  const double b2 = stein::wf_derivative_bound(3.0, 2.0);
  const double expect2 = 8.0 * 10.0 * std::exp(4.5) * phi_tail(3.0);
  CHECK(b2 == Approx(expect2).epsilon(1e-12));
  CHECK(stein::wf_derivative(3.0, 2.0) <= b2);

  // scaled evaluation stays finite and positive despite the e^{z^2/8} factor
  const double b3 = stein::wf_derivative_bound(10.0, -5.0);
  CHECK(b3 > 0.0);
  CHECK(std::isfinite(b3));

  CHECK_THROWS_AS(stein::wf_derivative_bound(2.0, 0.0), std::domain_error);

  for (double z : {2.1, 2.5, 3.0, 5.0, 10.0, 30.0}) {
    for (double w = -20.0; w <= z + 20.0; w += 0.1) {
      CHECK(stein::wf_derivative(z, w) <=
            stein::wf_derivative_bound(z, w) + 1e-9);
    }
  }
}
