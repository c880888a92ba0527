// Nonuniform Berry-Esseen bound for sums of independent standardized
// summands under second-moment conditions, with the explicit constant
// regimes, the uniform bound, and the concentration bounds behind it.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renbounds/distributions.hpp"
#include "renbounds/enumeration.hpp"

namespace renbounds::besseen {

enum class Regime { BetaLarge, BetaSmallZSmall, BetaSmallZLarge };

// Constant table, selected by (beta2+beta3, |z|). Both boundaries are
// inclusive: beta2+beta3 == 1 selects BetaLarge, |z| == 2 selects the small-z
// constant.
struct C2Table {
  double beta_large = 15.0;
  double small_z = 37.0;
  double large_z = 25431.0;
};

struct BoundBreakdown {
  double z = 0.0;
  Regime regime = Regime::BetaLarge;
  double c2 = 0.0;
  double tail_term = 0.0;  // 2 sum_i P(|xi_i| > (1 v |z|)/4)
  double main_term = 0.0;  // C2 (1+|z|)^{-2} (beta2+beta3)
  double total = 0.0;
  // Kolmogorov distances never exceed 1; the raw total is kept for formula
  // verification and clamped only in presentation.
  double clamped() const { return std::min(1.0, total); }
};

inline BoundBreakdown bound(const SummandProfile& p, double z, const C2Table& table = {}) {
  require_finite(z, "besseen::bound");
  const double az = std::fabs(z);
  const double beta = p.beta_sum();
  BoundBreakdown b;
  b.z = z;
  if (beta >= 1.0) {
    b.regime = Regime::BetaLarge;
    b.c2 = table.beta_large;
  } else if (az <= 2.0) {
    b.regime = Regime::BetaSmallZSmall;
    b.c2 = table.small_z;
  } else {
    b.regime = Regime::BetaSmallZLarge;
    b.c2 = table.large_z;
  }
  b.tail_term = 2.0 * p.tail_sum(std::max(1.0, az) / 4.0);
  b.main_term = b.c2 * beta / ((1.0 + az) * (1.0 + az));
  b.total = b.tail_term + b.main_term;
  return b;
}

// Uniform companion bound sup_z |P(W <= z) - Phi(z)| <= 4.1 (beta2+beta3).
inline double uniform_bound(const SummandProfile& p, double constant = 4.1) {
  return constant * p.beta_sum();
}

// Tail bound for a sum of independent eta_i with E eta_i <= 0 and
// sum E eta_i^2 <= B^2 (n i.i.d. copies of `eta` here):
//   P(S_n >= x) <= P(max_i eta_i > (x v B)/p) + e^p (1 + x^2/(p B^2))^{-p},
// with the max term computed exactly from the survival function.
inline double concentration_tail(const enumeration::AtomDist& eta, int n, double B,
                                 double x, double p) {
  if (!(x > 0.0) || !(p >= 1.0) || !(B > 0.0)) {
    throw std::domain_error("concentration_tail: requires x > 0, p >= 1, B > 0");
  }
  const double theta = std::max(x, B) / p;
  const double miss = 1.0 - eta.tail_above(theta);  // P(eta <= theta)
  const double max_term = 1.0 - std::pow(miss, static_cast<double>(n));
  const double exp_term = std::exp(p) * std::pow(1.0 + x * x / (p * B * B), -p);
  return max_term + exp_term;
}

// Same bound with the max term replaced by the union bound sum_i P(eta_i > theta).
inline double concentration_tail_union(const enumeration::AtomDist& eta, int n, double B,
                                       double x, double p) {
  if (!(x > 0.0) || !(p >= 1.0) || !(B > 0.0)) {
    throw std::domain_error("concentration_tail_union: requires x > 0, p >= 1, B > 0");
  }
  const double theta = std::max(x, B) / p;
  return n * eta.tail_above(theta) +
         std::exp(p) * std::pow(1.0 + x * x / (p * B * B), -p);
}

// Exponential-moment bound: for eta_i <= alpha, E eta_i <= 0 and
// sum E eta_i^2 <= B^2,  E e^{t S_n} <= exp(alpha^{-2}(e^{t alpha} - 1 - t alpha) B^2).
inline double mgf_bound(double alpha, double B, double t) {
  if (!(alpha > 0.0) || !(t > 0.0) || !(B > 0.0)) {
    throw std::domain_error("mgf_bound: requires alpha > 0, t > 0, B > 0");
  }
  const double ta = t * alpha;
  return std::exp((std::expm1(ta) - ta) * B * B / (alpha * alpha));
}

// Tail of the sum on the event that some summand escapes the truncation:
//   P(W >= z, max_i xi_i > 1) <= 2 sum_i P(|xi_i| > z/(2p)) + e^p (1+z^2/(4p))^{-p} beta2
// for z >= 2 and p >= 2.
inline double truncated_max_tail(const SummandProfile& prof, double z, double p) {
  if (!(z >= 2.0) || !(p >= 2.0)) {
    throw std::domain_error("truncated_max_tail: requires z >= 2 and p >= 2");
  }
  return 2.0 * prof.tail_sum(z / (2.0 * p)) +
         std::exp(p) * std::pow(1.0 + z * z / (4.0 * p), -p) * prof.beta2;
}

// Smoothing / anti-concentration bound for the leave-one-out truncated sum:
//   P(a <= Wbar^(i) <= b) <= 6 (min(1, b-a) + beta2 + beta3) e^{-a/2}.
inline double smoothing_concentration(double a, double b, const SummandProfile& prof) {
  if (!(a < b)) throw std::domain_error("smoothing_concentration: requires a < b");
  return 6.0 * (std::min(1.0, b - a) + prof.beta_sum()) * std::exp(-0.5 * a);
}

}  // namespace renbounds::besseen
