// Renewal CLT bounds: the explicit second-moment bound with its smoothing
// and nonuniform terms, the classical third-moment bound, and the alternate
// composition through the truncated-moment functionals.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "renbounds/distributions.hpp"
#include "renbounds/special_fn.hpp"

namespace renbounds::renewal {

namespace constants {
// sqrt(2)/(e sqrt(pi)) and 32/(e^2 sqrt(2 pi)), 16/(e^2 sqrt(2 pi))
inline const double smooth_below = std::sqrt(2.0) / (std::exp(1.0) * std::sqrt(std::numbers::pi));
inline const double smooth_above_16 = 16.0 / (std::exp(2.0) * renbounds::constants::sqrt_2pi);
inline const double smooth_above_32 = 32.0 / (std::exp(2.0) * renbounds::constants::sqrt_2pi);
inline constexpr double nonuniform = 50990.0;  // 128 + 2 * 25431
inline constexpr double z_threshold = 224.0;
}  // namespace constants

// A (spec, n, t) evaluation point with both standardized arguments:
//   z     = (t - n mu)/(sigma sqrt(n))      (sum standardization)
//   z_phi = (n mu - t) sqrt(mu)/(sigma sqrt(t))  (count standardization)
struct RenewalPoint {
  double mu = 0.0;
  double sigma = 0.0;
  std::int64_t n = 0;
  double t = 0.0;
  double z = 0.0;
  double z_phi = 0.0;

  static RenewalPoint make(double mu, double sigma2, std::int64_t n, double t) {
    if (!(mu > 0.0) || !(sigma2 > 0.0)) {
      throw UnsupportedDistributionError("RenewalPoint: requires mu > 0 and sigma2 > 0");
    }
    if (n < 0) throw std::domain_error("RenewalPoint: n must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("RenewalPoint: t must be > 0");
    RenewalPoint p;
    p.mu = mu;
    p.sigma = std::sqrt(sigma2);
    p.n = n;
    p.t = t;
    const double nd = static_cast<double>(n);
    p.z = (n > 0) ? (t - nd * mu) / (p.sigma * std::sqrt(nd)) : 0.0;
    p.z_phi = (nd * mu - t) * std::sqrt(mu) / (p.sigma * std::sqrt(t));
    return p;
  }

  static RenewalPoint make(const DistributionSpec& d, std::int64_t n, double t) {
    return make(d.mu(), d.sigma2(), n, t);
  }
};

enum class SmoothRegime { TimeBelowMean, TimeAboveMean };  // t <= n mu vs t > n mu

struct RenewalBound {
  double term_smooth = 0.0;
  double term_nonuniform = 0.0;
  double total = 0.0;
  SmoothRegime regime = SmoothRegime::TimeBelowMean;
  double clamped() const { return std::min(1.0, total); }
};

// Bound on |Phi((n mu - t)/(sigma sqrt(n))) - Phi((n mu - t) sqrt(mu)/(sigma sqrt(t)))|:
//   sqrt(2)/(e sqrt(pi)) * sigma/sqrt(t mu)                                  if t <= n mu
//   16/(e^2 sqrt(2pi)) * t^2 sigma^3 / (n^{1/2} mu^2 (t-n mu)^2 (sqrt(n mu t)+t))  if t > n mu
// t == n mu falls in the first branch; the second diverges as t -> n mu from
// above and is returned as-is.
inline double phi_gap_bound(double mu, double sigma, std::int64_t n, double t) {
  if (!(mu > 0.0) || !(sigma > 0.0) || n < 1 || !(t > 0.0)) {
    throw std::domain_error("phi_gap_bound: requires mu, sigma, t > 0 and n >= 1");
  }
  const double nd = static_cast<double>(n);
  if (t <= nd * mu) {
    return constants::smooth_below * sigma / std::sqrt(t * mu);
  }
  const double d = t - nd * mu;
  return constants::smooth_above_16 * t * t * sigma * sigma * sigma /
         (std::sqrt(nd) * mu * mu * d * d * (std::sqrt(nd * mu * t) + t));
}

// The full renewal CLT bound at an evaluation point (n >= 1):
//   1(t <= n mu) sqrt(2)/(e sqrt(pi)) sigma/(sqrt(t) mu)
// + 1(t > n mu) 32/(e^2 sqrt(2pi)) (1/sqrt(t)) (sigma^3/(mu^2 sqrt(t)) + sigma/(224^2 sqrt(mu)))
// + 50990 (1 + |t - n mu|/(sigma sqrt(n)))^{-2}
inline RenewalBound clt_bound(const RenewalPoint& p) {
  if (p.n < 1) throw std::domain_error("clt_bound: stated for n >= 1");
  RenewalBound b;
  const double nd = static_cast<double>(p.n);
  if (p.t <= nd * p.mu) {
    b.regime = SmoothRegime::TimeBelowMean;
    b.term_smooth = constants::smooth_below * p.sigma / (std::sqrt(p.t) * p.mu);
  } else {
    b.regime = SmoothRegime::TimeAboveMean;
    const double c224 = constants::z_threshold * constants::z_threshold;
    b.term_smooth = constants::smooth_above_32 / std::sqrt(p.t) *
                    (p.sigma * p.sigma * p.sigma / (p.mu * p.mu * std::sqrt(p.t)) +
                     p.sigma / (c224 * std::sqrt(p.mu)));
  }
  const double az = std::fabs(p.z);
  b.term_nonuniform = constants::nonuniform / ((1.0 + az) * (1.0 + az));
  b.total = b.term_smooth + b.term_nonuniform;
  return b;
}

// Third-moment bound 4 (gamma/sigma)^3 (sqrt(mu)/sqrt(t))^{1/2}; empty when
// E|Z-mu|^3 diverges (heavy-tailed families).
inline std::optional<double> englund_bound(const DistributionSpec& d, double t) {
  if (!(t > 0.0)) throw std::domain_error("englund_bound: requires t > 0");
  const Moments m = moments(d);
  if (!std::isfinite(m.gamma_abs3)) return std::nullopt;
  const double ratio = m.gamma_abs3 / std::sqrt(m.sigma2);
  return 4.0 * ratio * ratio * ratio * std::sqrt(std::sqrt(m.mu) / std::sqrt(t));
}

// Alternate composition: uniform-CLT smoothing max term plus the truncated
// moment terms of the standardized summands at this n:
//   (1/sqrt(t)) max{ sqrt(2)/(e sqrt(pi)) sigma/mu,
//                    32/(e^2 sqrt(2pi)) (sigma^3/(mu^2 sqrt(t)) + sigma/(224^2 sqrt(mu))) }
//   + 4 (4 beta2 + 3 beta3)
inline double alternate_bound(const DistributionSpec& d, std::int64_t n, double t) {
  if (n < 1 || !(t > 0.0)) {
    throw std::domain_error("alternate_bound: requires n >= 1 and t > 0");
  }
  const double mu = d.mu();
  const double sigma = d.sigma();
  const double c224 = constants::z_threshold * constants::z_threshold;
  const double a = constants::smooth_below * sigma / mu;
  const double b = constants::smooth_above_32 *
                   (sigma * sigma * sigma / (mu * mu * std::sqrt(t)) +
                    sigma / (c224 * std::sqrt(mu)));
  const SummandProfile prof = summand_profile(d, n);
  return std::max(a, b) / std::sqrt(t) + 4.0 * (4.0 * prof.beta2 + 3.0 * prof.beta3);
}

// Split of P(T_n >= t) - Phi(z_phi) into the sum-CLT deviation and the
// normal-argument gap:
//   clt_term = P(T_n >= t) - (1 - Phi((t - n mu)/(sigma sqrt(n))))
//   gap_term = Phi((n mu - t)/(sigma sqrt(n))) - Phi(z_phi)
struct Decomposition {
  double clt_term = 0.0;
  double gap_term = 0.0;
  double total() const { return clt_term + gap_term; }
};

inline Decomposition decomposition_terms(const RenewalPoint& p, double p_tn_ge_t) {
  if (!(p_tn_ge_t >= 0.0 && p_tn_ge_t <= 1.0)) {
    throw std::domain_error("decomposition_terms: probability outside [0,1]");
  }
  Decomposition out;
  out.clt_term = p_tn_ge_t - phi_tail(p.z);
  out.gap_term = phi_cdf(-p.z) - phi_cdf(p.z_phi);
  return out;
}

}  // namespace renbounds::renewal
