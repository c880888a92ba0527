// The bounded solution of the Stein equation
//   f'(w) - w f(w) = 1(w <= z) - Phi(z),
// its derivative, and the derivative g(w) = (w f(w))' with the case bounds
// used by the nonuniform Berry-Esseen argument.
//
// Every branch is rearranged so each product of a growing exponential with a
// normal tail routes through scaled_tail; exponent differences are only ever
// formed when they are nonpositive.
#pragma once

#include <algorithm>
#include <cmath>

#include "renbounds/common.hpp"
#include "renbounds/special_fn.hpp"

namespace renbounds::stein {

namespace detail {
// e^{(w^2 - z^2)/2}, callers guarantee |w| <= |z|.
inline double exp_sq_diff_half(double w, double z) {
  return std::exp(0.5 * (w - z) * (w + z));
}
}  // namespace detail

// f_z(w): sqrt(2pi) e^{w^2/2} Phi(w)(1-Phi(z)) for w <= z, and with the
// roles of w and z swapped in the tails for w > z. Continuous at w = z.
inline double solution(double z, double w) {
  require_finite(z, "stein::solution");
  require_finite(w, "stein::solution");
  if (w <= z) {
    if (w <= 0.0) {
      // e^{w^2/2} Phi(w) = scaled_tail(-w)
      return constants::sqrt_2pi * scaled_tail(-w) * phi_tail(z);
    }
    // 0 < w <= z: pull the tail of z into scaled form and carry the
    // (nonpositive) exponent difference explicitly.
    return constants::sqrt_2pi * phi_cdf(w) * scaled_tail(z) *
           detail::exp_sq_diff_half(w, z);
  }
  if (w >= 0.0) {
    return constants::sqrt_2pi * phi_cdf(z) * scaled_tail(w);
  }
  // z < w < 0: |z| > |w|, so the exponent difference is again nonpositive.
  return constants::sqrt_2pi * phi_tail(w) * scaled_tail(-z) *
         detail::exp_sq_diff_half(w, z);
}

// f_z'(w) piecewise closed form
//   (sqrt(2pi) w e^{w^2/2} Phi(w) + 1)(1 - Phi(z))   for w <= z
//   (sqrt(2pi) w e^{w^2/2} (1-Phi(w)) - 1) Phi(z)    for w >  z
// The indicator is left-inclusive; at the jump w == z this is the left limit.
inline double solution_derivative(double z, double w) {
  require_finite(z, "stein::solution_derivative");
  require_finite(w, "stein::solution_derivative");
  if (w <= z) {
    if (w <= 0.0) {
      return (constants::sqrt_2pi * w * scaled_tail(-w) + 1.0) * phi_tail(z);
    }
    return w * solution(z, w) + phi_tail(z);
  }
  if (w >= 0.0) {
    return (constants::sqrt_2pi * w * scaled_tail(w) - 1.0) * phi_cdf(z);
  }
  return w * solution(z, w) - phi_cdf(z);
}

inline bool derivative_has_jump(double z, double w) { return w == z; }

// One-sided limits of f_z' at w; they differ only at the jump w == z.
inline double solution_derivative_left(double z, double w) {
  if (w <= z) return solution_derivative(z, w);
  return w * solution(z, w) - phi_cdf(z);
}

inline double solution_derivative_right(double z, double w) {
  if (w < z) return solution_derivative(z, w);
  return w * solution(z, w) - phi_cdf(z);
}

// g(w) = (w f_z(w))' piecewise:
//   sqrt(2pi)(1-Phi(z)) ((1+w^2) e^{w^2/2} Phi(w) + w/sqrt(2pi))   for w <= z
//   sqrt(2pi) Phi(z) ((1+w^2) e^{w^2/2}(1-Phi(w)) - w/sqrt(2pi))   for w >  z
inline double wf_derivative(double z, double w) {
  require_finite(z, "stein::wf_derivative");
  require_finite(w, "stein::wf_derivative");
  const double w2 = 1.0 + w * w;
  if (w <= z) {
    if (w <= 0.0) {
      return constants::sqrt_2pi * phi_tail(z) *
             (w2 * scaled_tail(-w) + w * constants::inv_sqrt_2pi);
    }
    return w2 * solution(z, w) + w * phi_tail(z);
  }
  if (w >= 0.0) {
    return constants::sqrt_2pi * phi_cdf(z) *
           (w2 * scaled_tail(w) - w * constants::inv_sqrt_2pi);
  }
  return w2 * solution(z, w) - w * phi_cdf(z);
}

// Case bound on g for z > 2:
//   4(1+z^2)(1+z^3)/(1+|w|^3) e^{z^2/8}(1-Phi(z))   for w <= z/2
//   8(1+z^2) e^{z^2/2}(1-Phi(z))                    for w >  z/2
// The products with (1-Phi(z)) are evaluated as scaled_tail(z) times a
// nonpositive exponential, so no factor overflows.
inline double wf_derivative_bound(double z, double w) {
  require_finite(z, "stein::wf_derivative_bound");
  require_finite(w, "stein::wf_derivative_bound");
  if (!(z > 2.0)) throw std::domain_error("stein::wf_derivative_bound: requires z > 2");
  const double z2 = 1.0 + z * z;
  if (w <= 0.5 * z) {
    const double aw = std::fabs(w);
    return 4.0 * z2 * (1.0 + z * z * z) / (1.0 + aw * aw * aw) *
           scaled_tail(z) * std::exp(-0.375 * z * z);
  }
  return 8.0 * z2 * scaled_tail(z);
}

// Pointwise bundle with the jump flag for w == z.
struct Eval {
  double z;
  double w;
  double f;
  double fprime;
  double g;
  bool at_jump;
};

inline Eval evaluate(double z, double w) {
  return Eval{z,
              w,
              solution(z, w),
              solution_derivative(z, w),
              wf_derivative(z, w),
              derivative_has_jump(z, w)};
}

}  // namespace renbounds::stein
