// Inter-arrival distribution registry: exact/quadrature moments, truncated
// moments of the standardized summands, tail probabilities, and variate
// generation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "renbounds/common.hpp"
#include "renbounds/rng.hpp"
#include "renbounds/special_fn.hpp"

namespace renbounds {

struct DiscreteAtom {
  double value;
  double prob;
};

enum class Family { Exponential, Pareto, Gamma, LogNormal, Uniform, Discrete };

// An inter-arrival law. Support must be nonnegative, the mean positive and
// the variance finite (sigma2 == 0 is allowed only for a discrete point mass,
// which can be simulated but not standardized).
class DistributionSpec {
 public:
  static DistributionSpec exponential(double rate) {
    if (!(rate > 0.0)) throw UnsupportedDistributionError("exponential: rate must be > 0");
    DistributionSpec d(Family::Exponential, rate, 0.0);
    d.mu_ = 1.0 / rate;
    d.sigma2_ = 1.0 / (rate * rate);
    return d;
  }

  // Density alpha * scale^alpha / x^{alpha+1} on [scale, inf). alpha <= 2
  // has infinite variance and is rejected; alpha <= 3 has no third moment.
  static DistributionSpec pareto(double scale, double alpha) {
    if (!(scale > 0.0)) throw UnsupportedDistributionError("pareto: scale must be > 0");
    if (!(alpha > 2.0)) {
      throw UnsupportedDistributionError("pareto: alpha <= 2 has divergent variance");
    }
    DistributionSpec d(Family::Pareto, scale, alpha);
    d.mu_ = alpha * scale / (alpha - 1.0);
    d.sigma2_ = alpha * scale * scale / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0));
    return d;
  }

  static DistributionSpec gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
      throw UnsupportedDistributionError("gamma: shape and rate must be > 0");
    }
    DistributionSpec d(Family::Gamma, shape, rate);
    d.mu_ = shape / rate;
    d.sigma2_ = shape / (rate * rate);
    return d;
  }

  static DistributionSpec lognormal(double mu_log, double sigma_log) {
    if (!(sigma_log > 0.0)) {
      throw UnsupportedDistributionError("lognormal: sigma_log must be > 0");
    }
    DistributionSpec d(Family::LogNormal, mu_log, sigma_log);
    d.mu_ = std::exp(mu_log + 0.5 * sigma_log * sigma_log);
    d.sigma2_ = (std::exp(sigma_log * sigma_log) - 1.0) *
                std::exp(2.0 * mu_log + sigma_log * sigma_log);
    return d;
  }

  static DistributionSpec uniform(double a, double b) {
    if (!(a >= 0.0) || !(b > a)) {
      throw UnsupportedDistributionError("uniform: requires 0 <= a < b");
    }
    DistributionSpec d(Family::Uniform, a, b);
    d.mu_ = 0.5 * (a + b);
    d.sigma2_ = (b - a) * (b - a) / 12.0;
    return d;
  }

  static DistributionSpec discrete(std::vector<DiscreteAtom> atoms) {
    if (atoms.empty()) throw UnsupportedDistributionError("discrete: no atoms");
    double mass = 0.0, mean = 0.0;
    for (const auto& a : atoms) {
      if (!(a.value >= 0.0)) {
        throw UnsupportedDistributionError("discrete: atom values must be >= 0");
      }
      if (!(a.prob > 0.0)) throw UnsupportedDistributionError("discrete: atom probs must be > 0");
      mass += a.prob;
      mean += a.prob * a.value;
    }
    if (std::fabs(mass - 1.0) > 1e-12) {
      throw UnsupportedDistributionError("discrete: probabilities must sum to 1");
    }
    if (!(mean > 0.0)) throw UnsupportedDistributionError("discrete: mean must be > 0");
    double var = 0.0;
    for (const auto& a : atoms) var += a.prob * (a.value - mean) * (a.value - mean);
    DistributionSpec d(Family::Discrete, 0.0, 0.0);
    std::sort(atoms.begin(), atoms.end(),
              [](const DiscreteAtom& x, const DiscreteAtom& y) { return x.value < y.value; });
    d.atoms_ = std::move(atoms);
    d.mu_ = mean;
    d.sigma2_ = var;
    return d;
  }

  Family family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  double support_min() const {
    switch (family_) {
      case Family::Pareto: return p1_;
      case Family::Uniform: return p1_;
      case Family::Discrete: return atoms_.front().value;
      default: return 0.0;
    }
  }

  double support_max() const {
    switch (family_) {
      case Family::Uniform: return p2_;
      case Family::Discrete: return atoms_.back().value;
      default: return std::numeric_limits<double>::infinity();
    }
  }

  const std::vector<DiscreteAtom>& atoms() const { return atoms_; }
  double mu() const { return mu_; }
  double sigma2() const { return sigma2_; }
  double sigma() const { return std::sqrt(sigma2_); }

  std::string name() const {
    std::ostringstream os;
    switch (family_) {
      case Family::Exponential: os << "exponential(rate=" << p1_ << ")"; break;
      case Family::Pareto: os << "pareto(scale=" << p1_ << ",alpha=" << p2_ << ")"; break;
      case Family::Gamma: os << "gamma(shape=" << p1_ << ",rate=" << p2_ << ")"; break;
      case Family::LogNormal: os << "lognormal(mu_log=" << p1_ << ",sigma_log=" << p2_ << ")"; break;
      case Family::Uniform: os << "uniform(a=" << p1_ << ",b=" << p2_ << ")"; break;
      case Family::Discrete: os << "discrete(" << atoms_.size() << " atoms)"; break;
    }
    return os.str();
  }

  // P(Z <= x)
  double cdf(double x) const {
    switch (family_) {
      case Family::Exponential:
        return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
      case Family::Pareto:
        return x <= p1_ ? 0.0 : 1.0 - std::pow(p1_ / x, p2_);
      case Family::Gamma:
        return x <= 0.0 ? 0.0 : boost::math::gamma_p(p1_, p2_ * x);
      case Family::LogNormal:
        return x <= 0.0 ? 0.0 : phi_cdf((std::log(x) - p1_) / p2_);
      case Family::Uniform:
        return x <= p1_ ? 0.0 : (x >= p2_ ? 1.0 : (x - p1_) / (p2_ - p1_));
      case Family::Discrete: {
        double acc = 0.0;
        for (const auto& a : atoms_) {
          if (a.value <= x) acc += a.prob;
        }
        return std::min(acc, 1.0);
      }
    }
    return 0.0;
  }

  // P(Z > x), with relative accuracy in the far tail.
  double survival(double x) const {
    switch (family_) {
      case Family::Exponential:
        return x <= 0.0 ? 1.0 : std::exp(-p1_ * x);
      case Family::Pareto:
        return x <= p1_ ? 1.0 : std::pow(p1_ / x, p2_);
      case Family::Gamma:
        return x <= 0.0 ? 1.0 : boost::math::gamma_q(p1_, p2_ * x);
      case Family::LogNormal:
        return x <= 0.0 ? 1.0 : phi_tail((std::log(x) - p1_) / p2_);
      case Family::Uniform:
        return x <= p1_ ? 1.0 : (x >= p2_ ? 0.0 : (p2_ - x) / (p2_ - p1_));
      case Family::Discrete: {
        double acc = 0.0;
        for (const auto& a : atoms_) {
          if (a.value > x) acc += a.prob;
        }
        return std::min(acc, 1.0);
      }
    }
    return 0.0;
  }

  // P(Z < x); differs from cdf only for discrete laws.
  double cdf_strict(double x) const {
    if (family_ != Family::Discrete) return cdf(x);
    double acc = 0.0;
    for (const auto& a : atoms_) {
      if (a.value < x) acc += a.prob;
    }
    return std::min(acc, 1.0);
  }

  double pdf(double x) const {
    switch (family_) {
      case Family::Exponential:
        return x < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * x);
      case Family::Pareto:
        return x < p1_ ? 0.0 : p2_ * std::pow(p1_, p2_) / std::pow(x, p2_ + 1.0);
      case Family::Gamma:
        return x <= 0.0 ? 0.0
                        : boost::math::gamma_p_derivative(p1_, p2_ * x) * p2_;
      case Family::LogNormal:
        return x <= 0.0 ? 0.0 : phi_pdf((std::log(x) - p1_) / p2_) / (x * p2_);
      case Family::Uniform:
        return (x < p1_ || x > p2_) ? 0.0 : 1.0 / (p2_ - p1_);
      case Family::Discrete:
        throw std::domain_error("pdf: discrete law has no density");
    }
    return 0.0;
  }

  // One variate from the given stream. Inverse-c.d.f. sampling everywhere
  // except Gamma, which uses Marsaglia-Tsang squeeze-rejection (variable
  // draw count; harmless because each replicate owns its stream).
  double draw(rng::Stream& s) const {
    switch (family_) {
      case Family::Exponential:
        return -std::log(s.next_unit_pos()) / p1_;
      case Family::Pareto:
        return p1_ * std::pow(s.next_unit_pos(), -1.0 / p2_);
      case Family::Gamma:
        return draw_gamma(p1_, s) / p2_;
      case Family::LogNormal:
        return std::exp(p1_ + p2_ * rng::next_normal(s));
      case Family::Uniform:
        return p1_ + (p2_ - p1_) * s.next_unit();
      case Family::Discrete: {
        const double u = s.next_unit();
        double acc = 0.0;
        for (const auto& a : atoms_) {
          acc += a.prob;
          if (u < acc) return a.value;
        }
        return atoms_.back().value;
      }
    }
    return 0.0;
  }

 private:
  DistributionSpec(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

  static double draw_gamma(double shape, rng::Stream& s) {
    if (shape < 1.0) {
      const double u = s.next_unit_pos();
      return draw_gamma(shape + 1.0, s) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = rng::next_normal(s);
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = s.next_unit_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  Family family_;
  double p1_, p2_;
  std::vector<DiscreteAtom> atoms_;
  double mu_ = 0.0, sigma2_ = 0.0;
};

struct Moments {
  double mu;
  double sigma2;
  double gamma_abs3;  // E|Z - mu|^3, +inf when the third moment diverges
};

// Truncated moments of the standardized summands xi = (Z - mu)/(sigma sqrt(n)):
//   beta2 = n E[xi^2 1(|xi| > 1)],  beta3 = n E[|xi|^3 1(|xi| <= 1)],
// plus the evaluable tail map  theta -> n P(|xi| > theta).
struct SummandProfile {
  std::int64_t n = 0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  std::function<double(double)> tail_sum;
  double beta_sum() const { return beta2 + beta3; }
};

namespace detail {

inline double integrate_finite(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-12);
}

inline double integrate_upper(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double u) { return f(a + u); }, 1e-12);
}

// Exponential(rate): E[(Z-mu)^2 ; Z > c] in closed form.
inline double exp_second_above(double rate, double mu, double c) {
  const double d = c - mu;
  return std::exp(-rate * c) * (d * d + 2.0 * d / rate + 2.0 / (rate * rate));
}

// Exponential(rate): antiderivative flavor for E[(Z-mu)^3 ; c <= Z <= d].
inline double exp_third_between(double rate, double mu, double c, double d) {
  auto F = [&](double x) {
    const double u = x - mu;
    return std::exp(-rate * x) *
           (u * u * u + 3.0 * u * u / rate + 6.0 * u / (rate * rate) +
            6.0 / (rate * rate * rate));
  };
  return F(c) - F(d);
}

// Pareto(scale xm, shape alpha): E[(Z-mu)^2 ; Z > c] for c >= xm, alpha > 2.
inline double pareto_second_above(double xm, double alpha, double mu, double c) {
  const double k = alpha * std::pow(xm, alpha);
  return k * (std::pow(c, 2.0 - alpha) / (alpha - 2.0) -
              2.0 * mu * std::pow(c, 1.0 - alpha) / (alpha - 1.0) +
              mu * mu * std::pow(c, -alpha) / alpha);
}

// Pareto: E[(Z-mu)^3 ; c <= Z <= d] for xm <= c <= d (alpha = 3 needs the
// log antiderivative).
inline double pareto_third_between(double xm, double alpha, double mu, double c, double d) {
  const double k = alpha * std::pow(xm, alpha);
  auto A = [&](double x) {
    double lead;
    if (alpha == 3.0) {
      lead = std::log(x);
    } else {
      lead = std::pow(x, 3.0 - alpha) / (3.0 - alpha);
    }
    return lead + 3.0 * mu * std::pow(x, 2.0 - alpha) / (alpha - 2.0) -
           3.0 * mu * mu * std::pow(x, 1.0 - alpha) / (alpha - 1.0) +
           mu * mu * mu * std::pow(x, -alpha) / alpha;
  };
  return k * (A(d) - A(c));
}

}  // namespace detail

// Mean, variance, and third absolute central moment. Closed forms where the
// family admits them, adaptive quadrature elsewhere.
inline Moments moments(const DistributionSpec& d) {
  const double mu = d.mu();
  const double s2 = d.sigma2();
  const double inf = std::numeric_limits<double>::infinity();
  switch (d.family()) {
    case Family::Exponential: {
      // E|Z-mu|^3 = (12/e - 2) / rate^3
      const double r = d.param1();
      return {mu, s2, (12.0 / std::exp(1.0) - 2.0) / (r * r * r)};
    }
    case Family::Uniform: {
      const double w = d.param2() - d.param1();
      return {mu, s2, w * w * w / 32.0};
    }
    case Family::Discrete: {
      double g = 0.0;
      for (const auto& a : d.atoms()) g += a.prob * std::pow(std::fabs(a.value - mu), 3.0);
      return {mu, s2, g};
    }
    case Family::Pareto: {
      if (d.param2() <= 3.0) return {mu, s2, inf};
      break;
    }
    default:
      break;
  }
  auto f = [&](double x) {
    const double w = d.pdf(x);
    return w > 0.0 ? std::pow(std::fabs(x - mu), 3.0) * w : 0.0;
  };
  const double lo = (d.family() == Family::Pareto) ? d.param1() : 0.0;
  const double g =
      detail::integrate_finite(f, lo, mu) + detail::integrate_upper(f, mu);
  return {mu, s2, g};
}

// beta2 / beta3 / tail map for xi = (Z - mu)/(sigma sqrt(n)). Closed forms
// for Discrete, Uniform, Exponential and Pareto; quadrature with breakpoints
// at the truncation boundaries Z = mu -+ sigma sqrt(n) otherwise.
inline SummandProfile summand_profile(const DistributionSpec& d, std::int64_t n) {
  if (n < 1) throw std::domain_error("summand_profile: n must be >= 1");
  if (!(d.sigma2() > 0.0)) {
    throw UnsupportedDistributionError("summand_profile: zero variance");
  }
  const double mu = d.mu();
  const double sig = d.sigma();
  const double s = sig * std::sqrt(static_cast<double>(n));
  const double lo_cut = mu - s;  // Z below this has xi < -1
  const double hi_cut = mu + s;  // Z above this has xi > 1

  double tail2 = 0.0;   // E[(Z-mu)^2 ; |Z-mu| > s]
  double inner3 = 0.0;  // E[|Z-mu|^3 ; |Z-mu| <= s]

  switch (d.family()) {
    case Family::Discrete: {
      for (const auto& a : d.atoms()) {
        const double u = a.value - mu;
        if (std::fabs(u) > s) {
          tail2 += a.prob * u * u;
        } else {
          inner3 += a.prob * std::fabs(u * u * u);
        }
      }
      break;
    }
    case Family::Uniform: {
      const double ua = d.param1(), ub = d.param2();
      const double inv = 1.0 / (ub - ua);
      const double lo = std::max(ua, lo_cut), hi = std::min(ub, hi_cut);
      auto seg2 = [&](double c, double e) {  // int_c^e (x-mu)^2 dx * inv
        if (!(e > c)) return 0.0;
        return inv * (std::pow(e - mu, 3.0) - std::pow(c - mu, 3.0)) / 3.0;
      };
      auto seg3 = [&](double c, double e) {  // int_c^e |x-mu|^3 dx * inv
        if (!(e > c)) return 0.0;
        auto A = [&](double x) {
          const double u = x - mu;
          return 0.25 * u * u * u * std::fabs(u);
        };
        return inv * (A(e) - A(c));
      };
      tail2 = seg2(ua, std::min(lo, ub)) + seg2(std::max(hi, ua), ub);
      inner3 = seg3(lo, hi);
      break;
    }
    case Family::Exponential: {
      const double rate = d.param1();
      tail2 = detail::exp_second_above(rate, mu, hi_cut);
      if (lo_cut > 0.0) {
        tail2 += d.sigma2() - detail::exp_second_above(rate, mu, lo_cut);
      }
      const double lo = std::max(0.0, lo_cut);
      inner3 = detail::exp_third_between(rate, mu, mu, hi_cut) -
               detail::exp_third_between(rate, mu, lo, mu);
      break;
    }
    case Family::Pareto: {
      const double xm = d.param1(), alpha = d.param2();
      tail2 = detail::pareto_second_above(xm, alpha, mu, hi_cut);
      if (lo_cut > xm) {
        tail2 += d.sigma2() - detail::pareto_second_above(xm, alpha, mu, lo_cut);
      }
      const double lo = std::max(xm, lo_cut);
      inner3 = detail::pareto_third_between(xm, alpha, mu, mu, hi_cut) -
               detail::pareto_third_between(xm, alpha, mu, lo, mu);
      break;
    }
    default: {
      auto f2 = [&](double x) {
        const double w = d.pdf(x);
        return w > 0.0 ? (x - mu) * (x - mu) * w : 0.0;
      };
      auto f3 = [&](double x) {
        const double w = d.pdf(x);
        return w > 0.0 ? std::pow(std::fabs(x - mu), 3.0) * w : 0.0;
      };
      const double lo = std::max(0.0, lo_cut);
      tail2 = detail::integrate_upper(f2, hi_cut);
      if (lo_cut > 0.0) tail2 += detail::integrate_finite(f2, 0.0, lo_cut);
      inner3 = detail::integrate_finite(f3, lo, mu) +
               detail::integrate_finite(f3, mu, hi_cut);
      break;
    }
  }

  SummandProfile p;
  p.n = n;
  p.beta2 = tail2 / d.sigma2();
  p.beta3 = inner3 / (sig * sig * sig * std::sqrt(static_cast<double>(n)));
  p.tail_sum = [d, mu, s, n](double theta) {
    if (theta < 0.0) return static_cast<double>(n);
    return static_cast<double>(n) *
           (d.survival(mu + theta * s) + d.cdf_strict(mu - theta * s));
  };
  return p;
}

// count i.i.d. variates; pure function of (seed, stream, position).
inline std::vector<double> sample(const DistributionSpec& d, std::uint64_t seed,
                                  std::int64_t count, std::uint64_t stream = 0) {
  if (count < 1) throw std::domain_error("sample: count must be >= 1");
  rng::Stream s(seed, stream);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(d.draw(s));
  return out;
}

}  // namespace renbounds
