// Exact enumeration of sums of small i.i.d. discrete summand families.
//
// Families are given by the atom distribution of a single standardized
// summand xi (zero mean, n E[xi^2] = 1). Sums over n copies are enumerated
// by atom-count compositions with multinomial weights, which is exact and
// far smaller than the K^n product space it represents.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "renbounds/distributions.hpp"

namespace renbounds::enumeration {

struct AtomDist {
  std::vector<double> values;
  std::vector<double> probs;

  std::size_t size() const { return values.size(); }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m += probs[i] * values[i];
    return m;
  }

  double second_moment() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m += probs[i] * values[i] * values[i];
    return m;
  }

  double tail_abs(double theta) const {  // P(|X| > theta)
    double p = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (std::fabs(values[i]) > theta) p += probs[i];
    }
    return p;
  }

  double tail_above(double theta) const {  // P(X > theta)
    double p = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (values[i] > theta) p += probs[i];
    }
    return p;
  }
};

// Distribution of a sum: support points with probabilities, sorted by value.
struct SumDist {
  std::vector<double> values;
  std::vector<double> probs;

  double cdf(double z) const {  // P(S <= z)
    double p = 0.0;
    for (std::size_t i = 0; i < values.size() && values[i] <= z; ++i) p += probs[i];
    return p;
  }

  double prob_geq(double z) const {  // P(S >= z)
    double p = 0.0;
    for (std::size_t i = values.size(); i-- > 0 && values[i] >= z;) p += probs[i];
    return p;
  }

  double prob_between(double a, double b) const {  // P(a <= S <= b)
    double p = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= a && values[i] <= b) p += probs[i];
    }
    return p;
  }

  double expect(const std::function<double(double)>& h) const {
    double e = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) e += probs[i] * h(values[i]);
    return e;
  }
};

// n-fold i.i.d. convolution by composition enumeration. probs may be a
// sub-probability vector (used for restricted-event enumeration).
inline SumDist convolve_power(const AtomDist& atom, int n) {
  const int k = static_cast<int>(atom.size());
  std::vector<std::pair<double, double>> acc;  // (value, prob)

  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  std::function<void(int, int, double, double)> rec = [&](int idx, int left,
                                                          double logcoef, double prob) {
    if (idx == k - 1) {
      const int c = left;
      const double lp = logcoef - std::lgamma(c + 1.0);
      const double pr = prob * std::pow(atom.probs[static_cast<std::size_t>(idx)], c);
      counts[static_cast<std::size_t>(idx)] = c;
      double value = 0.0;
      for (int j = 0; j < k; ++j) {
        value += counts[static_cast<std::size_t>(j)] * atom.values[static_cast<std::size_t>(j)];
      }
      acc.emplace_back(value, std::exp(lp) * pr);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(idx)] = c;
      rec(idx + 1, left - c, logcoef - std::lgamma(c + 1.0),
          prob * std::pow(atom.probs[static_cast<std::size_t>(idx)], c));
    }
  };
  rec(0, n, std::lgamma(n + 1.0), 1.0);

  std::sort(acc.begin(), acc.end());
  SumDist out;
  for (const auto& [v, p] : acc) {
    if (!out.values.empty() && v == out.values.back()) {
      out.probs.back() += p;
    } else {
      out.values.push_back(v);
      out.probs.push_back(p);
    }
  }
  return out;
}

// A family of n i.i.d. standardized summands with a small atom support.
class SummandFamily {
 public:
  SummandFamily(AtomDist xi, int n, std::string label)
      : xi_(std::move(xi)), n_(n), label_(std::move(label)) {
    const double m = xi_.mean();
    const double v = n_ * xi_.second_moment();
    if (std::fabs(m) > 1e-12 || std::fabs(v - 1.0) > 1e-9) {
      throw std::invalid_argument("SummandFamily: summands must be standardized");
    }
  }

  // xi = +-1/sqrt(n) with equal weights.
  static SummandFamily symmetric_two_point(int n) {
    const double v = 1.0 / std::sqrt(static_cast<double>(n));
    return SummandFamily({{-v, v}, {0.5, 0.5}}, n,
                         "symmetric_two_point(n=" + std::to_string(n) + ")");
  }

  // Standardized Bernoulli(p): xi in {-p, q}/sqrt(npq).
  static SummandFamily bernoulli(int n, double p) {
    const double q = 1.0 - p;
    const double s = std::sqrt(n * p * q);
    std::ostringstream os;
    os << "bernoulli(n=" << n << ",p=" << p << ")";
    return SummandFamily({{-p / s, q / s}, {q, p}}, n, os.str());
  }

  // xi in {-v, 0, +v} with P(+-v) = q each; requires 2 n q v^2 = 1.
  static SummandFamily three_point(int n, double v, double q) {
    std::ostringstream os;
    os << "three_point(n=" << n << ",v=" << v << ",q=" << q << ")";
    return SummandFamily({{-v, 0.0, v}, {q, 1.0 - 2.0 * q, q}}, n, os.str());
  }

  const AtomDist& xi() const { return xi_; }
  int n() const { return n_; }
  const std::string& label() const { return label_; }

  double product_space() const {
    return std::pow(static_cast<double>(xi_.size()), static_cast<double>(n_));
  }

  // One-sided truncation xbar = xi 1(xi <= 1).
  AtomDist truncated() const {
    AtomDist t = xi_;
    for (auto& v : t.values) {
      if (v > 1.0) v = 0.0;
    }
    return t;
  }

  // Two-sided truncated moments, the convention the full bound consumes.
  SummandProfile profile() const {
    SummandProfile p;
    p.n = n_;
    double b2 = 0.0, b3 = 0.0;
    for (std::size_t i = 0; i < xi_.size(); ++i) {
      const double v = xi_.values[i], pr = xi_.probs[i];
      if (std::fabs(v) > 1.0) {
        b2 += pr * v * v;
      } else {
        b3 += pr * std::fabs(v * v * v);
      }
    }
    p.beta2 = n_ * b2;
    p.beta3 = n_ * b3;
    const AtomDist atom = xi_;
    const int n = n_;
    p.tail_sum = [atom, n](double theta) { return n * atom.tail_abs(theta); };
    return p;
  }

  // Sum over the proof's one-sided truncation: n E[xi^2 1(xi > 1)].
  double one_sided_tail_second() const {
    double b = 0.0;
    for (std::size_t i = 0; i < xi_.size(); ++i) {
      if (xi_.values[i] > 1.0) b += xi_.probs[i] * xi_.values[i] * xi_.values[i];
    }
    return n_ * b;
  }

  SumDist sum() const { return convolve_power(xi_, n_); }                       // W
  SumDist truncated_sum() const { return convolve_power(truncated(), n_); }     // Wbar
  SumDist truncated_sum_leave_one() const {                                     // Wbar^(i)
    return convolve_power(truncated(), n_ - 1);
  }

  // P(W >= z, max_i xi_i > 1), exactly: P(W >= z) minus the contribution of
  // outcomes where every summand stays <= 1 (a sub-probability enumeration).
  double joint_tail_with_max(double z) const {
    const SumDist w = sum();
    AtomDist kept;
    for (std::size_t i = 0; i < xi_.size(); ++i) {
      if (xi_.values[i] <= 1.0) {
        kept.values.push_back(xi_.values[i]);
        kept.probs.push_back(xi_.probs[i]);
      }
    }
    double all_small = 0.0;
    if (!kept.values.empty()) {
      const SumDist restricted = convolve_power(kept, n_);
      all_small = restricted.prob_geq(z);
    }
    return w.prob_geq(z) - all_small;
  }

  // Exact E[e^{t Wbar}] via the product of per-summand transforms.
  double truncated_mgf(double t) const {
    const AtomDist xb = truncated();
    double one = 0.0;
    for (std::size_t i = 0; i < xb.size(); ++i) {
      one += xb.probs[i] * std::exp(t * xb.values[i]);
    }
    return std::pow(one, static_cast<double>(n_));
  }

 private:
  AtomDist xi_;
  int n_;
  std::string label_;
};

// Integral over t of  Kbar(t) = E[xbar (1(0 <= t <= xbar) - 1(xbar <= t < 0))]
// for one summand, computed as a piecewise-constant integral over the atom
// breakpoints (the independent route; collapses analytically to E[xbar^2]).
inline double kbar_integral(const AtomDist& xbar) {
  std::vector<double> brk{0.0, 1.0};
  for (double v : xbar.values) brk.push_back(v);
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

  auto kbar = [&](double t) {
    double k = 0.0;
    for (std::size_t i = 0; i < xbar.size(); ++i) {
      const double v = xbar.values[i], p = xbar.probs[i];
      if (t >= 0.0) {
        if (v >= t) k += p * v;  // 1(0 <= t <= v), only v >= t >= 0 contribute
      } else {
        if (v <= t) k -= p * v;  // -1(v <= t < 0)
      }
    }
    return k;
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    const double a = brk[i], b = brk[i + 1];
    if (a >= 1.0) break;
    const double hi = std::min(b, 1.0);
    total += kbar(0.5 * (a + hi)) * (hi - a);
  }
  return total;
}

}  // namespace renbounds::enumeration
