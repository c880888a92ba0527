// Monte Carlo simulation of renewal counts: empirical count CDFs with DKW
// confidence slack, Kolmogorov distance to the normal approximation, and
// exact count-CDF oracles where the family admits one.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "renbounds/common.hpp"
#include "renbounds/distributions.hpp"
#include "renbounds/renewal.hpp"
#include "renbounds/rng.hpp"

namespace renbounds::mc {

// Count standardization argument (n mu - t) sqrt(mu) / (sigma sqrt(t)).
inline double z_phi(const DistributionSpec& d, std::int64_t n, double t) {
  return (static_cast<double>(n) * d.mu() - t) * std::sqrt(d.mu()) /
         (d.sigma() * std::sqrt(t));
}

// Histogram ceiling: twelve CLT standard deviations (variance sigma^2 t / mu^3)
// above the mean count, plus margin. Mass beyond it triggers enlargement and
// a rerun, never truncation.
inline std::int64_t default_n_max(const DistributionSpec& d, double t) {
  const double mu = d.mu();
  const double sd = d.sigma() * std::sqrt(t) * std::pow(mu, -1.5);
  return static_cast<std::int64_t>(std::ceil(t / mu + 12.0 * sd)) + 16;
}

struct EmpiricalCdf {
  DistributionSpec spec;
  double t = 0.0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  double delta = 1e-3;
  std::int64_t n_max = 0;
  std::vector<std::uint64_t> counts;  // histogram over n in {0, ..., n_max}
  double dkw_slack = 0.0;             // sqrt(ln(2/delta) / (2 N))

  double ecdf(std::int64_t n) const {
    if (n < 0) return 0.0;
    const std::int64_t hi = std::min(n, n_max);
    std::uint64_t c = 0;
    for (std::int64_t k = 0; k <= hi; ++k) c += counts[static_cast<std::size_t>(k)];
    return static_cast<double>(c) / static_cast<double>(replicates);
  }
};

struct KolmogorovResult {
  double distance_to_phi = 0.0;
  std::int64_t argmax_n = 0;
  double dkw_slack = 0.0;
};

namespace detail {

// One replicate: the count max{n : Z_1 + ... + Z_n <= t}.
inline std::int64_t one_count(const DistributionSpec& d, double t, std::uint64_t seed,
                              std::uint64_t replicate, std::int64_t max_events) {
  rng::Stream s(seed, replicate);
  double sum = 0.0;
  std::int64_t c = 0;
  for (;;) {
    sum += d.draw(s);
    if (sum > t) break;
    ++c;
    if (c > max_events) {
      throw SimulationError("simulate_counts: replicate exceeded the event cap");
    }
  }
  return c;
}

}  // namespace detail

// Simulate N replicates of the count at horizon t. Replicates own disjoint
// counter-based streams keyed by their index, so the histogram is identical
// for any worker count.
inline EmpiricalCdf simulate_counts(const DistributionSpec& d, double t, std::int64_t N,
                                    std::uint64_t seed, double delta = 1e-3,
                                    int workers = 1,
                                    std::int64_t max_events = 1000000000) {
  if (!(t > 0.0)) throw std::domain_error("simulate_counts: t must be > 0");
  if (N < 1) throw std::domain_error("simulate_counts: N must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("simulate_counts: delta must be in (0,1)");
  }
  workers = std::max(1, workers);

  std::int64_t n_max = default_n_max(d, t);
  for (;;) {
    std::vector<std::vector<std::uint64_t>> local(
        static_cast<std::size_t>(workers),
        std::vector<std::uint64_t>(static_cast<std::size_t>(n_max) + 1, 0));
    std::vector<std::int64_t> local_overflow_max(static_cast<std::size_t>(workers), -1);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

    auto run_block = [&](int w) {
      const std::int64_t lo = N * w / workers;
      const std::int64_t hi = N * (w + 1) / workers;
      try {
        for (std::int64_t r = lo; r < hi; ++r) {
          const std::int64_t c =
              detail::one_count(d, t, seed, static_cast<std::uint64_t>(r), max_events);
          if (c <= n_max) {
            ++local[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)];
          } else {
            local_overflow_max[static_cast<std::size_t>(w)] =
                std::max(local_overflow_max[static_cast<std::size_t>(w)], c);
          }
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };

    if (workers == 1) {
      run_block(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    std::int64_t overflow_max = -1;
    for (auto m : local_overflow_max) overflow_max = std::max(overflow_max, m);
    if (overflow_max >= 0) {
      n_max = std::max(2 * n_max, overflow_max + 16);
      continue;
    }

    EmpiricalCdf out{d, t, N, seed, delta, n_max,
                     std::vector<std::uint64_t>(static_cast<std::size_t>(n_max) + 1, 0),
                     std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(N)))};
    for (const auto& l : local) {
      for (std::size_t k = 0; k < l.size(); ++k) out.counts[k] += l[k];
    }
    return out;
  }
}

// sup over the integer lattice n in {1, ..., n_max} of |F^(n) - Phi(z_phi(n))|;
// ties resolve to the smallest n.
inline KolmogorovResult kolmogorov_distance(const EmpiricalCdf& e) {
  KolmogorovResult r;
  r.dkw_slack = e.dkw_slack;
  double cum = static_cast<double>(e.counts[0]);
  const double N = static_cast<double>(e.replicates);
  for (std::int64_t n = 1; n <= e.n_max; ++n) {
    cum += static_cast<double>(e.counts[static_cast<std::size_t>(n)]);
    const double dev = std::fabs(cum / N - phi_cdf(z_phi(e.spec, n, e.t)));
    if (dev > r.distance_to_phi) {
      r.distance_to_phi = dev;
      r.argmax_n = n;
    }
  }
  return r;
}

namespace detail {

// Rationalize positive reals on a common lattice step via continued
// fractions; empty when no step with denominator <= 2^20 matches.
inline std::optional<double> common_lattice_step(const std::vector<double>& values) {
  const double limit = 1048576.0;  // 2^20
  std::int64_t den_lcm = 1;
  for (double v : values) {
    if (v == 0.0) continue;
    // continued fraction expansion of v
    double x = v;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
      const double a = std::floor(x);
      const std::int64_t ai = static_cast<std::int64_t>(a);
      const std::int64_t p2 = ai * p1 + p0;
      const std::int64_t q2 = ai * q1 + q0;
      if (q2 > static_cast<std::int64_t>(limit)) return std::nullopt;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      if (std::fabs(v - static_cast<double>(p1) / static_cast<double>(q1)) <=
          1e-12 * std::max(1.0, std::fabs(v))) {
        break;
      }
      const double frac = x - a;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
    if (std::fabs(v - static_cast<double>(p1) / static_cast<double>(q1)) >
        1e-12 * std::max(1.0, std::fabs(v))) {
      return std::nullopt;
    }
    const std::int64_t g = std::gcd(den_lcm, q1);
    if (static_cast<double>(den_lcm) / g * q1 > limit) return std::nullopt;
    den_lcm = den_lcm / g * q1;
  }
  return 1.0 / static_cast<double>(den_lcm);
}

}  // namespace detail

// Exact P(X_t <= n) = P(T_{n+1} > t) where a closed form or exact lattice
// convolution exists: Exponential (Poisson c.d.f.), Gamma (regularized
// incomplete gamma), and Discrete with commensurable atoms (lattice DP).
inline std::optional<double> exact_count_cdf(const DistributionSpec& d, double t,
                                             std::int64_t n) {
  if (n < 0) throw std::domain_error("exact_count_cdf: n must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("exact_count_cdf: t must be > 0");
  const double m = static_cast<double>(n) + 1.0;
  switch (d.family()) {
    case Family::Exponential:
      // T_{n+1} ~ Gamma(n+1, rate); survival at t is the Poisson c.d.f.
      return boost::math::gamma_q(m, d.param1() * t);
    case Family::Gamma:
      return boost::math::gamma_q(d.param1() * m, d.param2() * t);
    case Family::Discrete: {
      std::vector<double> vals;
      for (const auto& a : d.atoms()) vals.push_back(a.value);
      const auto step = detail::common_lattice_step(vals);
      if (!step) return std::nullopt;
      const double h = *step;
      // P(T_{n+1} <= t) over the lattice; states are multiples of h up to t.
      const std::int64_t cap = static_cast<std::int64_t>(std::floor(t / h + 1e-9));
      if (cap > 50000000) return std::nullopt;
      std::vector<double> dist(static_cast<std::size_t>(cap) + 1, 0.0);
      dist[0] = 1.0;
      std::vector<std::pair<std::int64_t, double>> steps;
      for (const auto& a : d.atoms()) {
        steps.emplace_back(static_cast<std::int64_t>(std::llround(a.value / h)), a.prob);
      }
      double below = 0.0;  // P(T_{n+1} <= t) accumulates via surviving states
      std::vector<double> next(dist.size());
      for (std::int64_t k = 0; k < n + 1; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < dist.size(); ++s) {
          if (dist[s] == 0.0) continue;
          for (const auto& [dv, pv] : steps) {
            const std::size_t ns = s + static_cast<std::size_t>(dv);
            if (ns < next.size()) next[ns] += dist[s] * pv;
          }
        }
        dist.swap(next);
      }
      below = 0.0;
      for (double p : dist) below += p;
      return 1.0 - below;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace renbounds::mc
