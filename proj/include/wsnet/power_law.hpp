#pragma once

// Discrete power-law fitting: xmin by minimum KS distance, exact maximum
// likelihood exponent, semiparametric bootstrap goodness-of-fit p-value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "wsnet/error.hpp"
#include "wsnet/random.hpp"

namespace wsnet {

/// Hurwitz zeta function sum_{k>=0} (q+k)^-s for s > 1, q > 0, by
/// Euler-Maclaurin summation after ten explicit terms.
inline double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw ValidationError("hurwitz_zeta: need s > 1 and q > 0");
  constexpr int kDirect = 10;
  // B_2j / (2j)!
  static constexpr double kCoeff[] = {
      1.0 / 12.0,          -1.0 / 720.0,           1.0 / 30240.0,          -1.0 / 1209600.0,
      1.0 / 47900160.0,    -691.0 / 1307674368000.0, 1.0 / 74724249600.0,
  };
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  const double a_pow = std::pow(a, -s);
  sum += a * a_pow / (s - 1.0) + 0.5 * a_pow;
  // Rising factorial s(s+1)...(s+2j-2) times a^(-s-2j+1).
  double term = s * a_pow / a;
  for (std::size_t j = 0; j < std::size(kCoeff); ++j) {
    sum += kCoeff[j] * term;
    term *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0) / (a * a);
  }
  return sum;
}

struct PowerLawFit {
  double alpha = 0.0;
  std::uint64_t xmin = 1;
  double ks_stat = 0.0;
  /// Absent when no bootstrap replicas were requested.
  std::optional<double> p_value;
  std::size_t n_tail = 0;
  std::size_t n_samples = 0;
  std::size_t bootstraps = 0;

  /// Conventional plausibility threshold for the bootstrap p-value.
  static constexpr double kPlausible = 0.1;
  bool plausible() const { return p_value && *p_value > kPlausible; }
};

/// Closed-form approximation 1 + n / sum ln(x / (xmin - 1/2)). Biased for
/// small xmin; kept for diagnostics.
inline double approximate_discrete_alpha(std::span<const std::uint64_t> tail, std::uint64_t xmin) {
  double s = 0.0;
  for (auto x : tail) s += std::log(static_cast<double>(x) / (static_cast<double>(xmin) - 0.5));
  return 1.0 + static_cast<double>(tail.size()) / s;
}

/// Exact discrete MLE given n tail samples >= xmin whose log-sum is `log_sum`.
inline double discrete_mle_alpha(std::size_t n_tail, double log_sum, std::uint64_t xmin) {
  const double n = static_cast<double>(n_tail);
  const double q = static_cast<double>(xmin);
  auto neg_loglik = [&](double a) { return n * std::log(hurwitz_zeta(a, q)) + a * log_sum; };
  std::uintmax_t iters = 200;
  auto [alpha, value] = boost::math::tools::brent_find_minima(neg_loglik, 1.0 + 1e-6, 50.0, 40, iters);
  (void)value;
  return alpha;
}

/// Inverse-CDF sampler for p(x) = x^-alpha / zeta(alpha, xmin), x >= xmin.
/// Exact table over the first 2^17 support points, continuous approximation
/// beyond (the remaining mass is negligible for alpha >= 1.5).
class DiscretePowerLawSampler {
 public:
  DiscretePowerLawSampler(double alpha, std::uint64_t xmin) : alpha_(alpha), xmin_(xmin) {
    if (!(alpha > 1.0) || xmin < 1) throw ValidationError("power-law sampler: need alpha > 1 and xmin >= 1");
    const double z = hurwitz_zeta(alpha, static_cast<double>(xmin));
    cdf_.resize(kTable);
    double acc = 0.0;
    for (std::size_t i = 0; i < kTable; ++i) {
      acc += std::pow(static_cast<double>(xmin + i), -alpha) / z;
      cdf_[i] = acc;
    }
  }

  std::uint64_t operator()(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return xmin_ + static_cast<std::uint64_t>(it - cdf_.begin());
    const double k = static_cast<double>(xmin_ + kTable) - 0.5;
    const double x = std::floor(k * std::pow(1.0 - uniform01(rng), -1.0 / (alpha_ - 1.0)) + 0.5);
    return x >= 1e18 ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(x);
  }

 private:
  static constexpr std::size_t kTable = std::size_t{1} << 17;
  double alpha_;
  std::uint64_t xmin_;
  std::vector<double> cdf_;
};

namespace detail {

struct DistinctCounts {
  std::vector<std::uint64_t> values;  // ascending
  std::vector<std::size_t> counts;
};

inline DistinctCounts distinct_counts(std::span<const std::uint64_t> sorted) {
  DistinctCounts d;
  for (auto x : sorted) {
    if (d.values.empty() || d.values.back() != x) {
      d.values.push_back(x);
      d.counts.push_back(0);
    }
    ++d.counts.back();
  }
  return d;
}

// Sum of x^-alpha for x in [lo, hi).
inline double partial_zeta(double alpha, std::uint64_t lo, std::uint64_t hi) {
  if (hi - lo <= 64) {
    double s = 0.0;
    for (std::uint64_t x = lo; x < hi; ++x) s += std::pow(static_cast<double>(x), -alpha);
    return s;
  }
  return hurwitz_zeta(alpha, static_cast<double>(lo)) - hurwitz_zeta(alpha, static_cast<double>(hi));
}

// Max |S(x) - F(x)| over integers x >= xmin, for the distinct tail values
// d.values[first..] with n_tail samples.
inline double ks_distance(const DistinctCounts& d, std::size_t first, std::size_t n_tail, double alpha) {
  const std::uint64_t xmin = d.values[first];
  const double z = hurwitz_zeta(alpha, static_cast<double>(xmin));
  const double n = static_cast<double>(n_tail);
  double zeta_here = z;  // zeta(alpha, v_i)
  double cum = 0.0;
  double dmax = 0.0;
  for (std::size_t i = first; i < d.values.size(); ++i) {
    const std::uint64_t v = d.values[i];
    const double mass_v = std::pow(static_cast<double>(v), -alpha);
    cum += static_cast<double>(d.counts[i]);
    const double s = cum / n;
    dmax = std::max(dmax, std::abs(s - (1.0 - (zeta_here - mass_v) / z)));
    if (i + 1 < d.values.size()) {
      const std::uint64_t next = d.values[i + 1];
      const double zeta_next = zeta_here - partial_zeta(alpha, v, next);
      // Model CDF just before the next observed value; S is flat there.
      dmax = std::max(dmax, std::abs(s - (1.0 - zeta_next / z)));
      zeta_here = zeta_next;
    }
  }
  return dmax;
}

struct PointFit {
  double alpha;
  std::uint64_t xmin;
  double ks;
  std::size_t n_tail;
};

inline PointFit fit_point(std::span<const std::uint64_t> sorted) {
  auto d = distinct_counts(sorted);
  if (sorted.size() < 10 || d.values.size() < 2)
    throw InsufficientDataError("power-law fit needs at least 10 samples and 2 distinct values");
  // Suffix sums of counts and log-values over distinct values.
  const std::size_t k = d.values.size();
  std::vector<std::size_t> tail_n(k + 1, 0);
  std::vector<double> tail_log(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    tail_n[i] = tail_n[i + 1] + d.counts[i];
    tail_log[i] = tail_log[i + 1] + static_cast<double>(d.counts[i]) * std::log(static_cast<double>(d.values[i]));
  }
  PointFit best{0.0, 0, std::numeric_limits<double>::infinity(), 0};
  // The largest value is never a candidate: its tail is constant.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double alpha = discrete_mle_alpha(tail_n[i], tail_log[i], d.values[i]);
    const double ks = ks_distance(d, i, tail_n[i], alpha);
    if (ks < best.ks) best = {alpha, d.values[i], ks, tail_n[i]};
  }
  return best;
}

}  // namespace detail

/// Fits a discrete power law to positive integer samples. xmin minimizes
/// the KS distance; alpha is the exact MLE for that xmin; the p-value is
/// the fraction of `bootstraps` semiparametric replicas (refit from
/// scratch) whose KS distance exceeds the empirical one.
inline PowerLawFit fit_power_law(std::span<const std::uint64_t> samples, std::size_t bootstraps,
                                 std::uint64_t seed) {
  for (auto x : samples)
    if (x == 0) throw ValidationError("power-law samples must be positive integers");
  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto point = detail::fit_point(sorted);

  PowerLawFit fit;
  fit.alpha = point.alpha;
  fit.xmin = point.xmin;
  fit.ks_stat = point.ks;
  fit.n_tail = point.n_tail;
  fit.n_samples = sorted.size();
  fit.bootstraps = bootstraps;
  if (bootstraps == 0) return fit;

  const DiscretePowerLawSampler tail_sampler(point.alpha, point.xmin);
  const std::size_t n = sorted.size();
  const std::size_t n_body = n - point.n_tail;  // samples below xmin, a prefix of `sorted`
  const double p_tail = static_cast<double>(point.n_tail) / static_cast<double>(n);
  std::size_t exceed = 0;
  std::vector<std::uint64_t> replica(n);
  for (std::size_t r = 0; r < bootstraps; ++r) {
    Rng rng = make_rng(derive_seed(seed, r));
    for (auto& x : replica) {
      if (n_body == 0 || uniform01(rng) < p_tail)
        x = tail_sampler(rng);
      else
        x = sorted[uniform_index(rng, n_body)];
    }
    std::sort(replica.begin(), replica.end());
    try {
      if (detail::fit_point(replica).ks > point.ks) ++exceed;
    } catch (const InsufficientDataError&) {
      // Degenerate replica (e.g. constant); counted as not exceeding.
    }
  }
  fit.p_value = static_cast<double>(exceed) / static_cast<double>(bootstraps);
  return fit;
}

}  // namespace wsnet
