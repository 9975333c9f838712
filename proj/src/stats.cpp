#include "emojimap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emojimap/error.hpp"

namespace emojimap {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double sample_variance(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

double weighted_quantile(const std::vector<std::pair<double, double>>& dist,
                         double q) {
  double cum = 0.0;
  for (const auto& [value, weight] : dist) {
    cum += weight;
    if (cum >= q) return value;
  }
  return dist.back().first;
}

namespace {

// dist holds resample means relative to `origin` (values[0]). Working with
// offsets keeps constant samples at exactly zero variance and makes a
// representable shift of the inputs move the CI bit-for-bit.
BootstrapResult summarize(const std::vector<double>& values, double origin,
                          std::vector<std::pair<double, double>>& dist,
                          double alpha) {
  std::sort(dist.begin(), dist.end());
  double m = 0.0;
  for (const auto& [v, w] : dist) m += v * w;
  double var = 0.0;
  for (const auto& [v, w] : dist) var += (v - m) * (v - m) * w;
  BootstrapResult res;
  res.mean = mean_of(values);
  res.variance = var;
  res.ci_low = origin + weighted_quantile(dist, alpha / 2.0);
  res.ci_high = origin + weighted_quantile(dist, 1.0 - alpha / 2.0);
  return res;
}

}  // namespace

BootstrapResult bootstrap_mean(const std::vector<double>& values, int resamples,
                               Rng& rng, double alpha) {
  if (values.empty()) throw Error(Errc::EmptyCorpus, "bootstrap of empty sample");
  if (resamples < 1) throw Error(Errc::SpecInvalid, "resamples must be >= 1");
  const std::size_t n = values.size();
  const double origin = values[0];
  std::vector<std::pair<double, double>> dist;
  dist.reserve(resamples);
  const double w = 1.0 / resamples;
  for (int b = 0; b < resamples; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[rng.below(n)] - origin;
    dist.emplace_back(s / n, w);
  }
  return summarize(values, origin, dist, alpha);
}

BootstrapResult bootstrap_mean_exhaustive(const std::vector<double>& values,
                                          double alpha) {
  if (values.empty()) throw Error(Errc::EmptyCorpus, "bootstrap of empty sample");
  const std::size_t n = values.size();
  if (n > 12)
    throw Error(Errc::SpecInvalid, "exhaustive bootstrap limited to n <= 12");

  // factorials and n^n stay below 2^53, so the weights are exact
  std::vector<double> fact(n + 1, 1.0);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  double denom = 1.0;
  for (std::size_t i = 0; i < n; ++i) denom *= static_cast<double>(n);

  const double origin = values[0];
  std::vector<std::pair<double, double>> dist;

  // enumerate all compositions of n into n nonnegative parts
  auto recurse = [&](auto&& self, std::size_t idx, std::size_t remaining,
                     double sum, double fact_prod) -> void {
    if (idx + 1 == n) {
      const double total = sum + remaining * (values[idx] - origin);
      const double weight = fact[n] / (fact_prod * fact[remaining]) / denom;
      dist.emplace_back(total / n, weight);
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      self(self, idx + 1, remaining - c, sum + c * (values[idx] - origin),
           fact_prod * fact[c]);
    }
  };
  recurse(recurse, 0, n, 0.0, 1.0);
  return summarize(values, origin, dist, alpha);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // continued fraction (Lentz), with the symmetry transform for convergence
  const double ln_beta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - ln_beta);
  if (x > (a + 1.0) / (a + b + 2.0))
    return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);

  const double tiny = 1e-300;
  double f = 1.0, c = 1.0, d = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const int m = i / 2;
    double numerator;
    if (i == 0)
      numerator = 1.0;
    else if (i % 2 == 0)
      numerator = m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
    else
      numerator = -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    const double cd = c * d;
    f *= cd;
    if (std::fabs(1.0 - cd) < 1e-15) break;
  }
  return front * (f - 1.0) / a;
}

double student_t_sf(double t, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::DegenerateSample, "dof must be positive");
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, x);
  return t >= 0.0 ? tail : 1.0 - tail;
}

TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(Errc::DegenerateSample, "each sample needs >= 2 observations");
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = sample_variance(a), vb = sample_variance(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double sa = va / na, sb = vb / nb;
  if (sa + sb == 0.0) {
    if (ma == mb)
      throw Error(Errc::DegenerateSample, "zero variance and equal means");
    TTestResult res;
    res.t_statistic = ma > mb ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
    res.dof = na + nb - 2.0;
    return res;
  }
  TTestResult res;
  res.t_statistic = (ma - mb) / std::sqrt(sa + sb);
  res.dof = (sa + sb) * (sa + sb) /
            (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  if (res.t_statistic == 0.0) {
    res.p_value = 1.0;
  } else {
    res.p_value = 2.0 * student_t_sf(std::fabs(res.t_statistic), res.dof);
    res.p_value = std::min(1.0, res.p_value);
  }
  return res;
}

}  // namespace emojimap
