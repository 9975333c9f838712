#pragma once

// Bootstrap resampling and the Welch two-sample t-test.

#include <cstdint>
#include <vector>

#include "emojimap/rng.hpp"

namespace emojimap {

struct BootstrapResult {
  double mean = 0.0;      // sample mean of the input (point estimate)
  double variance = 0.0;  // variance of the resample means
  double ci_low = 0.0;    // 2.5 percentile of resample means (alpha = .05)
  double ci_high = 0.0;   // 97.5 percentile
};

// B resamples with replacement, each the size of the input.
BootstrapResult bootstrap_mean(const std::vector<double>& values, int resamples,
                               Rng& rng, double alpha = 0.05);

// Exact enumeration of all n^n resamples via composition weighting.
// Multinomial weights are exact (integer-valued doubles) for n <= 10.
BootstrapResult bootstrap_mean_exhaustive(const std::vector<double>& values,
                                          double alpha = 0.05);

// Smallest value whose cumulative weight reaches q; dist must be sorted by
// value, weights must sum to ~1.
double weighted_quantile(const std::vector<std::pair<double, double>>& dist,
                         double q);

struct TTestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

// Welch t statistic, Welch-Satterthwaite dof, two-sided p.
TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

// P(T > t) for Student's t with `dof` degrees of freedom.
double student_t_sf(double t, double dof);
double regularized_incomplete_beta(double a, double b, double x);

double mean_of(const std::vector<double>& v);
// unbiased (n-1) sample variance
double sample_variance(const std::vector<double>& v);

}  // namespace emojimap
