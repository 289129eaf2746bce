#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace pasplit {

// Count / sum / sum-of-squares monoid.
struct Moments {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& other) {
    count += other.count;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const;
  double variance() const;  // unbiased sample variance
  double stderr_of_mean() const;
};

Moments moments_of(std::span<const double> xs);

inline constexpr std::size_t kKsMinSamples = 100;

struct KsResult {
  double distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t samples = 0;
};

// One-sample Kolmogorov-Smirnov distance against `cdf`. The threshold is the
// alpha = 0.01 critical value 1.63/sqrt(N) unless an absolute slack is given.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 std::optional<double> absolute_slack = std::nullopt);

double ks_critical_value(std::size_t n);

double beta_cdf(double a, double b, double x);

// Upper tail P(X >= stat) for X ~ chi-square(df).
double chi_square_sf(double stat, double df);

}  // namespace pasplit
