#include "pasplit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

namespace pasplit {

double Moments::mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }

double Moments::variance() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double Moments::stderr_of_mean() const {
  return count == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count));
}

Moments moments_of(std::span<const double> xs) {
  Moments m;
  for (double x : xs) m.add(x);
  return m;
}

double ks_critical_value(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 std::optional<double> absolute_slack) {
  if (samples.size() < kKsMinSamples) throw std::invalid_argument("ks_test needs at least 100 samples");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsResult r;
  r.distance = d;
  r.samples = xs.size();
  r.threshold = absolute_slack ? *absolute_slack : ks_critical_value(xs.size());
  r.pass = d < r.threshold;
  return r;
}

double beta_cdf(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::cdf(boost::math::beta_distribution<double>(a, b), x);
}

double chi_square_sf(double stat, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("chi-square needs df > 0");
  if (std::isinf(stat)) return 0.0;
  if (stat <= 0.0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), stat));
}

}  // namespace pasplit
