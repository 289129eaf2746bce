#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pasplit/growth_pa.hpp"
#include "pasplit/growth_split.hpp"
#include "pasplit/params.hpp"
#include "pasplit/stats.hpp"
#include "pasplit/tree.hpp"

namespace pasplit {

struct SeedRecord {
  std::uint64_t master_seed = 0;
  std::string stream_layout;
};

// Monte Carlo estimate with its target. The verdict is
// |mean - target| <= 3 stderr + bias_allowance.
struct EstimateReport {
  std::string quantity;
  std::optional<std::size_t> n;
  std::size_t replicas = 0;
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  double target = 0.0;
  double bias_allowance = 0.0;
  bool pass = false;
  SeedRecord seed;
  std::map<std::string, double> info;
  std::vector<double> per_replica;

  bool verdict() const;
};

EstimateReport make_report(std::string quantity, std::vector<double> values, double target, double bias_allowance,
                           SeedRecord seed);

struct GofCell {
  std::vector<std::string> codes;
  std::uint64_t observed = 0;
  double expected = 0.0;
};

struct GofReport {
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, double> exact;
  std::vector<GofCell> cells;
  std::uint64_t samples = 0;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  double total_variation = 0.0;

  bool pass(double significance, double max_tv) const {
    return p_value > significance && total_variation < max_tv;
  }
};

inline constexpr double kGofSignificance = 1e-3;
inline constexpr double kGofMaxTv = 0.02;

enum class Model { kPa, kSplit, kMary };

const char* to_string(Model model);

// Sum over every realized split vector of P_i^2, in expectation.
double expected_sum_squares(const SplitSpec& spec);
// rho / (chi + 2 rho)
double expected_sum_squares(const GrowthParams& p);

// E Y_n / n^2 against rho/(chi+rho) over independent trees of size n.
EstimateReport estimate_eq(const GrowthParams& p, Model model, std::size_t n, std::size_t replicas,
                           std::uint64_t seed, int jobs = 1);

inline constexpr double kSumSquaresMaxEpsilon = 1e-3;
inline constexpr std::size_t kSumSquaresStickCap = 4096;

// Sum of P_i^2 over GEM realizations against rho/(chi+2rho).
EstimateReport estimate_sum_p2(const GrowthParams& p, double epsilon, std::size_t replicas, std::uint64_t seed,
                               int jobs = 1, std::size_t max_sticks = kSumSquaresStickCap);

// Mean common prefix length against a/(1-a), a = sum_i E P_i^2.
EstimateReport estimate_ef(const SplitSpec& spec, std::size_t replicas, std::uint64_t seed, int jobs = 1,
                           RoutingMode mode = RoutingMode::kAuto);

// P(f >= m) against a^m for m = 1..m_max.
std::vector<EstimateReport> tail_check(const SplitSpec& spec, std::size_t m_max, std::size_t replicas,
                                       std::uint64_t seed, int jobs = 1, RoutingMode mode = RoutingMode::kAuto);

struct WReport {
  EstimateReport mean;  // E W against gamma/(gamma+1)
  KsResult ks;          // against the CDF x^gamma
};

// Size-biased splitting variable of GEM(alpha, theta) from (chi, rho).
WReport estimate_w(const GrowthParams& p, std::size_t draws, std::uint64_t seed, int jobs = 1,
                   RoutingMode mode = RoutingMode::kAuto);

// Solves E Q = a (1 + E Q) for a = rho/(chi+2rho) and checks the result
// against rho/(chi+rho) to 1e-12 (relative); throws std::logic_error if not.
double fixed_point_mean(const GrowthParams& p);

GofReport gof_shape_test(const std::map<std::string, std::uint64_t>& counts, const ShapeLaw& exact);

using TreeSampler = std::function<Tree(RandomStream&)>;

// Canonical-code histogram of `samples` trees; sample r uses stream r.
std::map<std::string, std::uint64_t> sample_shape_counts(const TreeSampler& sampler, std::size_t samples,
                                                         std::uint64_t seed, int jobs = 1);

TreeSampler make_sampler(Model model, std::size_t n, const SplitSpec& spec, std::optional<GrowthParams> params,
                         int m = 2, RoutingMode mode = RoutingMode::kAuto);

struct UrnReport {
  std::string law;
  std::vector<double> fractions;  // first colour, per replica
  std::vector<std::vector<double>> per_color;  // m-colour runs only
  KsResult ks;
  SeedRecord seed;
};

inline constexpr double kUrnKsSlack = 0.02;

UrnReport urn_two_color_check(double r0, double w0, std::uint64_t steps, std::size_t replicas, std::uint64_t seed,
                              int jobs = 1);
UrnReport urn_multicolor_check(int m, std::uint64_t steps, std::size_t replicas, std::uint64_t seed, int jobs = 1);

}  // namespace pasplit
