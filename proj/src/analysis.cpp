#include "pasplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pasplit/parallel.hpp"
#include "pasplit/urn.hpp"

namespace pasplit {

bool EstimateReport::verdict() const {
  return std::abs(mean - target) <= 3.0 * stderr_of_mean + bias_allowance;
}

EstimateReport make_report(std::string quantity, std::vector<double> values, double target, double bias_allowance,
                           SeedRecord seed) {
  EstimateReport r;
  r.quantity = std::move(quantity);
  const Moments m = moments_of(values);
  r.replicas = values.size();
  r.mean = m.mean();
  r.stderr_of_mean = m.stderr_of_mean();
  r.target = target;
  r.bias_allowance = bias_allowance;
  r.seed = std::move(seed);
  r.per_replica = std::move(values);
  r.info["sample_variance"] = m.variance();
  r.pass = r.verdict();
  return r;
}

const char* to_string(Model model) {
  switch (model) {
    case Model::kPa:
      return "pa";
    case Model::kSplit:
      return "split";
    case Model::kMary:
      return "mary";
  }
  return "?";
}

double expected_sum_squares(const GrowthParams& p) { return p.rho() / (p.chi() + 2.0 * p.rho()); }

double expected_sum_squares(const SplitSpec& spec) {
  if (const auto* e = std::get_if<Explicit>(&spec)) {
    double s = 0.0;
    for (double x : e->probs) s += x * x;
    return s;
  }
  if (const auto* d = std::get_if<DirichletSym>(&spec)) {
    // m E[X^2] with X ~ Beta(a, (m-1) a).
    return (d->a + 1.0) / (d->m * d->a + 1.0);
  }
  const auto& g = std::get<Gem>(spec);
  if (std::abs(g.alpha + g.theta - 1.0) <= 1e-12) {
    return expected_sum_squares(GrowthParams::from_alpha_theta(g.alpha, g.theta));
  }
  // General GEM: E Z_1, by size-biased invariance.
  return (1.0 - g.alpha) / (1.0 + g.theta);
}

namespace {

std::string layout(const std::string& what) { return "replica r uses stream (master_seed, r); " + what; }

}  // namespace

EstimateReport estimate_eq(const GrowthParams& p, Model model, std::size_t n, std::size_t replicas,
                           std::uint64_t seed, int jobs) {
  if (n < 100) throw std::invalid_argument("estimate_eq requires n >= 100");
  if (replicas < 10) throw std::invalid_argument("estimate_eq requires replicas >= 10");
  if (model == Model::kMary && !p.m()) throw std::invalid_argument("mary model requires chi < 0");
  const TreeSampler sampler = make_sampler(model, n, p.gem(), p, p.m().value_or(2));
  const double n2 = static_cast<double>(n) * static_cast<double>(n);

  Tree first;
  auto values = replicate<double>(replicas, seed, jobs, [&](RandomStream& rng, std::size_t r) {
    Tree t = sampler(rng);
    const double y = static_cast<double>(y_statistic(t)) / n2;
    if (r == 0) first = std::move(t);
    return y;
  });

  const double target = p.rho() / (p.chi() + p.rho());
  const double log_n = std::log(static_cast<double>(n));
  const double bias = 2.0 * log_n * log_n / static_cast<double>(n) * target;
  EstimateReport report = make_report("EQ", std::move(values), target, bias,
                                      {seed, layout(std::string("model ") + to_string(model))});
  report.n = n;
  report.info["bias_constant_C"] = 2.0;
  // Pathwise Y_k/k^2 along the nested prefixes of replica 0 (diagnostic only).
  for (std::size_t k = n / 8; k <= n; k *= 2) {
    if (k < 2) continue;
    const double kk = static_cast<double>(k);
    report.info["pathwise_Y_over_k2_at_" + std::to_string(k)] =
        static_cast<double>(y_statistic(first.prefix(k))) / (kk * kk);
  }
  return report;
}

EstimateReport estimate_sum_p2(const GrowthParams& p, double epsilon, std::size_t replicas, std::uint64_t seed,
                               int jobs, std::size_t max_sticks) {
  if (!(epsilon > 0.0) || epsilon > kSumSquaresMaxEpsilon) {
    throw std::invalid_argument("estimate_sum_p2 requires epsilon in (0, 1e-3]");
  }
  const SplitSpec spec = p.gem();
  auto runs = replicate<SquaredMass>(replicas, seed, jobs, [&](RandomStream& rng, std::size_t) {
    return split_sum_squares(spec, rng, epsilon, max_sticks);
  });
  std::vector<double> values;
  values.reserve(runs.size());
  double tail_bound = 0.0;
  double truncated = 0.0;
  double sticks = 0.0;
  for (const auto& r : runs) {
    values.push_back(r.sum_sq);
    tail_bound += r.remaining * r.remaining;
    sticks += static_cast<double>(r.sticks);
    if (r.remaining >= epsilon) truncated += 1.0;
  }
  const double count = static_cast<double>(std::max<std::size_t>(runs.size(), 1));
  tail_bound /= count;
  // The omitted tail of one replica lies in [0, R^2].
  const double bias = std::max(epsilon * epsilon, tail_bound);
  EstimateReport report =
      make_report("sumP2", std::move(values), expected_sum_squares(p), bias, {seed, layout("GEM sticks")});
  report.info["epsilon"] = epsilon;
  report.info["max_sticks"] = static_cast<double>(max_sticks);
  report.info["mean_tail_bound_R2"] = tail_bound;
  report.info["replicas_stopped_by_stick_cap"] = truncated;
  report.info["mean_sticks"] = sticks / count;
  return report;
}

namespace {

std::vector<double> prefix_samples(const SplitSpec& spec, std::size_t replicas, std::uint64_t seed, int jobs,
                                   RoutingMode mode) {
  return replicate<double>(replicas, seed, jobs, [&](RandomStream& rng, std::size_t) {
    return static_cast<double>(common_prefix_sample(spec, rng, mode));
  });
}

void require_a_below_one(double a) {
  if (!(a < 1.0)) throw std::invalid_argument("common prefix statistics need sum E P_i^2 < 1");
}

}  // namespace

EstimateReport estimate_ef(const SplitSpec& spec, std::size_t replicas, std::uint64_t seed, int jobs,
                           RoutingMode mode) {
  const double a = expected_sum_squares(spec);
  require_a_below_one(a);
  const RoutingMode resolved = resolve_path_routing(spec, mode);
  EstimateReport report = make_report("Ef", prefix_samples(spec, replicas, seed, jobs, resolved), a / (1.0 - a), 0.0,
                                      {seed, layout(std::string("routing ") + to_string(resolved))});
  report.info["a"] = a;
  return report;
}

std::vector<EstimateReport> tail_check(const SplitSpec& spec, std::size_t m_max, std::size_t replicas,
                                       std::uint64_t seed, int jobs, RoutingMode mode) {
  const double a = expected_sum_squares(spec);
  require_a_below_one(a);
  const RoutingMode resolved = resolve_path_routing(spec, mode);
  const auto f = prefix_samples(spec, replicas, seed, jobs, resolved);
  std::vector<EstimateReport> out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    std::vector<double> hits(f.size());
    std::transform(f.begin(), f.end(), hits.begin(), [&](double x) { return x >= static_cast<double>(m) ? 1.0 : 0.0; });
    EstimateReport r = make_report("P(f>=" + std::to_string(m) + ")", std::move(hits),
                                   std::pow(a, static_cast<double>(m)), 0.0,
                                   {seed, layout(std::string("routing ") + to_string(resolved))});
    r.per_replica.clear();
    r.info["m"] = static_cast<double>(m);
    out.push_back(std::move(r));
  }
  return out;
}

WReport estimate_w(const GrowthParams& p, std::size_t draws, std::uint64_t seed, int jobs, RoutingMode mode) {
  const SplitSpec spec = p.gem();
  const RoutingMode resolved = resolve_path_routing(spec, mode);
  auto w = replicate<double>(draws, seed, jobs,
                             [&](RandomStream& rng, std::size_t) { return size_biased_w(spec, rng, resolved); });
  const double g = p.gamma();
  WReport out;
  out.ks = ks_test(w, [g](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : std::pow(x, g)); });
  out.mean = make_report("EW", std::move(w), g / (g + 1.0), 0.0,
                         {seed, layout(std::string("routing ") + to_string(resolved))});
  return out;
}

double fixed_point_mean(const GrowthParams& p) {
  const double a = expected_sum_squares(p);
  const double value = a / (1.0 - a);
  const double direct = p.rho() / (p.chi() + p.rho());
  if (std::abs(value - direct) > 1e-12 * std::max(1.0, std::abs(direct))) {
    throw std::logic_error("fixed-point mean disagrees with rho/(chi+rho)");
  }
  return value;
}

GofReport gof_shape_test(const std::map<std::string, std::uint64_t>& counts, const ShapeLaw& exact) {
  GofReport report;
  report.counts = counts;
  for (const auto& [code, p] : exact.entries) report.exact[code] = to_double(p);
  for (const auto& [code, c] : counts) report.samples += c;
  if (report.samples == 0) throw std::invalid_argument("gof_shape_test: no samples");
  const double total = static_cast<double>(report.samples);

  // Codes outside the exact law form one cell of exact mass 0.
  GofCell other;
  double tv = 0.0;
  for (const auto& [code, c] : counts) {
    if (!report.exact.contains(code)) {
      other.codes.push_back(code);
      other.observed += c;
      tv += static_cast<double>(c) / total;
    }
  }
  std::vector<GofCell> raw;
  for (const auto& [code, p] : report.exact) {
    const auto it = counts.find(code);
    const std::uint64_t obs = it == counts.end() ? 0 : it->second;
    raw.push_back({{code}, obs, p * total});
    tv += std::abs(static_cast<double>(obs) / total - p);
  }
  report.total_variation = 0.5 * tv;

  // Pool the smallest cells until every expected count is at least 5.
  std::sort(raw.begin(), raw.end(), [](const GofCell& x, const GofCell& y) { return x.expected < y.expected; });
  std::vector<GofCell> cells;
  GofCell pool;
  for (auto& c : raw) {
    if (c.expected >= 5.0 && pool.codes.empty()) {
      cells.push_back(std::move(c));
      continue;
    }
    pool.codes.insert(pool.codes.end(), c.codes.begin(), c.codes.end());
    pool.observed += c.observed;
    pool.expected += c.expected;
    if (pool.expected >= 5.0) {
      cells.push_back(std::move(pool));
      pool = GofCell{};
    }
  }
  if (!pool.codes.empty()) {
    if (cells.empty()) {
      cells.push_back(std::move(pool));
    } else {
      auto& last = cells.back();
      last.codes.insert(last.codes.end(), pool.codes.begin(), pool.codes.end());
      last.observed += pool.observed;
      last.expected += pool.expected;
    }
  }

  double stat = 0.0;
  for (const auto& c : cells) {
    const double diff = static_cast<double>(c.observed) - c.expected;
    stat += diff * diff / c.expected;
  }
  if (other.observed > 0) {
    stat = std::numeric_limits<double>::infinity();
    cells.push_back(other);
  }
  report.cells = std::move(cells);
  report.chi_square = stat;
  const std::size_t k = report.cells.size() - (other.observed > 0 ? 1 : 0);
  report.degrees_of_freedom = k > 1 ? k - 1 : 0;
  if (std::isinf(stat)) {
    report.p_value = 0.0;
  } else if (report.degrees_of_freedom == 0) {
    report.p_value = 1.0;
  } else {
    report.p_value = chi_square_sf(stat, static_cast<double>(report.degrees_of_freedom));
  }
  return report;
}

std::map<std::string, std::uint64_t> sample_shape_counts(const TreeSampler& sampler, std::size_t samples,
                                                         std::uint64_t seed, int jobs) {
  auto codes = replicate<std::string>(samples, seed, jobs,
                                      [&](RandomStream& rng, std::size_t) { return canonical_code(sampler(rng)); });
  std::map<std::string, std::uint64_t> counts;
  for (const auto& c : codes) ++counts[c];
  return counts;
}

TreeSampler make_sampler(Model model, std::size_t n, const SplitSpec& spec, std::optional<GrowthParams> params, int m,
                         RoutingMode mode) {
  switch (model) {
    case Model::kPa:
      if (!params) throw std::invalid_argument("pa sampler needs (chi, rho)");
      return [n, p = *params](RandomStream& rng) { return grow_linear_pa(n, p, rng); };
    case Model::kSplit:
      return [n, spec, mode](RandomStream& rng) { return grow_split(n, spec, rng, mode); };
    case Model::kMary:
      return [n, m](RandomStream& rng) { return grow_mary_increasing(n, m, rng).tree; };
  }
  throw std::invalid_argument("unknown model");
}

UrnReport urn_two_color_check(double r0, double w0, std::uint64_t steps, std::size_t replicas, std::uint64_t seed,
                              int jobs) {
  UrnReport out;
  out.fractions = replicate<double>(replicas, seed, jobs, [&](RandomStream& rng, std::size_t) {
    return urn_final_fraction(r0, w0, steps, rng);
  });
  out.law = "Beta(" + std::to_string(r0) + "," + std::to_string(w0) + ")";
  out.ks = ks_test(out.fractions, [=](double x) { return beta_cdf(r0, w0, x); }, kUrnKsSlack);
  out.seed = {seed, "replica r uses stream (master_seed, r)"};
  return out;
}

UrnReport urn_multicolor_check(int m, std::uint64_t steps, std::size_t replicas, std::uint64_t seed, int jobs) {
  UrnReport out;
  out.per_color = replicate<std::vector<double>>(
      replicas, seed, jobs, [&](RandomStream& rng, std::size_t) { return urn_multicolor_fractions(m, steps, rng); });
  for (const auto& f : out.per_color) out.fractions.push_back(f[0]);
  const double a = 1.0 / (m - 1);
  const double b = (m - 1) * a;
  out.law = "Beta(" + std::to_string(a) + "," + std::to_string(b) + ") marginal of Dir(1/(m-1))";
  out.ks = ks_test(out.fractions, [=](double x) { return beta_cdf(a, b, x); }, kUrnKsSlack);
  out.seed = {seed, "replica r uses stream (master_seed, r)"};
  return out;
}

}  // namespace pasplit
