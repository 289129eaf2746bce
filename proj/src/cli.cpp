#include "pasplit/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pasplit/analysis.hpp"
#include "pasplit/growth_pa.hpp"
#include "pasplit/growth_split.hpp"
#include "pasplit/io.hpp"
#include "pasplit/rational.hpp"
#include "pasplit/urn.hpp"

namespace pasplit {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string model = "pa";
  std::string chi, rho, alpha, theta;
  int m = 0;
  int dirichlet_m = 0;
  std::string dirichlet_a;
  std::string probs;
  std::size_t n = 0;
  std::size_t samples = 100000;
  std::size_t replicas = 500;
  std::optional<std::uint64_t> seed;
  std::string epsilon = "1e-6";
  std::string routing = "auto";
  std::string law_chi, law_rho;
  std::size_t m_max = 5;
  std::uint64_t steps = 100000;
  std::string r0, w0;
  int colors = 0;
  std::string output;
  std::string format = "json";
  bool bare = false;
  int jobs = 1;
};

double number(const std::string& text, const char* name) {
  try {
    return to_double(parse_rational(text));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

std::optional<GrowthParams> growth_params(const RunConfig& c) {
  const bool has_chi_rho = !c.chi.empty() || !c.rho.empty();
  const bool has_alpha_theta = !c.alpha.empty() || !c.theta.empty();
  if (has_chi_rho && has_alpha_theta) throw UsageError("give either --chi/--rho or --alpha/--theta, not both");
  if (has_chi_rho) {
    if (c.chi.empty() || c.rho.empty()) throw UsageError("--chi and --rho must be given together");
    return GrowthParams::make(number(c.chi, "chi"), number(c.rho, "rho"));
  }
  if (has_alpha_theta) {
    if (c.alpha.empty() || c.theta.empty()) throw UsageError("--alpha and --theta must be given together");
    return GrowthParams::from_alpha_theta(number(c.alpha, "alpha"), number(c.theta, "theta"));
  }
  return std::nullopt;
}

GrowthParams require_params(const RunConfig& c) {
  auto p = growth_params(c);
  if (!p) throw UsageError("parameters required: --chi/--rho or --alpha/--theta");
  return *p;
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw UsageError("--seed is required for randomized commands");
  return *c.seed;
}

RoutingMode routing(const RunConfig& c) {
  if (c.routing == "auto") return RoutingMode::kAuto;
  if (c.routing == "indexed") return RoutingMode::kIndexed;
  if (c.routing == "appearance") return RoutingMode::kAppearanceOrder;
  throw UsageError("--routing must be auto, indexed or appearance");
}

Model model(const std::string& name) {
  if (name == "pa") return Model::kPa;
  if (name == "split") return Model::kSplit;
  if (name == "mary") return Model::kMary;
  throw UsageError("--model must be pa, split or mary");
}

// Split law for the split model: explicit vector, Dirichlet, or GEM(alpha,
// theta). A GEM given as --alpha/--theta need not satisfy alpha + theta = 1.
SplitSpec split_spec(const RunConfig& c) {
  if (!c.probs.empty()) {
    std::vector<double> probs;
    std::stringstream ss(c.probs);
    for (std::string item; std::getline(ss, item, ',');) probs.push_back(number(item, "probs"));
    return Explicit::make(std::move(probs));
  }
  if (c.dirichlet_m > 0) {
    std::optional<double> a;
    if (!c.dirichlet_a.empty()) a = number(c.dirichlet_a, "dirichlet-a");
    return DirichletSym::make(c.dirichlet_m, a);
  }
  const bool has_chi_rho = !c.chi.empty() || !c.rho.empty();
  if (!has_chi_rho && !c.alpha.empty() && !c.theta.empty()) {
    return Gem::make(number(c.alpha, "alpha"), number(c.theta, "theta"));
  }
  return require_params(c).gem();
}

json params_json(const GrowthParams& p) {
  json j{{"chi", p.chi()}, {"rho", p.rho()}, {"alpha", p.alpha()}, {"theta", p.theta()}, {"gamma", p.gamma()}};
  if (p.m()) j["m"] = *p.m();
  return j;
}

class Output {
 public:
  Output(const RunConfig& c, std::ostream& fallback) : fallback_(&fallback) {
    if (!c.output.empty()) {
      file_.open(c.output);
      if (!file_) throw UsageError("cannot open output file " + c.output);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : *fallback_; }

 private:
  std::ofstream file_;
  std::ostream* fallback_;
};

int cmd_grow(const RunConfig& c, std::ostream& out) {
  if (c.n < 1) throw UsageError("--n must be >= 1");
  const Model mdl = model(c.model);
  json header{{"model", c.model}};
  Tree tree;
  if (mdl == Model::kMary) {
    if (c.m < 2) throw UsageError("--m must be >= 2 for the mary model");
    header["m"] = c.m;
    header["seed"] = require_seed(c);
    RandomStream rng(*c.seed, 0);
    tree = grow_mary_increasing(c.n, c.m, rng).tree;
  } else if (mdl == Model::kPa) {
    const GrowthParams p = require_params(c);
    header["params"] = params_json(p);
    header["seed"] = require_seed(c);
    RandomStream rng(*c.seed, 0);
    tree = grow_linear_pa(c.n, p, rng);
  } else {
    const SplitSpec spec = split_spec(c);
    const RoutingMode mode = resolve_growth_routing(spec, routing(c));
    if (auto p = growth_params(c); p && !std::holds_alternative<Gem>(spec)) {
      throw UsageError("--chi/--rho cannot be combined with --probs or --dirichlet");
    }
    header["split"] = describe(spec);
    header["routing"] = to_string(mode);
    header["seed"] = require_seed(c);
    RandomStream rng(*c.seed, 0);
    tree = grow_split(c.n, spec, rng, mode);
  }
  json j = tree_to_json(tree);
  if (!c.bare) j["header"] = header;
  Output(c, out).stream() << j.dump() << "\n";
  return 0;
}

int cmd_law(const RunConfig& c, std::ostream& out) {
  const GrowthParams p = require_params(c);
  if (c.n < 1 || c.n > kExactLawLimit) throw UsageError("--n must be in 1..8 for exact laws");
  const Rational chi = c.chi.empty() ? to_rational(p.chi()) : parse_rational(c.chi);
  const Rational rho = c.rho.empty() ? to_rational(p.rho()) : parse_rational(c.rho);
  Output(c, out).stream() << shape_law_to_json(enumerate_exact_law(c.n, chi, rho)).dump(2) << "\n";
  return 0;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  if (c.n < 1 || c.n > kExactLawLimit) throw UsageError("--n must be in 1..8 for exact laws");
  const std::uint64_t seed = require_seed(c);
  const Model mdl = model(c.model.empty() ? "split" : c.model);
  std::optional<GrowthParams> p = growth_params(c);
  SplitSpec spec = Gem::make(0.0, 1.0);
  if (mdl == Model::kSplit) {
    spec = split_spec(c);
  } else if (mdl == Model::kPa && !p) {
    throw UsageError("pa model needs --chi/--rho");
  } else if (mdl == Model::kMary && c.m < 2) {
    throw UsageError("--m must be >= 2 for the mary model");
  }
  // Exact law defaults to the sampler's own parameters.
  GrowthParams law_params = GrowthParams::make(0.0, 1.0);
  if (!c.law_chi.empty() || !c.law_rho.empty()) {
    law_params = GrowthParams::make(number(c.law_chi, "law-chi"), number(c.law_rho, "law-rho"));
  } else if (p) {
    law_params = *p;
  } else if (mdl == Model::kMary) {
    law_params = GrowthParams::make(-1.0, c.m);
  } else if (const auto* d = std::get_if<DirichletSym>(&spec)) {
    law_params = GrowthParams::make(-1.0, d->m);
  } else {
    throw UsageError("give --law-chi/--law-rho for the exact law to compare against");
  }
  const ShapeLaw law = enumerate_exact_law(c.n, law_params);
  const auto counts = sample_shape_counts(make_sampler(mdl, c.n, spec, p, c.m, routing(c)), c.samples, seed, c.jobs);
  const GofReport report = gof_shape_test(counts, law);
  json j = gof_to_json(report);
  j["model"] = to_string(mdl);
  j["law_params"] = params_json(law_params);
  j["seed"] = {{"master_seed", seed}, {"stream_layout", "sample r uses stream (master_seed, r)"}};
  if (mdl == Model::kSplit) j["split"] = describe(spec);
  Output(c, out).stream() << j.dump(2) << "\n";
  return report.pass(kGofSignificance, kGofMaxTv) ? 0 : 1;
}

int emit_reports(const RunConfig& c, std::ostream& out, const std::vector<EstimateReport>& reports, json extra = {}) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  auto& os = Output(c, out).stream();
  if (c.format == "csv") {
    if (reports.size() == 1) {
      write_replica_csv(os, reports[0].per_replica, reports[0].quantity);
    } else {
      os << "quantity,mean,stderr,target,bias_allowance,pass\n";
      os.precision(17);
      for (const auto& r : reports) {
        os << r.quantity << "," << r.mean << "," << r.stderr_of_mean << "," << r.target << "," << r.bias_allowance
           << "," << (r.pass ? "true" : "false") << "\n";
      }
    }
  } else if (c.format == "json") {
    json j = json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    json doc{{"reports", j}, {"pass", pass}};
    if (!extra.is_null()) doc.update(extra);
    os << doc.dump(2) << "\n";
  } else {
    throw UsageError("--format must be json or csv");
  }
  return pass ? 0 : 1;
}

int cmd_estimate(const std::string& what, const RunConfig& c, std::ostream& out) {
  if (what == "fixedpoint") {
    const GrowthParams p = require_params(c);
    const double v = fixed_point_mean(p);
    json j{{"quantity", "fixed_point_mean"}, {"value", v}, {"target", p.rho() / (p.chi() + p.rho())},
           {"params", params_json(p)}, {"pass", true}};
    Output(c, out).stream() << j.dump(2) << "\n";
    return 0;
  }
  const std::uint64_t seed = require_seed(c);
  if (what == "q") {
    const GrowthParams p = require_params(c);
    const Model mdl = model(c.model);
    EstimateReport r = estimate_eq(p, mdl, c.n, c.replicas, seed, c.jobs);
    return emit_reports(c, out, {r}, json{{"params", params_json(p)}, {"model", to_string(mdl)}});
  }
  if (what == "sump2") {
    const GrowthParams p = require_params(c);
    EstimateReport r = estimate_sum_p2(p, number(c.epsilon, "epsilon"), c.replicas, seed, c.jobs);
    return emit_reports(c, out, {r}, json{{"params", params_json(p)}});
  }
  if (what == "w") {
    const GrowthParams p = require_params(c);
    WReport w = estimate_w(p, c.replicas, seed, c.jobs, routing(c));
    const int code = emit_reports(c, out, {w.mean}, json{{"params", params_json(p)}, {"ks", ks_to_json(w.ks)}});
    return (code == 0 && w.ks.pass) ? 0 : 1;
  }
  if (what == "f") {
    const SplitSpec spec = split_spec(c);
    return emit_reports(c, out, {estimate_ef(spec, c.replicas, seed, c.jobs, routing(c))},
                        json{{"split", describe(spec)}});
  }
  if (what == "tail") {
    const SplitSpec spec = split_spec(c);
    return emit_reports(c, out, tail_check(spec, c.m_max, c.replicas, seed, c.jobs, routing(c)),
                        json{{"split", describe(spec)}});
  }
  throw UsageError("unknown estimate target '" + what + "' (q, sump2, w, f, tail, fixedpoint)");
}

int cmd_urn(const RunConfig& c, std::ostream& out) {
  const std::uint64_t seed = require_seed(c);
  UrnReport report;
  if (c.colors > 0) {
    if (!c.r0.empty() || !c.w0.empty()) throw UsageError("--colors cannot be combined with --r0/--w0");
    report = urn_multicolor_check(c.colors, c.steps, c.replicas, seed, c.jobs);
  } else {
    if (c.r0.empty() || c.w0.empty()) throw UsageError("two-colour urn needs --r0 and --w0 (or --colors m)");
    report = urn_two_color_check(number(c.r0, "r0"), number(c.w0, "w0"), c.steps, c.replicas, seed, c.jobs);
  }
  auto& os = Output(c, out).stream();
  if (c.format == "csv") {
    write_urn_csv(os, report);
  } else if (c.format == "json") {
    os << urn_to_json(report).dump(2) << "\n";
  } else {
    throw UsageError("--format must be json or csv");
  }
  return report.ks.pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preferential attachment and random split tree toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--chi", c.chi, "chi in w_k = chi k + rho (decimal or p/q)");
    sub->add_option("--rho", c.rho, "rho in w_k = chi k + rho");
    sub->add_option("--alpha", c.alpha, "GEM alpha");
    sub->add_option("--theta", c.theta, "GEM theta");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "master seed (decimal 64-bit)");
    sub->add_option("--output,-o", c.output, "output file (default stdout)");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  auto add_split = [&](CLI::App* sub) {
    sub->add_option("--dirichlet", c.dirichlet_m, "symmetric Dirichlet split with m components");
    sub->add_option("--dirichlet-a", c.dirichlet_a, "Dirichlet parameter (default 1/(m-1))");
    sub->add_option("--probs", c.probs, "explicit split vector, comma separated");
    sub->add_option("--routing", c.routing, "auto | indexed | appearance");
  };

  auto* grow = app.add_subcommand("grow", "grow one tree and print it as JSON");
  add_params(grow);
  add_common(grow);
  add_split(grow);
  grow->add_option("--model", c.model, "pa | split | mary");
  grow->add_option("--m", c.m, "arity for the mary model");
  grow->add_option("--n", c.n, "number of nodes")->required();
  grow->add_flag("--bare", c.bare, "omit the header");

  auto* law = app.add_subcommand("law", "exact shape law by enumeration (n <= 8)");
  add_params(law);
  law->add_option("--output,-o", c.output, "output file (default stdout)");
  law->add_option("--n", c.n, "number of nodes")->required();

  auto* compare = app.add_subcommand("compare", "chi-square test of sampled shapes against the exact law");
  add_params(compare);
  add_common(compare);
  add_split(compare);
  c.model = "split";
  compare->add_option("--model", c.model, "split | pa | mary (default split)");
  compare->add_option("--m", c.m, "arity for the mary model");
  compare->add_option("--n", c.n, "number of nodes")->required();
  compare->add_option("--samples", c.samples, "number of sampled trees");
  compare->add_option("--law-chi", c.law_chi, "chi of the exact law (default: sampler's)");
  compare->add_option("--law-rho", c.law_rho, "rho of the exact law");

  std::string what;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimators");
  add_params(estimate);
  add_common(estimate);
  add_split(estimate);
  estimate->add_option("what", what, "q | sump2 | w | f | tail | fixedpoint")->required();
  estimate->add_option("--model", c.model, "pa | split (for q)");
  estimate->add_option("--n", c.n, "tree size (for q)");
  estimate->add_option("--replicas", c.replicas, "replicas / draws");
  estimate->add_option("--epsilon", c.epsilon, "stick truncation threshold (for sump2)");
  estimate->add_option("--m-max", c.m_max, "largest m for tail");
  estimate->add_option("--format", c.format, "json | csv");

  auto* urn = app.add_subcommand("urn", "Polya urn limit checks");
  add_common(urn);
  urn->add_option("--r0", c.r0, "initial red weight");
  urn->add_option("--w0", c.w0, "initial white weight");
  urn->add_option("--colors", c.colors, "m-colour urn");
  urn->add_option("--steps", c.steps, "draws per replica");
  urn->add_option("--replicas", c.replicas, "replicas");
  urn->add_option("--format", c.format, "json | csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (grow->parsed()) return cmd_grow(c, out);
    if (law->parsed()) return cmd_law(c, out);
    if (compare->parsed()) return cmd_compare(c, out);
    if (estimate->parsed()) return cmd_estimate(what, c, out);
    if (urn->parsed()) return cmd_urn(c, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pasplit
