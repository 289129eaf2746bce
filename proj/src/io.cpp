#include "pasplit/io.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pasplit {

using nlohmann::json;

json tree_to_json(const Tree& tree) {
  json parents = json::array();
  parents.push_back(nullptr);
  for (NodeId v = 1; v < tree.size(); ++v) parents.push_back(tree.parent(v));
  return json{{"n", tree.size()}, {"parents", std::move(parents)}};
}

Tree tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("parents") || !j["parents"].is_array()) {
    throw std::invalid_argument("tree JSON needs a \"parents\" array");
  }
  const auto& arr = j["parents"];
  if (arr.empty() || !arr[0].is_null()) throw std::invalid_argument("tree JSON: parents[0] must be null");
  std::vector<NodeId> parents{kNoParent};
  for (std::size_t i = 1; i < arr.size(); ++i) {
    if (!arr[i].is_number_unsigned()) throw std::invalid_argument("tree JSON: parents must be non-negative integers");
    parents.push_back(arr[i].get<NodeId>());
  }
  if (j.contains("n") && j["n"].get<std::size_t>() != parents.size()) {
    throw std::invalid_argument("tree JSON: n does not match the parent array");
  }
  return Tree::from_parents(parents);
}

json shape_law_to_json(const ShapeLaw& law) {
  json entries = json::array();
  for (const auto& [code, p] : law.entries) entries.push_back({{"code", code}, {"p", to_string(p)}});
  return json{{"n", law.n}, {"params", {{"chi", law.chi}, {"rho", law.rho}}}, {"entries", std::move(entries)}};
}

ShapeLaw shape_law_from_json(const json& j) {
  ShapeLaw law;
  law.n = j.at("n").get<std::size_t>();
  law.chi = j.at("params").at("chi").get<double>();
  law.rho = j.at("params").at("rho").get<double>();
  for (const auto& e : j.at("entries")) law.entries[e.at("code").get<std::string>()] = parse_rational(e.at("p").get<std::string>());
  return law;
}

json report_to_json(const EstimateReport& r, bool with_replicas) {
  json j{{"quantity", r.quantity},
         {"replicas", r.replicas},
         {"mean", r.mean},
         {"stderr", r.stderr_of_mean},
         {"target", r.target},
         {"bias_allowance", r.bias_allowance},
         {"pass", r.pass},
         {"seed", {{"master_seed", r.seed.master_seed}, {"stream_layout", r.seed.stream_layout}}},
         {"info", r.info}};
  j["n"] = r.n ? json(*r.n) : json(nullptr);
  if (with_replicas) j["per_replica"] = r.per_replica;
  return j;
}

json gof_to_json(const GofReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back({{"codes", c.codes}, {"observed", c.observed}, {"expected", c.expected}});
  return json{{"samples", r.samples},
              {"counts", r.counts},
              {"exact", r.exact},
              {"cells", std::move(cells)},
              {"chi_square", std::isinf(r.chi_square) ? json("inf") : json(r.chi_square)},
              {"degrees_of_freedom", r.degrees_of_freedom},
              {"p_value", r.p_value},
              {"total_variation", r.total_variation},
              {"significance", kGofSignificance},
              {"max_tv", kGofMaxTv},
              {"pass", r.pass(kGofSignificance, kGofMaxTv)}};
}

json ks_to_json(const KsResult& r) {
  return json{{"distance", r.distance}, {"threshold", r.threshold}, {"samples", r.samples}, {"pass", r.pass}};
}

json urn_to_json(const UrnReport& r) {
  return json{{"law", r.law},
              {"ks", ks_to_json(r.ks)},
              {"seed", {{"master_seed", r.seed.master_seed}, {"stream_layout", r.seed.stream_layout}}}};
}

void write_replica_csv(std::ostream& out, const std::vector<double>& values, const std::string& column) {
  out << "replica," << column << "\n";
  out.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) out << i << "," << values[i] << "\n";
}

void write_urn_csv(std::ostream& out, const UrnReport& r) {
  out << "replica,final_fraction";
  const std::size_t colors = r.per_color.empty() ? 0 : r.per_color.front().size();
  for (std::size_t c = 1; c <= colors; ++c) out << ",color_" << c;
  out << "\n";
  out.precision(17);
  for (std::size_t i = 0; i < r.fractions.size(); ++i) {
    out << i << "," << r.fractions[i];
    if (i < r.per_color.size()) {
      for (double f : r.per_color[i]) out << "," << f;
    }
    out << "\n";
  }
}

}  // namespace pasplit
