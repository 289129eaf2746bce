#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pasplit/analysis.hpp"
#include "pasplit/growth_pa.hpp"
#include "pasplit/tree.hpp"

namespace pasplit {

// {"n": <int>, "parents": [null, p1, ..., p_{n-1}]}
nlohmann::json tree_to_json(const Tree& tree);
// Extra keys are ignored; throws std::invalid_argument on malformed input.
Tree tree_from_json(const nlohmann::json& j);

// {"n", "params": {"chi", "rho"}, "entries": [{"code", "p"}]} with p as an
// exact fraction string.
nlohmann::json shape_law_to_json(const ShapeLaw& law);
ShapeLaw shape_law_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const EstimateReport& r, bool with_replicas = false);
nlohmann::json gof_to_json(const GofReport& r);
nlohmann::json ks_to_json(const KsResult& r);
nlohmann::json urn_to_json(const UrnReport& r);

// "replica,value" rows.
void write_replica_csv(std::ostream& out, const std::vector<double>& values, const std::string& column);
// "replica,final_fraction[,color_1,...,color_m]" rows.
void write_urn_csv(std::ostream& out, const UrnReport& r);

}  // namespace pasplit
