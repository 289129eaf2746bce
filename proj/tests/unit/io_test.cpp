#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

#include "pasplit/io.hpp"
#include "pasplit/random.hpp"
#include "pasplit/rational.hpp"

namespace pasplit {
namespace {

using nlohmann::json;

TEST(TreeJsonTest, SingleNode) { EXPECT_EQ(tree_to_json(Tree{}).dump(), R"({"n":1,"parents":[null]})"); }

TEST(TreeJsonTest, RoundTrip) {
  RandomStream rng(1, 0);
  const Tree t = grow_linear_pa(60, GrowthParams::make(1, 1), rng);
  const json j = tree_to_json(t);
  EXPECT_EQ(j["n"], 60);
  EXPECT_EQ(tree_from_json(j).parents(), t.parents());
  EXPECT_EQ(tree_from_json(json::parse(j.dump())).parents(), t.parents());
}

TEST(TreeJsonTest, RejectsMalformed) {
  EXPECT_THROW(tree_from_json(json::parse(R"({"n":1})")), std::invalid_argument);
  EXPECT_THROW(tree_from_json(json::parse(R"({"parents":[0]})")), std::invalid_argument);
  EXPECT_THROW(tree_from_json(json::parse(R"({"parents":[null,-1]})")), std::invalid_argument);
  EXPECT_THROW(tree_from_json(json::parse(R"({"parents":[null,1]})")), std::invalid_argument);
  EXPECT_THROW(tree_from_json(json::parse(R"({"n":3,"parents":[null,0]})")), std::invalid_argument);
  EXPECT_NO_THROW(tree_from_json(json::parse(R"({"parents":[null,0,0],"header":{}})")));
}

TEST(ShapeLawJsonTest, FractionStringsRoundTrip) {
  const ShapeLaw law = enumerate_exact_law(5, GrowthParams::make(1, 1));
  const json j = shape_law_to_json(law);
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["params"]["chi"], 1.0);
  for (const auto& e : j["entries"]) EXPECT_TRUE(e["p"].is_string());
  const ShapeLaw back = shape_law_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.entries, law.entries);
  EXPECT_EQ(back.n, law.n);
  const json small = shape_law_to_json(enumerate_exact_law(3, GrowthParams::make(0, 1)));
  ASSERT_EQ(small["entries"].size(), 2u);
  EXPECT_EQ(small["entries"][0]["p"], "1/2");
  EXPECT_EQ(small["entries"][1]["p"], "1/2");
}

TEST(ReportJsonTest, CarriesSeedAndVerdict) {
  EstimateReport r = make_report("EQ", {1.0, 1.5}, 1.0, 0.1, {42, "replica r uses stream (master_seed, r)"});
  r.n = 100;
  const json j = report_to_json(r);
  EXPECT_EQ(j["seed"]["master_seed"], 42u);
  EXPECT_EQ(j["n"], 100);
  EXPECT_EQ(j["pass"], r.pass);
  EXPECT_FALSE(j.contains("per_replica"));
  EXPECT_EQ(report_to_json(r, true)["per_replica"].size(), 2u);
}

TEST(ReportJsonTest, GofInfinity) {
  GofReport g;
  g.chi_square = INFINITY;
  g.p_value = 0.0;
  const json j = gof_to_json(g);
  EXPECT_EQ(j["chi_square"], "inf");
  EXPECT_EQ(j["pass"], false);
}

TEST(CsvTest, ReplicaRows) {
  std::ostringstream os;
  write_replica_csv(os, {0.5, 0.25}, "value");
  EXPECT_EQ(os.str(), "replica,value\n0,0.5\n1,0.25\n");
  UrnReport u;
  u.fractions = {0.5};
  u.per_color = {{0.5, 0.25, 0.25}};
  std::ostringstream us;
  write_urn_csv(us, u);
  EXPECT_EQ(us.str(), "replica,final_fraction,color_1,color_2,color_3\n0,0.5,0.5,0.25,0.25\n");
}

}  // namespace
}  // namespace pasplit
