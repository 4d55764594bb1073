#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "entmeter/errors.hpp"

using namespace entmeter;
using namespace entmeter::cli;
using nlohmann::json;

namespace {

json measure_json(const json& spec, MeasureFlags flags = {}) {
  return measure_report(load_state_spec(spec), flags);
}

}  // namespace

TEST(Cli, GhzFactory) {
  const json r = measure_json({{"factory", {{"name", "ghz"}}}});
  EXPECT_NEAR(r["epsilon"].get<double>(), 2.0, 1e-9);
  EXPECT_EQ(r["log_base"].get<double>(), 2.0);
  EXPECT_EQ(validate_report(r), "");
}

TEST(Cli, MulticatWithRoundedCoefficients) {
  const json spec = json::parse(
      R"({"factory":{"name":"multicat","params":{"N":4,"c":[[0.70710678,0],[0.70710678,0]]}}})");
  EXPECT_NEAR(measure_json(spec)["epsilon"].get<double>(), 3.0, 1e-7);
  const json bad = json::parse(R"({"factory":{"name":"multicat","params":{"N":4,"c":[0.7,0.7]}}})");
  EXPECT_THROW(load_state_spec(bad), InvalidArgument);
}

TEST(Cli, ExplicitMaximallyMixed) {
  json data = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(json::array({i == j ? 0.25 : 0.0, 0.0}));
    data.push_back(row);
  }
  const json spec = {{"explicit", {{"shape", {2, 2}}, {"kind", "density"}, {"data", data}}}};
  EXPECT_NEAR(measure_json(spec)["epsilon"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, ExplicitPureAndShapeErrors) {
  const json pure = json::parse(
      R"({"explicit":{"shape":[2,2],"kind":"pure","data":[[0,0],[0.70710678,0],[0.70710678,0],[0,0]]}})");
  EXPECT_NEAR(measure_json(pure)["epsilon"].get<double>(), 1.0, 1e-9);
  const json short_data = json::parse(R"({"explicit":{"shape":[2,2],"kind":"pure","data":[[1,0]]}})");
  EXPECT_THROW(load_state_spec(short_data), InvalidArgument);
  const json both = json::parse(R"({"factory":{"name":"epr"},"explicit":{}})");
  EXPECT_THROW(load_state_spec(both), InvalidArgument);
  EXPECT_THROW(load_state_spec(json::parse(R"({"factory":{"name":"nope"}})")), InvalidArgument);
}

TEST(Cli, ManyBodyFactoriesUseReducedPath) {
  const LoadedInput c = load_state_spec(json::parse(R"({"factory":{"name":"condensate","params":{"N":5,"p":3}}})"));
  ASSERT_TRUE(c.reduced.has_value());
  EXPECT_NEAR(measure_report(c, {})["epsilon"].get<double>(), 0.0, 1e-8);
  const LoadedInput f = load_state_spec(
      json::parse(R"({"factory":{"name":"fermi_sea","params":{"N":3,"modes":3,"p":2}}})"));
  MeasureFlags basis;
  basis.mode = NormMode::Basis;
  EXPECT_NEAR(measure_report(f, basis)["epsilon"].get<double>(), std::log2(1.5), 1e-9);
}

TEST(Cli, GibbsFactory) {
  const json spec = json::parse(
      R"({"factory":{"name":"gibbs","params":{"beta":0.0,"hamiltonian":{"model":"heisenberg","N":2,"range":"nearest","J":1.0}}}})");
  EXPECT_NEAR(measure_json(spec)["epsilon"].get<double>(), 0.0, 1e-9);
}

TEST(Cli, OracleCheckAndSchema) {
  MeasureFlags flags;
  flags.oracle_check = true;
  const json r = measure_json({{"factory", {{"name", "epr"}}}}, flags);
  ASSERT_TRUE(r.contains("oracle"));
  EXPECT_NEAR(r["oracle"]["value"].get<double>(), 0.5, 1e-6);
  EXPECT_EQ(validate_report(json::parse(dump(r))), "");
  json broken = r;
  broken.erase("optimizer");
  EXPECT_NE(validate_report(broken), "");
}

TEST(Cli, OrderIndexReport) {
  const LoadedInput c = load_state_spec(json::parse(R"({"factory":{"name":"condensate","params":{"N":100}}})"));
  const json r = order_index_report(c);
  EXPECT_NEAR(r["omega"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(validate_report(r), "");
  EXPECT_THROW(order_index_report(load_state_spec({{"factory", {{"name", "epr"}}}})), DegenerateTrace);
}

TEST(Cli, DumpRoundTripsDoubles) {
  const double x = 0.1 + 0.2;
  const json doc = {{"v", x}, {"w", std::log2(3.0)}};
  const json back = json::parse(dump(doc));
  EXPECT_EQ(back["v"].get<double>(), x);
  EXPECT_EQ(back["w"].get<double>(), std::log2(3.0));
}

TEST(Cli, ParseSeeds) {
  EXPECT_EQ(parse_seeds("0..3"), (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(parse_seeds("0,2,5"), (std::vector<std::uint64_t>{0, 2, 5}));
  EXPECT_EQ(parse_seeds("1..2,9"), (std::vector<std::uint64_t>{1, 2, 9}));
  EXPECT_THROW(parse_seeds("3..1"), InvalidArgument);
  EXPECT_THROW(parse_seeds("x"), InvalidArgument);
  EXPECT_THROW(parse_seeds(""), InvalidArgument);
}

TEST(Cli, ParseBase) {
  EXPECT_EQ(parse_base("2"), 2.0);
  EXPECT_EQ(parse_base("10"), 10.0);
  EXPECT_NEAR(parse_base("e"), std::exp(1.0), 1e-15);
  EXPECT_THROW(parse_base("3"), InvalidArgument);
}

TEST(Cli, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_measure("/nonexistent/spec.json", {}, out, err), kExitInvalidInput);
  EXPECT_EQ(cmd_verify("0", {"bogus"}, {}, out, err), kExitInvalidInput);
  EXPECT_EQ(cmd_verify("0..1", {"nullification"}, {}, out, err), kExitOk);
}

TEST(Cli, ReproduceTableAndDeterminism) {
  const auto rows = reproduce_rows({});
  const json table = reproduce_table(rows);
  EXPECT_EQ(validate_report(table), "");
  for (const auto& r : table) {
    if (r["flag"].is_null()) EXPECT_LE(r["abs_diff"].get<double>(), kReproduceTol) << r["name"];
  }
  EXPECT_EQ(dump(table), dump(reproduce_table(reproduce_rows({}))));
}

TEST(Cli, VerifySummaryShape) {
  const json s = verify_summary({0, 1}, {"scale_invariance", "idempotence"}, {});
  EXPECT_TRUE(s["all_passed"].get<bool>());
  EXPECT_EQ(s["properties"].size(), 2u);
  EXPECT_EQ(validate_report(s), "");
}
