#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "noma/error.hpp"
#include "noma/experiments.hpp"
#include "noma/random.hpp"

using namespace noma::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("noma_test_" + name);
}

const char* kFixedConfig = R"({"experiment": "Fig5FixedAlloc", "seed": 5, "trials": 6000,
    "grid": {"points": [[0, 0], [2, 0], [-3, 3]]}})";

}  // namespace

TEST(Csv, EmptyTableHasMetadataAndHeaderOnly) {
  ResultTable t({{"a", ColumnType::kReal}, {"b", ColumnType::kInteger}});
  t.add_metadata("seed", "1");
  EXPECT_EQ(render_csv(t), "# seed: 1\na,b\n");
}

TEST(Csv, TwelveSignificantDigitsAndTrailingNewline) {
  ResultTable t({{"x", ColumnType::kReal}, {"n", ColumnType::kInteger}, {"s", ColumnType::kText}});
  t.add_row({1.0 / 3.0, std::int64_t{42}, std::string("Cat2")});
  t.add_row({1e-20, std::int64_t{-1}, std::string("x")});
  EXPECT_EQ(render_csv(t), "x,n,s\n0.333333333333,42,Cat2\n1e-20,-1,x\n");
}

TEST(Csv, SchemaEnforced) {
  ResultTable t({{"x", ColumnType::kReal}});
  EXPECT_THROW(t.add_row({std::int64_t{1}}), std::invalid_argument);
  EXPECT_THROW(t.add_row({1.0, 2.0}), std::invalid_argument);
  ResultTable text({{"s", ColumnType::kText}});
  EXPECT_THROW(text.add_row({std::string("a,b")}), std::invalid_argument);
}

TEST(Csv, WriteTwiceIsByteIdentical) {
  const auto table = run(parse_scenario(kFixedConfig));
  const auto a = temp_file("a.csv");
  const auto b = temp_file("b.csv");
  const auto bytes = write_csv(table, a);
  write_csv(table, b);
  EXPECT_EQ(bytes, std::filesystem::file_size(a));
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Csv, UnwritablePathNamedInError) {
  ResultTable t({{"x", ColumnType::kReal}});
  try {
    write_csv(t, "/nonexistent-dir/out.csv");
    FAIL();
  } catch (const noma::Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}

TEST(Run, OutageMapSchema) {
  const auto s = parse_scenario(R"({"experiment": "Fig4OutageMap", "trials": 2000,
      "grid": {"points": [[1, 0], [2.5, 0]]}})");
  const auto table = run(s);
  const std::vector<std::string> expected{
      "x", "y", "outage_pair_coop", "outage_pair_noncoop", "outage_weak_coop",
      "outage_weak_noncoop", "halfwidth_pair_coop", "halfwidth_pair_noncoop",
      "halfwidth_weak_coop", "halfwidth_weak_noncoop"};
  ASSERT_EQ(table.columns().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(table.columns()[i].name, expected[i]);
  EXPECT_EQ(table.rows().size(), 2u);
}

TEST(Run, MetadataCarriesHashSeedAndDefaults) {
  const auto s = parse_scenario(kFixedConfig);
  const auto csv = render_csv(run(s));
  EXPECT_NE(csv.find("# scenario_hash: " + scenario_hash(s) + "\n"), std::string::npos);
  EXPECT_NE(csv.find("# seed: 5\n"), std::string::npos);
  EXPECT_NE(csv.find("# artifact_version: "), std::string::npos);
  EXPECT_NE(csv.find("# default: pathloss.exponent = 3\n"), std::string::npos);
  EXPECT_NE(csv.find("# default: allocation = a_weak=0.875, a_strong=0.125\n"), std::string::npos);
}

TEST(Run, WorkerCountDoesNotChangeOutput) {
  for (const char* config : {
           kFixedConfig,
           R"({"experiment": "Fig5CrAlloc", "seed": 2, "trials": 9000, "grid": {"points": [[1, 1], [3, 0]]}})",
           R"({"experiment": "Fig4SnrSweep", "seed": 4, "trials": 9000, "geometry": {"strong_user": [2.5, 0]}, "snr_db": [20, 30]})",
           R"({"experiment": "Fig3Scaling", "seed": 4, "trials": 5000, "mimo": {"antennas": [1, 2]}})",
           R"({"experiment": "MustLink", "seed": 4, "trials": 10000, "snr_db": [5], "must": {"far": "QPSK", "near": "QPSK", "power_ratio": 0.8}})"}) {
    const auto s = parse_scenario(config);
    EXPECT_EQ(render_csv(run(s, 1)), render_csv(run(s, 8))) << config;
  }
}

TEST(Run, RejectsZeroWorkers) {
  EXPECT_THROW(run(parse_scenario(kFixedConfig), 0), std::invalid_argument);
}

TEST(Run, FixedAllocationMatchesScalarReevaluation) {
  const auto s = parse_scenario(kFixedConfig);
  const auto table = run(s, 2);
  const double rho = 100.0;
  const double a_weak = 0.875;
  const double a_strong = 0.125;
  const auto gain = [](double x, double y) { return std::pow(std::max(1.0, std::hypot(x, y)), -3.0); };
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    double noma_sum = 0.0;
    double oma_sum = 0.0;
    for (std::uint64_t t = 0; t < s.trials; ++t) {
      noma::CounterRng weak_rng(s.seed, i, t, noma::Link::kBsToWeak);
      noma::CounterRng strong_rng(s.seed, i, t, noma::Link::kBsToStrong);
      const double g_weak = std::norm(weak_rng.complex_gaussian()) * gain(5.0, 0.0);
      const double g_strong = std::norm(strong_rng.complex_gaussian()) * gain(s.grid[i].x, s.grid[i].y);
      noma_sum += std::log2(1.0 + rho * a_weak * g_weak / (1.0 + rho * a_strong * g_weak)) +
                  std::log2(1.0 + rho * a_strong * g_strong);
      oma_sum += 0.5 * std::log2(1.0 + rho * g_weak) + 0.5 * std::log2(1.0 + rho * g_strong);
    }
    const double n = static_cast<double>(s.trials);
    EXPECT_NEAR(table.real(i, "noma_sum"), noma_sum / n, 1e-9);
    EXPECT_NEAR(table.real(i, "oma_sum"), oma_sum / n, 1e-9);
  }
}

TEST(Run, CrAllocationPinsWeakRateWhenFeasible) {
  const auto s = parse_scenario(R"({"experiment": "Fig5CrAlloc", "seed": 1, "trials": 20000,
      "grid": {"points": [[0, 0], [2, 2], [4, -4]]}})");
  const auto table = run(s);
  for (std::size_t i = 0; i < table.rows().size(); ++i) {
    EXPECT_NEAR(table.real(i, "rate_weak_given_feasible"), 0.5, 1e-6);
    const double p = table.real(i, "primary_outage_prob");
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

TEST(Run, CustomExperimentCombinesOutageAndRates) {
  const auto s = parse_scenario(R"({"experiment": "Custom", "seed": 8, "trials": 4000,
      "geometry": {"weak_user": [4, 0], "strong_user": [1, 1]}, "pathloss": {"exponent": 3},
      "snr_db": [10, 30], "allocation": {"a_weak": 0.8, "a_strong": 0.2},
      "targets": {"weak": 0.5, "strong": 0.5}})");
  const auto table = run(s);
  ASSERT_EQ(table.rows().size(), 2u);
  EXPECT_GT(table.real(0, "outage_pair_noncoop"), table.real(1, "outage_pair_noncoop"));
  EXPECT_LT(table.real(0, "noma_sum"), table.real(1, "noma_sum"));
}

TEST(Run, ModuleErrorsNameTheCoordinate) {
  // a non-finite coordinate makes the path-loss model reject the distance
  Scenario s = parse_scenario(kFixedConfig);
  s.grid = {{1.0, 0.0}, {NAN, 0.0}};
  try {
    run(s);
    FAIL();
  } catch (const noma::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("grid point (nan, 0)"), std::string::npos) << e.what();
  }
}
