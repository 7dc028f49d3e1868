#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "noma/error.hpp"
#include "noma/experiments.hpp"
#include "noma/must.hpp"
#include "noma/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw noma::Error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

noma::harness::Scenario load(const std::string& path) {
  return noma::harness::parse_scenario(read_file(path));
}

int report_invalid(const std::string& path, const noma::ParseError& e) {
  std::cerr << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  return kExitInvalid;
}

int report_invalid(const std::string& path, const noma::ValidationError& e) {
  std::cerr << path << ": invalid field " << e.what() << "\n";
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user NOMA link-level simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config and write its CSV");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out,-o", out_path, "Destination CSV")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--workers,-j", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and validate a config");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  auto* list = app.add_subcommand("list-experiments", "List experiment names");

  std::string modulation_far = "QPSK";
  std::string modulation_near = "QPSK";
  double power_ratio = 0.8;
  std::string category = "Cat2";
  auto* constellation =
      app.add_subcommand("constellation", "Print a superposed constellation as CSV");
  constellation->add_option("--far", modulation_far, "QPSK or 16QAM");
  constellation->add_option("--near", modulation_near, "QPSK or 16QAM");
  constellation->add_option("--ratio", power_ratio, "Far-user power share");
  constellation->add_option("--category", category, "Cat1, Cat2 or Cat3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*list) {
      for (const auto e : noma::harness::all_experiments()) {
        std::cout << noma::harness::to_string(e) << "\t" << noma::harness::describe(e) << "\n";
      }
      return kExitOk;
    }

    if (*constellation) {
      const auto far = noma::must::parse_modulation(modulation_far);
      const auto near = noma::must::parse_modulation(modulation_near);
      const auto cat = noma::must::parse_category(category);
      if (!far || !near || !cat) {
        std::cerr << "unknown modulation or category\n";
        return kExitInvalid;
      }
      const auto composite = noma::must::build_composite({*far, *near, power_ratio, *cat});
      noma::must::write_constellation_csv(composite, std::cout);
      return kExitOk;
    }

    try {
      auto scenario = load(config_path);
      if (*validate) {
        std::cout << config_path << ": ok (" << noma::harness::to_string(scenario.experiment)
                  << ", hash " << noma::harness::scenario_hash(scenario) << ")\n";
        for (const auto& d : scenario.defaults) {
          std::cout << "  default " << d.field << " = " << d.value << "\n";
        }
        return kExitOk;
      }
      if (*seed_opt) scenario = noma::harness::with_seed(std::move(scenario), seed);
      const auto table = noma::harness::run(scenario, workers);
      const auto bytes = noma::harness::write_csv(table, out_path);
      std::cerr << "wrote " << table.rows().size() << " rows (" << bytes << " bytes) to "
                << out_path << "\n";
      return kExitOk;
    } catch (const noma::ParseError& e) {
      return report_invalid(config_path, e);
    } catch (const noma::ValidationError& e) {
      return report_invalid(config_path, e);
    }
  } catch (const noma::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *constellation ? kExitInvalid : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
