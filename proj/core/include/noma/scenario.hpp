#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noma/channel.hpp"
#include "noma/must.hpp"
#include "noma/rates.hpp"

namespace noma::harness {

using channel::PathLossModel;
using channel::Position;

enum class Experiment {
  kFig3Scaling,
  kFig4OutageMap,
  kFig4SnrSweep,
  kFig5FixedAlloc,
  kFig5CrAlloc,
  kMustLink,
  kCustom,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
const std::vector<Experiment>& all_experiments();
std::string_view describe(Experiment e);

struct FixedSplit {
  double a_weak = 0.0;
  double a_strong = 0.0;
};

/// Weak-user rate target for QoS-driven allocation.
struct CrTarget {
  double r_weak = 0.0;
};

using AllocationSpec = std::variant<FixedSplit, CrTarget>;

struct MimoSpec {
  std::vector<int> antennas;
  double weak_gain_scale = 0.25;
  double power_strong_db = 3.0;
  double power_weak_db = 6.0;
  double power_strong = 0.0;  // linear, derived at parse time
  double power_weak = 0.0;
};

struct MustSpec {
  must::Modulation far = must::Modulation::kQpsk;
  must::Modulation near = must::Modulation::kQpsk;
  double power_ratio = 0.8;
  std::vector<must::Category> categories;
};

/// A field value the parser filled in because the config omitted it.
struct AppliedDefault {
  std::string field;
  std::string value;
};

/// Fully validated experiment description. SNRs are kept both in dB (for
/// output labels) and linear (converted once, at parse time).
struct Scenario {
  Experiment experiment = Experiment::kCustom;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  Position bs{};
  Position weak_user{};
  std::optional<Position> strong_user;
  PathLossModel pathloss{3.0, 1.0};
  std::vector<double> snr_db;
  std::vector<double> rho;
  std::optional<AllocationSpec> allocation;
  std::optional<rates::TargetRates> targets;
  std::vector<Position> grid;
  std::optional<MimoSpec> mimo;
  std::optional<MustSpec> must;
  std::vector<AppliedDefault> defaults;
};

/// Parses and validates a JSON config document. Throws ParseError (with line
/// and column) on malformed text and ValidationError naming the offending field.
Scenario parse_scenario(std::string_view text);

/// Replaces the seed (CLI override) and records nothing else.
Scenario with_seed(Scenario scenario, std::uint64_t seed);

/// Canonical JSON of every semantically meaningful field; key order is fixed,
/// so it does not depend on the ordering in the source document.
std::string canonical_json(const Scenario& scenario);

/// FNV-1a 64 of canonical_json, rendered as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

}  // namespace noma::harness
