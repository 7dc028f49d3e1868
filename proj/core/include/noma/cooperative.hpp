#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "noma/channel.hpp"
#include "noma/rates.hpp"

namespace noma::coop {

using channel::ChannelRealization;
using channel::PathLossModel;
using channel::Position;
using rates::PowerAllocation;
using rates::TargetRates;

/// Channels of one two-user trial: BS to User A (weak), BS to User B (strong)
/// and the B -> A inter-user link used in the relaying phase.
struct CooperativeTrial {
  ChannelRealization bs_to_weak;
  ChannelRealization bs_to_strong;
  ChannelRealization strong_to_weak;
  double rho = 0.0;
};

struct PairOutcome {
  bool weak = false;
  bool strong = false;
  bool pair = false;

  friend bool operator==(const PairOutcome&, const PairOutcome&) = default;
};

/// Single-phase NOMA; pair = weak || strong.
PairOutcome noncooperative_outcome(const CooperativeTrial& trial, const PowerAllocation& alloc,
                                   const TargetRates& targets);

/// Two equal-length phases, so each phase must carry twice the target rate.
/// Phase 1: BS broadcast, SIC at User B. Phase 2: on SIC success User B forwards
/// User A's message at full power; User A combines both copies (MRC).
PairOutcome cooperative_outcome(const CooperativeTrial& trial, const PowerAllocation& alloc,
                                const TargetRates& targets);

/// Monte Carlo outage probability with a 95% half-width. A zero count
/// reports the rule-of-three half-width 3/N.
struct OutageEstimate {
  double probability = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t outages = 0;
  double half_width = 0.0;

  static OutageEstimate from_counts(std::uint64_t outages, std::uint64_t trials);
};

/// Everything needed to simulate the two-user link at one geometry.
struct Scenario {
  Position bs{};
  Position weak_user{};
  Position strong_user{};
  PathLossModel pathloss{3.0, 1.0};
  double rho = 1.0;
  PowerAllocation alloc = PowerAllocation::fixed(0.5, 0.5);
  TargetRates targets{};
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool relay_enabled = true;
};

enum class Mode { kCooperative, kNonCooperative };
enum class Metric { kPair, kWeakUser };

/// Outage counts of both schemes evaluated on the same channel draws.
struct OutageCounts {
  std::uint64_t trials = 0;
  std::uint64_t weak_noncoop = 0;
  std::uint64_t pair_noncoop = 0;
  std::uint64_t weak_coop = 0;
  std::uint64_t pair_coop = 0;

  OutageCounts& operator+=(const OutageCounts& other) noexcept;
  OutageEstimate estimate(Mode mode, Metric metric) const;
};

/// Draws trial `trial` of substream `stream` with User B at `strong_user`.
CooperativeTrial draw_trial(const Scenario& scenario, const Position& strong_user, double rho,
                            std::uint64_t stream, std::uint64_t trial);

/// Runs scenario.trials trials on substream `stream`.
OutageCounts simulate(const Scenario& scenario, const Position& strong_user, double rho,
                      std::uint64_t stream, unsigned workers = 1);

struct MapPoint {
  Position strong_user;
  OutageEstimate estimate;
};

/// Counts at every User B position; grid point i uses substream i.
std::vector<OutageCounts> outage_map_counts(const Scenario& scenario,
                                            std::span<const Position> grid, unsigned workers = 1);

std::vector<MapPoint> outage_map(const Scenario& scenario, std::span<const Position> grid,
                                 Mode mode, Metric metric, unsigned workers = 1);

/// Counts at User B = scenario.strong_user for each transmit SNR; sweep point i uses substream i.
std::vector<OutageCounts> outage_sweep(const Scenario& scenario, std::span<const double> rho_grid,
                                       unsigned workers = 1);

/// Estimates usable for the log-log fit lie in (min_events / N, max_probability).
struct FitWindow {
  double min_events = 10.0;
  double max_probability = 0.1;
};

/// Negated least-squares slope of log10(outage) against log10(rho).
/// Throws DomainError when the grid spans < 15 dB or an estimate leaves the window.
double fit_diversity_slope(std::span<const double> snr_grid_db,
                           std::span<const OutageEstimate> estimates, FitWindow window = {});

/// Weak-user diversity order of `mode` over snr_grid_db.
double diversity_slope(const Scenario& scenario, std::span<const double> snr_grid_db, Mode mode,
                       unsigned workers = 1, FitWindow window = {});

}  // namespace noma::coop
