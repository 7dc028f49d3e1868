#pragma once

#include <cstdint>
#include <string_view>

#include "noma/cooperative.hpp"
#include "noma/monte_carlo.hpp"
#include "noma/result_table.hpp"
#include "noma/scenario.hpp"

namespace noma::harness {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// Ergodic two-user rates at one User B position.
struct TwoUserErgodic {
  MeanAccumulator noma_weak;
  MeanAccumulator noma_strong;
  MeanAccumulator noma_sum;
  MeanAccumulator oma_weak;
  MeanAccumulator oma_strong;
  MeanAccumulator oma_sum;
  MeanAccumulator a_weak;
  /// User A rate over trials where the QoS target was reachable.
  MeanAccumulator weak_when_feasible;
  std::uint64_t primary_outages = 0;

  TwoUserErgodic& operator+=(const TwoUserErgodic& other) noexcept;
};

/// Averages OMA and NOMA rates over scenario.trials draws of (h_A, h_B) on
/// substream `stream`. The allocation is fixed or recomputed per trial from
/// the QoS target, depending on scenario.allocation.
TwoUserErgodic ergodic_two_user(const Scenario& scenario, const Position& strong_user, double rho,
                                std::uint64_t stream, unsigned workers = 1);

/// Link-level view of a scalar scenario for the cooperative module.
coop::Scenario to_coop_scenario(const Scenario& scenario);

/// Runs the experiment pipeline. The table content does not depend on
/// `workers`. Module errors are rethrown as DomainError prefixed with the
/// grid or sweep coordinate where they occurred.
ResultTable run(const Scenario& scenario, unsigned workers = 1);

}  // namespace noma::harness
