#include "noma/cooperative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noma/error.hpp"
#include "noma/monte_carlo.hpp"
#include "noma/random.hpp"

namespace noma::coop {

using rates::strong_message_snr;
using rates::weak_message_sinr;

PairOutcome noncooperative_outcome(const CooperativeTrial& trial, const PowerAllocation& alloc,
                                   const TargetRates& targets) {
  const rates::LinkBudget budget{trial.rho, trial.bs_to_weak.gain_sq, trial.bs_to_strong.gain_sq};
  const auto flags = rates::noma_outage_flags(budget, alloc, targets);
  return {flags.weak, flags.strong, flags.weak || flags.strong};
}

PairOutcome cooperative_outcome(const CooperativeTrial& trial, const PowerAllocation& alloc,
                                const TargetRates& targets) {
  const double phase_weak = 2.0 * targets.weak;
  const double phase_strong = 2.0 * targets.strong;
  const double rho = trial.rho;

  const bool sic_ok =
      std::log2(1.0 + weak_message_sinr(rho, alloc, trial.bs_to_strong.gain_sq)) >= phase_weak;
  const bool own_ok =
      std::log2(1.0 + strong_message_snr(rho, alloc, trial.bs_to_strong.gain_sq)) >= phase_strong;

  const double direct = weak_message_sinr(rho, alloc, trial.bs_to_weak.gain_sq);
  const double relayed = sic_ok ? rho * trial.strong_to_weak.gain_sq : 0.0;
  const bool weak_out = std::log2(1.0 + direct + relayed) < phase_weak;
  const bool strong_out = !sic_ok || !own_ok;
  return {weak_out, strong_out, weak_out || strong_out};
}

OutageEstimate OutageEstimate::from_counts(std::uint64_t outages, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("outage estimate needs at least one trial");
  if (outages > trials) throw std::invalid_argument("outage count exceeds trial count");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(outages) / n;
  const double half = outages == 0 ? 3.0 / n : kZ95 * std::sqrt(p * (1.0 - p) / n);
  return {p, trials, outages, half};
}

OutageCounts& OutageCounts::operator+=(const OutageCounts& other) noexcept {
  trials += other.trials;
  weak_noncoop += other.weak_noncoop;
  pair_noncoop += other.pair_noncoop;
  weak_coop += other.weak_coop;
  pair_coop += other.pair_coop;
  return *this;
}

OutageEstimate OutageCounts::estimate(Mode mode, Metric metric) const {
  const bool coop = mode == Mode::kCooperative;
  const std::uint64_t count = metric == Metric::kPair ? (coop ? pair_coop : pair_noncoop)
                                                      : (coop ? weak_coop : weak_noncoop);
  return OutageEstimate::from_counts(count, trials);
}

CooperativeTrial draw_trial(const Scenario& scenario, const Position& strong_user, double rho,
                            std::uint64_t stream, std::uint64_t trial) {
  CounterRng weak_rng(scenario.seed, stream, trial, Link::kBsToWeak);
  CounterRng strong_rng(scenario.seed, stream, trial, Link::kBsToStrong);
  CounterRng relay_rng(scenario.seed, stream, trial, Link::kStrongToWeak);

  CooperativeTrial out{
      channel::draw_scalar_channel(weak_rng, scenario.pathloss, scenario.weak_user, scenario.bs),
      channel::draw_scalar_channel(strong_rng, scenario.pathloss, strong_user, scenario.bs),
      channel::draw_scalar_channel(relay_rng, scenario.pathloss, scenario.weak_user, strong_user),
      rho};
  if (!scenario.relay_enabled) {
    out.strong_to_weak = ChannelRealization::from_gain(0.0, scenario.weak_user);
  }
  return out;
}

OutageCounts simulate(const Scenario& scenario, const Position& strong_user, double rho,
                      std::uint64_t stream, unsigned workers) {
  if (scenario.trials == 0) throw DomainError("scenario needs at least one trial");
  return run_sharded<OutageCounts>(
      scenario.trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
        OutageCounts counts;
        for (std::uint64_t t = begin; t < end; ++t) {
          const auto trial = draw_trial(scenario, strong_user, rho, stream, t);
          const auto direct = noncooperative_outcome(trial, scenario.alloc, scenario.targets);
          const auto relayed = cooperative_outcome(trial, scenario.alloc, scenario.targets);
          counts.weak_noncoop += direct.weak;
          counts.pair_noncoop += direct.pair;
          counts.weak_coop += relayed.weak;
          counts.pair_coop += relayed.pair;
        }
        counts.trials = end - begin;
        return counts;
      });
}

std::vector<OutageCounts> outage_map_counts(const Scenario& scenario,
                                            std::span<const Position> grid, unsigned workers) {
  if (grid.empty()) throw DomainError("outage map needs a non-empty grid");
  std::vector<OutageCounts> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(simulate(scenario, grid[i], scenario.rho, i, workers));
  }
  return out;
}

std::vector<MapPoint> outage_map(const Scenario& scenario, std::span<const Position> grid,
                                 Mode mode, Metric metric, unsigned workers) {
  const auto counts = outage_map_counts(scenario, grid, workers);
  std::vector<MapPoint> out;
  out.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.push_back({grid[i], counts[i].estimate(mode, metric)});
  }
  return out;
}

std::vector<OutageCounts> outage_sweep(const Scenario& scenario, std::span<const double> rho_grid,
                                       unsigned workers) {
  if (rho_grid.empty()) throw DomainError("SNR sweep needs at least one point");
  std::vector<OutageCounts> out;
  out.reserve(rho_grid.size());
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    out.push_back(simulate(scenario, scenario.strong_user, rho_grid[i], i, workers));
  }
  return out;
}

double fit_diversity_slope(std::span<const double> snr_grid_db,
                           std::span<const OutageEstimate> estimates, FitWindow window) {
  if (snr_grid_db.size() != estimates.size() || snr_grid_db.size() < 2) {
    throw DomainError("diversity fit needs matching SNR and estimate lists of length >= 2");
  }
  const auto [lo, hi] = std::minmax_element(snr_grid_db.begin(), snr_grid_db.end());
  if (*hi - *lo < 15.0) throw DomainError("diversity fit needs an SNR span of at least 15 dB");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& e = estimates[i];
    const double floor = window.min_events / static_cast<double>(e.trials);
    if (!(e.probability > floor) || !(e.probability < window.max_probability)) {
      throw DomainError("outage estimate " + std::to_string(e.probability) + " at " +
                        std::to_string(snr_grid_db[i]) + " dB is outside the fit window");
    }
    const double x = snr_grid_db[i] / 10.0;
    const double y = std::log10(e.probability);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double diversity_slope(const Scenario& scenario, std::span<const double> snr_grid_db, Mode mode,
                       unsigned workers, FitWindow window) {
  std::vector<double> rhos;
  rhos.reserve(snr_grid_db.size());
  for (double db : snr_grid_db) rhos.push_back(std::pow(10.0, db / 10.0));
  const auto counts = outage_sweep(scenario, rhos, workers);
  std::vector<OutageEstimate> estimates;
  estimates.reserve(counts.size());
  for (const auto& c : counts) estimates.push_back(c.estimate(mode, Metric::kWeakUser));
  return fit_diversity_slope(snr_grid_db, estimates, window);
}

}  // namespace noma::coop
