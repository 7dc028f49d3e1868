#include "noma/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "noma/error.hpp"
#include "noma/mimo.hpp"
#include "noma/must.hpp"
#include "noma/random.hpp"

namespace noma::harness {
namespace {

using coop::Metric;
using coop::Mode;

std::string coordinate(const Position& p) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "(%.6g, %.6g)", p.x, p.y);
  return buffer;
}

std::string snr_label(double db) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g dB", db);
  return buffer;
}

template <class F>
auto at_coordinate(const std::string& where, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw DomainError("at " + where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DomainError("at " + where + ": " + e.what());
  }
}

std::vector<Column> real_columns(std::initializer_list<const char*> names) {
  std::vector<Column> out;
  for (const char* n : names) out.push_back({n, ColumnType::kReal});
  return out;
}

void append_outage_columns(std::vector<Column>& columns) {
  for (const char* n : {"outage_pair_coop", "outage_pair_noncoop", "outage_weak_coop",
                        "outage_weak_noncoop", "halfwidth_pair_coop", "halfwidth_pair_noncoop",
                        "halfwidth_weak_coop", "halfwidth_weak_noncoop"}) {
    columns.push_back({n, ColumnType::kReal});
  }
}

void append_outage_cells(std::vector<Cell>& row, const coop::OutageCounts& counts) {
  const coop::OutageEstimate estimates[] = {
      counts.estimate(Mode::kCooperative, Metric::kPair),
      counts.estimate(Mode::kNonCooperative, Metric::kPair),
      counts.estimate(Mode::kCooperative, Metric::kWeakUser),
      counts.estimate(Mode::kNonCooperative, Metric::kWeakUser)};
  for (const auto& e : estimates) row.emplace_back(e.probability);
  for (const auto& e : estimates) row.emplace_back(e.half_width);
}

ResultTable start_table(const Scenario& scenario, std::vector<Column> columns) {
  ResultTable table(std::move(columns));
  table.add_metadata("experiment", std::string(to_string(scenario.experiment)));
  table.add_metadata("artifact_version", std::string(kArtifactVersion));
  table.add_metadata("scenario_hash", scenario_hash(scenario));
  table.add_metadata("seed", std::to_string(scenario.seed));
  table.add_metadata("trials", std::to_string(scenario.trials));
  for (const auto& d : scenario.defaults) table.add_metadata("default", d.field + " = " + d.value);
  return table;
}

ResultTable run_outage_map(const Scenario& scenario, unsigned workers) {
  std::vector<Column> columns = real_columns({"x", "y"});
  append_outage_columns(columns);
  ResultTable table = start_table(scenario, std::move(columns));
  const auto link = to_coop_scenario(scenario);
  for (std::size_t i = 0; i < scenario.grid.size(); ++i) {
    const auto& p = scenario.grid[i];
    const auto counts = at_coordinate("grid point " + coordinate(p), [&] {
      return coop::simulate(link, p, link.rho, i, workers);
    });
    std::vector<Cell> row{p.x, p.y};
    append_outage_cells(row, counts);
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_snr_sweep(const Scenario& scenario, unsigned workers) {
  std::vector<Column> columns = real_columns({"snr_db"});
  append_outage_columns(columns);
  ResultTable table = start_table(scenario, std::move(columns));
  const auto link = to_coop_scenario(scenario);
  for (std::size_t i = 0; i < scenario.rho.size(); ++i) {
    const auto counts = at_coordinate("SNR " + snr_label(scenario.snr_db[i]), [&] {
      return coop::simulate(link, link.strong_user, scenario.rho[i], i, workers);
    });
    std::vector<Cell> row{scenario.snr_db[i]};
    append_outage_cells(row, counts);
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_fig5(const Scenario& scenario, unsigned workers) {
  const bool cr = std::holds_alternative<CrTarget>(*scenario.allocation);
  std::vector<Column> columns = real_columns(
      {"x", "y", "noma_rate_weak", "noma_rate_strong", "noma_sum", "oma_rate_weak",
       "oma_rate_strong", "oma_sum", "halfwidth_noma_sum", "halfwidth_oma_sum", "mean_gain_weak",
       "mean_gain_strong"});
  if (cr) {
    for (const char* n : {"primary_outage_prob", "rate_weak_given_feasible", "mean_a_weak"}) {
      columns.push_back({n, ColumnType::kReal});
    }
  }
  ResultTable table = start_table(scenario, std::move(columns));
  const double mean_gain_weak = channel::path_loss(
      scenario.pathloss, channel::distance(scenario.weak_user, scenario.bs));
  for (std::size_t i = 0; i < scenario.grid.size(); ++i) {
    const auto& p = scenario.grid[i];
    const auto acc = at_coordinate("grid point " + coordinate(p), [&] {
      return ergodic_two_user(scenario, p, scenario.rho.front(), i, workers);
    });
    std::vector<Cell> row{p.x,
                          p.y,
                          acc.noma_weak.mean(),
                          acc.noma_strong.mean(),
                          acc.noma_sum.mean(),
                          acc.oma_weak.mean(),
                          acc.oma_strong.mean(),
                          acc.oma_sum.mean(),
                          acc.noma_sum.half_width(),
                          acc.oma_sum.half_width(),
                          mean_gain_weak,
                          channel::path_loss(scenario.pathloss, channel::distance(p, scenario.bs))};
    if (cr) {
      row.emplace_back(static_cast<double>(acc.primary_outages) /
                       static_cast<double>(acc.noma_sum.count));
      row.emplace_back(acc.weak_when_feasible.mean());
      row.emplace_back(acc.a_weak.mean());
    }
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_custom(const Scenario& scenario, unsigned workers) {
  std::vector<Column> columns = real_columns({"snr_db"});
  append_outage_columns(columns);
  for (const char* n : {"noma_rate_weak", "noma_rate_strong", "noma_sum", "oma_sum",
                        "halfwidth_noma_sum", "halfwidth_oma_sum"}) {
    columns.push_back({n, ColumnType::kReal});
  }
  ResultTable table = start_table(scenario, std::move(columns));
  const auto link = to_coop_scenario(scenario);
  for (std::size_t i = 0; i < scenario.rho.size(); ++i) {
    at_coordinate("SNR " + snr_label(scenario.snr_db[i]), [&] {
      const auto counts = coop::simulate(link, link.strong_user, scenario.rho[i], i, workers);
      const auto acc = ergodic_two_user(scenario, link.strong_user, scenario.rho[i], i, workers);
      std::vector<Cell> row{scenario.snr_db[i]};
      append_outage_cells(row, counts);
      for (double v : {acc.noma_weak.mean(), acc.noma_strong.mean(), acc.noma_sum.mean(),
                       acc.oma_sum.mean(), acc.noma_sum.half_width(), acc.oma_sum.half_width()}) {
        row.emplace_back(v);
      }
      table.add_row(std::move(row));
      return 0;
    });
  }
  return table;
}

ResultTable run_scaling(const Scenario& scenario, unsigned workers) {
  ResultTable table = start_table(
      scenario, {{"antennas", ColumnType::kInteger},
                 {"noma_rate_strong", ColumnType::kReal},
                 {"noma_rate_weak", ColumnType::kReal},
                 {"noma_sum", ColumnType::kReal},
                 {"oma_rate_strong", ColumnType::kReal},
                 {"oma_rate_weak", ColumnType::kReal},
                 {"oma_sum", ColumnType::kReal},
                 {"halfwidth_noma_sum", ColumnType::kReal},
                 {"halfwidth_oma_sum", ColumnType::kReal}});
  const auto& spec = *scenario.mimo;
  for (std::size_t i = 0; i < spec.antennas.size(); ++i) {
    const int m = spec.antennas[i];
    const mimo::SmConfig config{m, spec.power_strong, spec.power_weak, spec.weak_gain_scale};
    const auto acc = at_coordinate("M = " + std::to_string(m), [&] {
      return mimo::ergodic_sm_rates(config, scenario.trials, scenario.seed, i, workers);
    });
    table.add_row({std::int64_t{m}, acc.noma_strong.mean(), acc.noma_weak.mean(),
                   acc.noma_sum.mean(), acc.oma_strong.mean(), acc.oma_weak.mean(),
                   acc.oma_sum.mean(), acc.noma_sum.half_width(), acc.oma_sum.half_width()});
  }
  return table;
}

ResultTable run_must(const Scenario& scenario, unsigned workers) {
  ResultTable table = start_table(scenario, {{"snr_db", ColumnType::kReal},
                                             {"category", ColumnType::kText},
                                             {"ber_far", ColumnType::kReal},
                                             {"ber_near", ColumnType::kReal},
                                             {"goodput_far", ColumnType::kReal},
                                             {"goodput_near", ColumnType::kReal},
                                             {"goodput_sum", ColumnType::kReal},
                                             {"oma_ber_far", ColumnType::kReal},
                                             {"oma_ber_near", ColumnType::kReal},
                                             {"oma_goodput_sum", ColumnType::kReal}});
  const auto& spec = *scenario.must;
  const must::LinkExperiment experiment{spec.far,           spec.near,       spec.power_ratio,
                                        spec.categories,    scenario.snr_db, scenario.trials,
                                        scenario.seed};
  const auto rows = at_coordinate("MUST link experiment", [&] {
    return must::link_gain_experiment(experiment, workers);
  });
  for (const auto& r : rows) {
    table.add_row({r.snr_db, std::string(must::to_string(r.category)), r.ber_far, r.ber_near,
                   r.goodput_far, r.goodput_near, r.goodput_sum, r.oma_ber_far, r.oma_ber_near,
                   r.oma_goodput_sum});
  }
  return table;
}

}  // namespace

TwoUserErgodic& TwoUserErgodic::operator+=(const TwoUserErgodic& other) noexcept {
  noma_weak += other.noma_weak;
  noma_strong += other.noma_strong;
  noma_sum += other.noma_sum;
  oma_weak += other.oma_weak;
  oma_strong += other.oma_strong;
  oma_sum += other.oma_sum;
  a_weak += other.a_weak;
  weak_when_feasible += other.weak_when_feasible;
  primary_outages += other.primary_outages;
  return *this;
}

TwoUserErgodic ergodic_two_user(const Scenario& scenario, const Position& strong_user, double rho,
                                std::uint64_t stream, unsigned workers) {
  if (!scenario.allocation) throw DomainError("ergodic rates need an allocation");
  const auto& spec = *scenario.allocation;
  return run_sharded<TwoUserErgodic>(
      scenario.trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
        TwoUserErgodic acc;
        for (std::uint64_t t = begin; t < end; ++t) {
          CounterRng weak_rng(scenario.seed, stream, t, Link::kBsToWeak);
          CounterRng strong_rng(scenario.seed, stream, t, Link::kBsToStrong);
          const auto h_weak = channel::draw_scalar_channel(weak_rng, scenario.pathloss,
                                                           scenario.weak_user, scenario.bs);
          const auto h_strong =
              channel::draw_scalar_channel(strong_rng, scenario.pathloss, strong_user, scenario.bs);
          const rates::LinkBudget budget{rho, h_weak.gain_sq, h_strong.gain_sq};

          const auto alloc =
              std::visit([&](const auto& s) -> rates::PowerAllocation {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, FixedSplit>) {
                  return rates::PowerAllocation::fixed(s.a_weak, s.a_strong);
                } else {
                  return rates::cr_power_allocation(budget, s.r_weak);
                }
              }, spec);

          const auto noma = rates::noma_rates(budget, alloc);
          const auto oma = rates::oma_rates(budget);
          acc.noma_weak.add(noma.rate_weak);
          acc.noma_strong.add(noma.rate_strong);
          acc.noma_sum.add(rates::sum_rate(noma));
          acc.oma_weak.add(oma.rate_weak);
          acc.oma_strong.add(oma.rate_strong);
          acc.oma_sum.add(rates::sum_rate(oma));
          acc.a_weak.add(alloc.a_weak());
          if (alloc.primary_outage()) {
            ++acc.primary_outages;
          } else {
            acc.weak_when_feasible.add(noma.rate_weak);
          }
        }
        return acc;
      });
}

coop::Scenario to_coop_scenario(const Scenario& scenario) {
  coop::Scenario link;
  link.bs = scenario.bs;
  link.weak_user = scenario.weak_user;
  link.strong_user = scenario.strong_user.value_or(Position{});
  link.pathloss = scenario.pathloss;
  link.rho = scenario.rho.empty() ? 0.0 : scenario.rho.front();
  if (scenario.allocation) {
    if (const auto* split = std::get_if<FixedSplit>(&*scenario.allocation)) {
      link.alloc = rates::PowerAllocation::fixed(split->a_weak, split->a_strong);
    }
  }
  link.targets = scenario.targets.value_or(rates::TargetRates{});
  link.trials = scenario.trials;
  link.seed = scenario.seed;
  return link;
}

ResultTable run(const Scenario& scenario, unsigned workers) {
  if (workers == 0) throw std::invalid_argument("worker count must be >= 1");
  switch (scenario.experiment) {
    case Experiment::kFig3Scaling: return run_scaling(scenario, workers);
    case Experiment::kFig4OutageMap: return run_outage_map(scenario, workers);
    case Experiment::kFig4SnrSweep: return run_snr_sweep(scenario, workers);
    case Experiment::kFig5FixedAlloc:
    case Experiment::kFig5CrAlloc: return run_fig5(scenario, workers);
    case Experiment::kMustLink: return run_must(scenario, workers);
    case Experiment::kCustom: return run_custom(scenario, workers);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace noma::harness
