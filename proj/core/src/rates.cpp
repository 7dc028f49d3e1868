#include "noma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noma/error.hpp"

namespace noma::rates {
namespace {

constexpr double kSumTolerance = 1e-12;

bool valid_fraction(double a) { return std::isfinite(a) && a >= 0.0 && a <= 1.0 + kSumTolerance; }

}  // namespace

PowerAllocation PowerAllocation::fixed(double a_weak, double a_strong, bool strict) {
  if (!valid_fraction(a_weak) || !valid_fraction(a_strong)) {
    throw std::invalid_argument("power fractions must lie in [0, 1]");
  }
  if (std::abs(a_weak + a_strong - 1.0) > kSumTolerance) {
    throw std::invalid_argument("power fractions must sum to 1");
  }
  if (strict && a_weak < a_strong) {
    throw std::invalid_argument("strict NOMA policy requires a_weak >= a_strong");
  }
  return {a_weak, a_strong, AllocationSource::kFixed, false};
}

PowerAllocation PowerAllocation::cognitive(double a_weak, bool primary_outage) {
  if (!valid_fraction(a_weak)) {
    throw std::invalid_argument("power fraction must lie in [0, 1]");
  }
  return {a_weak, 1.0 - a_weak, AllocationSource::kCognitiveRadio, primary_outage};
}

void LinkBudget::validate() const {
  for (double v : {rho, h_weak_sq, h_strong_sq}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("link budget fields must be finite and non-negative");
    }
  }
}

double weak_message_sinr(double rho, const PowerAllocation& alloc, double gain_sq) {
  const double x = rho * gain_sq;
  return x * alloc.a_weak() / (1.0 + x * alloc.a_strong());
}

double strong_message_snr(double rho, const PowerAllocation& alloc, double gain_sq) {
  return rho * alloc.a_strong() * gain_sq;
}

RatePair oma_rates(const LinkBudget& budget) {
  budget.validate();
  return {0.5 * std::log2(1.0 + budget.rho * budget.h_weak_sq),
          0.5 * std::log2(1.0 + budget.rho * budget.h_strong_sq)};
}

RatePair noma_rates(const LinkBudget& budget, const PowerAllocation& alloc) {
  budget.validate();
  return {std::log2(1.0 + weak_message_sinr(budget.rho, alloc, budget.h_weak_sq)),
          std::log2(1.0 + strong_message_snr(budget.rho, alloc, budget.h_strong_sq))};
}

HighSnrSumRates high_snr_sum_rates(const LinkBudget& budget) {
  budget.validate();
  const double x_weak = budget.rho * budget.h_weak_sq;
  const double x_strong = budget.rho * budget.h_strong_sq;
  if (!(x_weak > 1.0) || !(x_strong > 1.0)) {
    throw DomainError("high-SNR approximation requires rho*|h|^2 > 1 for both users");
  }
  return {0.5 * std::log2(x_weak) + 0.5 * std::log2(x_strong), std::log2(x_strong)};
}

OutageFlags noma_outage_flags(const LinkBudget& budget, const PowerAllocation& alloc,
                              const TargetRates& targets) {
  budget.validate();
  const double weak_at_weak = std::log2(1.0 + weak_message_sinr(budget.rho, alloc, budget.h_weak_sq));
  const double weak_at_strong =
      std::log2(1.0 + weak_message_sinr(budget.rho, alloc, budget.h_strong_sq));
  const double own_at_strong =
      std::log2(1.0 + strong_message_snr(budget.rho, alloc, budget.h_strong_sq));
  return {weak_at_weak < targets.weak,
          weak_at_strong < targets.weak || own_at_strong < targets.strong};
}

PowerAllocation cr_power_allocation(const LinkBudget& budget, double r_weak) {
  budget.validate();
  if (!(r_weak >= 0.0) || !std::isfinite(r_weak)) {
    throw std::invalid_argument("target rate must be finite and non-negative");
  }
  if (r_weak == 0.0) {
    return PowerAllocation::cognitive(0.0, false);
  }
  const double eps = std::exp2(r_weak) - 1.0;
  const double x = budget.rho * budget.h_weak_sq;
  // Full power reaches log2(1 + x), so the target is feasible iff x >= eps.
  if (!(x >= eps)) {
    return PowerAllocation::cognitive(1.0, true);
  }
  const double a_weak = eps * (x + 1.0) / (x * (1.0 + eps));
  return PowerAllocation::cognitive(std::min(1.0, a_weak), false);
}

double sum_rate(const RatePair& pair) { return pair.rate_weak + pair.rate_strong; }

}  // namespace noma::rates
