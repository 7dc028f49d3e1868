#pragma once

// Two-user downlink rate calculus: OMA and NOMA with SIC, high-SNR
// approximations, outage predicates, and QoS-driven ("cognitive radio")
// power allocation. All rates are in bits per channel use (BPCU).

namespace noma::rates {

enum class AllocationSource { kFixed, kCognitiveRadio };

/// Power fractions for the weak (User A) and strong (User B) messages,
/// a_weak + a_strong = 1.
class PowerAllocation {
 public:
  /// Fixed split. With strict = true the NOMA ordering a_weak >= a_strong is enforced.
  static PowerAllocation fixed(double a_weak, double a_strong, bool strict = false);

  /// Result of cr_power_allocation; primary_outage marks an unmeetable weak-user target.
  static PowerAllocation cognitive(double a_weak, bool primary_outage);

  double a_weak() const noexcept { return a_weak_; }
  double a_strong() const noexcept { return a_strong_; }
  AllocationSource source() const noexcept { return source_; }
  bool primary_outage() const noexcept { return primary_outage_; }

 private:
  PowerAllocation(double a_weak, double a_strong, AllocationSource source, bool primary_outage)
      : a_weak_(a_weak), a_strong_(a_strong), source_(source), primary_outage_(primary_outage) {}

  double a_weak_;
  double a_strong_;
  AllocationSource source_;
  bool primary_outage_;
};

/// Transmit SNR rho (linear) and the two channel power gains.
struct LinkBudget {
  double rho = 0.0;
  double h_weak_sq = 0.0;
  double h_strong_sq = 0.0;

  /// Throws std::invalid_argument on a negative or non-finite field.
  void validate() const;
  /// True when the role assignment |h_weak|^2 <= |h_strong|^2 holds.
  bool ordered() const noexcept { return h_weak_sq <= h_strong_sq; }
};

struct RatePair {
  double rate_weak = 0.0;
  double rate_strong = 0.0;
};

struct TargetRates {
  double weak = 0.0;
  double strong = 0.0;
};

struct OutageFlags {
  bool weak = false;
  bool strong = false;
};

struct HighSnrSumRates {
  double oma = 0.0;
  double noma = 0.0;
};

/// SINR of the weak user's message seen through channel power gain_sq,
/// with the strong user's message as interference.
double weak_message_sinr(double rho, const PowerAllocation& alloc, double gain_sq);

/// SNR of the strong user's message after its partner has been cancelled.
double strong_message_snr(double rho, const PowerAllocation& alloc, double gain_sq);

/// Equal time-split OMA: each user gets half the channel uses.
RatePair oma_rates(const LinkBudget& budget);

/// NOMA with SIC at the strong user, assuming SIC succeeds.
RatePair noma_rates(const LinkBudget& budget, const PowerAllocation& alloc);

/// log2(rho|h|^2) forms of the sum rates. Throws DomainError unless
/// rho|h_weak|^2 > 1 and rho|h_strong|^2 > 1.
HighSnrSumRates high_snr_sum_rates(const LinkBudget& budget);

/// Outage events of non-cooperative NOMA. The strong user is in outage when
/// either SIC of the weak message or decoding of its own message fails.
OutageFlags noma_outage_flags(const LinkBudget& budget, const PowerAllocation& alloc,
                              const TargetRates& targets);

/// Smallest a_weak meeting the weak-user target r_weak; the remainder goes to the
/// strong user. An infeasible target yields a_weak = 1 with primary_outage() set.
PowerAllocation cr_power_allocation(const LinkBudget& budget, double r_weak);

double sum_rate(const RatePair& pair);

}  // namespace noma::rates
