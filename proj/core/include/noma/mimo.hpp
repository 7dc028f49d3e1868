#pragma once

#include <array>
#include <complex>
#include <Eigen/Dense>

#include "noma/channel.hpp"
#include "noma/monte_carlo.hpp"
#include "noma/random.hpp"
#include "noma/rates.hpp"

namespace noma::mimo {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Four single-antenna users in two clusters: users {1, 3} share beam 1 and
/// users {2, 4} share beam 2. Inside a cluster the channels are aligned:
/// h3 = c * h1 and h2 = c' * h4. channels[k] holds h_{k+1}.
struct ClusterScenario {
  std::array<CVector, 4> channels;
  std::complex<double> c;
  std::complex<double> c_prime;

  static ClusterScenario aligned(const CVector& h1, const CVector& h4, std::complex<double> c,
                                 std::complex<double> c_prime);

  Eigen::Index antennas() const noexcept { return channels[0].size(); }
};

/// Users (0-based channel indices) served by each beam.
inline constexpr std::array<std::array<int, 2>, 2> kClusters{{{0, 2}, {1, 3}}};

/// Random aligned scenario: h1, h4 ~ CN(0, I_M).
ClusterScenario draw_cluster_scenario(CounterRng& rng, int antennas, std::complex<double> c,
                                      std::complex<double> c_prime);

struct BeamSet {
  std::array<CVector, 2> beams;
};

/// Unit-norm zero-forcing beams: w1 is h1 projected onto the orthogonal
/// complement of h4, and w2 is h4 projected away from h1. Throws DomainError
/// when the two clusters are numerically collinear.
BeamSet zf_cluster_beams(const ClusterScenario& scenario);

/// Per-user rates (index k is user k+1) when each beam carries transmit SNR rho
/// split as `alloc` between its weak and strong user. The weak user of a cluster
/// is the one with the smaller effective gain |w^H h|^2; residual inter-cluster
/// leakage is treated as noise.
std::array<double, 4> cluster_noma_rates(const ClusterScenario& scenario, const BeamSet& beams,
                                         const rates::PowerAllocation& alloc, double rho);

/// NOMA with spatial multiplexing: M antennas at the BS and at each user,
/// white input covariance.
struct SmConfig {
  int antennas = 1;
  double power_strong = 1.0;
  double power_weak = 1.0;
  double weak_gain_scale = 1.0;

  void validate() const;
};

struct SmRates {
  rates::RatePair noma;
  rates::RatePair oma;
};

/// log2 det of a Hermitian positive-definite matrix (Cholesky).
double log2det_hpd(const CMatrix& matrix);

/// NOMA: the strong user decodes after SIC, the weak user treats the strong
/// user's streams as noise. OMA: equal TDMA slots, so each single-user MIMO rate is halved.
SmRates sm_rates(const SmConfig& config, const channel::MimoChannel& h_strong,
                 const channel::MimoChannel& h_weak);

/// Ergodic (channel-averaged) NOMA-SM and TDMA rates.
struct SmErgodicRates {
  MeanAccumulator noma_weak;
  MeanAccumulator noma_strong;
  MeanAccumulator noma_sum;
  MeanAccumulator oma_weak;
  MeanAccumulator oma_strong;
  MeanAccumulator oma_sum;

  SmErgodicRates& operator+=(const SmErgodicRates& other) noexcept;
};

/// Averages sm_rates over `trials` draws of H_strong ~ CN(0, 1) and
/// H_weak ~ CN(0, weak_gain_scale) from substream `stream`.
SmErgodicRates ergodic_sm_rates(const SmConfig& config, std::uint64_t trials, std::uint64_t seed,
                                std::uint64_t stream, unsigned workers = 1);

}  // namespace noma::mimo
