#include "noma/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noma/error.hpp"

namespace noma::mimo {
namespace {

constexpr double kCollinearTolerance = 1e-9;

// Component of `v` orthogonal to `basis`, projected twice to recover the
// orthogonality lost to cancellation when v is nearly parallel to basis.
CVector project_out(const CVector& v, const CVector& basis) {
  const double basis_sq = basis.squaredNorm();
  if (basis_sq == 0.0) return v;
  CVector out = v - basis * (basis.dot(v) / basis_sq);
  out -= basis * (basis.dot(out) / basis_sq);
  return out;
}

CVector zf_beam(const CVector& target, const CVector& nulled) {
  const CVector projected = project_out(target, nulled);
  const double norm = projected.norm();
  if (!(norm > kCollinearTolerance * target.norm())) {
    throw DomainError("cluster channels are collinear; zero-forcing is infeasible");
  }
  return projected / norm;
}

}  // namespace

ClusterScenario ClusterScenario::aligned(const CVector& h1, const CVector& h4,
                                         std::complex<double> c, std::complex<double> c_prime) {
  if (h1.size() != h4.size() || h1.size() == 0) {
    throw std::invalid_argument("cluster channel vectors must have equal, non-zero length");
  }
  return {{h1, c_prime * h4, c * h1, h4}, c, c_prime};
}

ClusterScenario draw_cluster_scenario(CounterRng& rng, int antennas, std::complex<double> c,
                                      std::complex<double> c_prime) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be >= 1");
  CVector h1(antennas);
  CVector h4(antennas);
  for (auto& v : h1) v = rng.complex_gaussian();
  for (auto& v : h4) v = rng.complex_gaussian();
  return ClusterScenario::aligned(h1, h4, c, c_prime);
}

BeamSet zf_cluster_beams(const ClusterScenario& scenario) {
  const auto& h = scenario.channels;
  return {{zf_beam(h[0], h[3]), zf_beam(h[3], h[0])}};
}

std::array<double, 4> cluster_noma_rates(const ClusterScenario& scenario, const BeamSet& beams,
                                         const rates::PowerAllocation& alloc, double rho) {
  std::array<double, 4> out{};
  for (int m = 0; m < 2; ++m) {
    const auto& beam = beams.beams[m];
    const auto& other = beams.beams[1 - m];
    const auto [u, v] = kClusters[m];
    const double gain_u = std::norm(beam.dot(scenario.channels[u]));
    const double gain_v = std::norm(beam.dot(scenario.channels[v]));
    const int weak = gain_u <= gain_v ? u : v;
    const int strong = weak == u ? v : u;
    const double g_weak = std::min(gain_u, gain_v);
    const double g_strong = std::max(gain_u, gain_v);
    const double leak_weak = rho * std::norm(other.dot(scenario.channels[weak]));
    const double leak_strong = rho * std::norm(other.dot(scenario.channels[strong]));

    const double sinr_weak =
        rho * alloc.a_weak() * g_weak / (1.0 + rho * alloc.a_strong() * g_weak + leak_weak);
    const double sinr_strong = rho * alloc.a_strong() * g_strong / (1.0 + leak_strong);
    out[weak] = std::log2(1.0 + sinr_weak);
    out[strong] = std::log2(1.0 + sinr_strong);
  }
  return out;
}

void SmConfig::validate() const {
  if (antennas < 1) throw std::invalid_argument("antenna count must be >= 1");
  if (!(power_strong > 0.0) || !(power_weak > 0.0)) {
    throw std::invalid_argument("user powers must be positive");
  }
  if (!(weak_gain_scale > 0.0) || weak_gain_scale > 1.0) {
    throw std::invalid_argument("weak gain scale must lie in (0, 1]");
  }
}

double log2det_hpd(const CMatrix& matrix) {
  const Eigen::LLT<CMatrix> llt(matrix);
  if (llt.info() != Eigen::Success) {
    throw DomainError("matrix is not Hermitian positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().real().array().log2().sum();
}

SmRates sm_rates(const SmConfig& config, const channel::MimoChannel& h_strong,
                 const channel::MimoChannel& h_weak) {
  const Eigen::Index m = config.antennas;
  for (const auto* h : {&h_strong, &h_weak}) {
    if (h->matrix.rows() != m || h->matrix.cols() != m) {
      throw DomainError("channel dimensions do not match the configured antenna count");
    }
  }
  const double per_antenna_strong = config.power_strong / static_cast<double>(m);
  const double per_antenna_weak = config.power_weak / static_cast<double>(m);
  const CMatrix eye = CMatrix::Identity(m, m);
  const CMatrix gram_strong = h_strong.matrix * h_strong.matrix.adjoint();
  const CMatrix gram_weak = h_weak.matrix * h_weak.matrix.adjoint();

  const double strong_alone = log2det_hpd(eye + per_antenna_strong * gram_strong);
  const double weak_alone = log2det_hpd(eye + per_antenna_weak * gram_weak);
  // det(I + Pw HH^H (I + Ps HH^H)^-1) = det(I + (Ps + Pw) HH^H) / det(I + Ps HH^H)
  const double weak_with_interference =
      log2det_hpd(eye + (per_antenna_strong + per_antenna_weak) * gram_weak) -
      log2det_hpd(eye + per_antenna_strong * gram_weak);

  return {{weak_with_interference, strong_alone}, {0.5 * weak_alone, 0.5 * strong_alone}};
}

SmErgodicRates& SmErgodicRates::operator+=(const SmErgodicRates& other) noexcept {
  noma_weak += other.noma_weak;
  noma_strong += other.noma_strong;
  noma_sum += other.noma_sum;
  oma_weak += other.oma_weak;
  oma_strong += other.oma_strong;
  oma_sum += other.oma_sum;
  return *this;
}

SmErgodicRates ergodic_sm_rates(const SmConfig& config, std::uint64_t trials, std::uint64_t seed,
                                std::uint64_t stream, unsigned workers) {
  config.validate();
  if (trials == 0) throw DomainError("ergodic rates need at least one trial");
  return run_sharded<SmErgodicRates>(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    SmErgodicRates acc;
    for (std::uint64_t t = begin; t < end; ++t) {
      CounterRng strong_rng(seed, stream, t, Link::kMimoStrong);
      CounterRng weak_rng(seed, stream, t, Link::kMimoWeak);
      const auto h_strong = channel::draw_mimo_channel(strong_rng, config.antennas, 1.0);
      const auto h_weak =
          channel::draw_mimo_channel(weak_rng, config.antennas, config.weak_gain_scale);
      const auto r = sm_rates(config, h_strong, h_weak);
      acc.noma_weak.add(r.noma.rate_weak);
      acc.noma_strong.add(r.noma.rate_strong);
      acc.noma_sum.add(rates::sum_rate(r.noma));
      acc.oma_weak.add(r.oma.rate_weak);
      acc.oma_strong.add(r.oma.rate_strong);
      acc.oma_sum.add(rates::sum_rate(r.oma));
    }
    return acc;
  });
}

}  // namespace noma::mimo
