#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "noma/mimo.hpp"

namespace noma::test {

/// Per-user rates assembled from raw inner products: each beam carries the weak
/// (share a_w) and strong (share a_s) message at SNR rho. Within a cluster the
/// user with the smaller gain on its own beam decodes directly; the other one
/// removes the weak message first. Cross-beam signal counts as noise.
inline std::array<double, 4> brute_force_cluster_rates(const mimo::ClusterScenario& s,
                                                       const mimo::BeamSet& b, double a_w,
                                                       double a_s, double rho) {
  std::array<double, 4> out{};
  const int cluster_of[4] = {0, 1, 0, 1};
  const int partner[4] = {2, 3, 0, 1};
  for (int k = 0; k < 4; ++k) {
    const int m = cluster_of[k];
    std::complex<double> own(0.0), partner_gain(0.0), cross(0.0);
    for (Eigen::Index i = 0; i < s.antennas(); ++i) {
      own += std::conj(b.beams[m](i)) * s.channels[k](i);
      partner_gain += std::conj(b.beams[m](i)) * s.channels[partner[k]](i);
      cross += std::conj(b.beams[1 - m](i)) * s.channels[k](i);
    }
    const double g = std::norm(own);
    const double g_partner = std::norm(partner_gain);
    const double interference = rho * (a_w + a_s) * std::norm(cross);
    const bool is_weak = g < g_partner || (g == g_partner && k < partner[k]);
    const double sinr = is_weak ? rho * a_w * g / (rho * a_s * g + interference + 1.0)
                                : rho * a_s * g / (interference + 1.0);
    out[k] = std::log2(1.0 + sinr);
  }
  return out;
}

}  // namespace noma::test
