#pragma once

#include <complex>
#include <Eigen/Dense>

#include "noma/random.hpp"

namespace noma::channel {

/// Planar position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

/// Bounded path loss max(bound, d)^(-exponent). With bound >= 1 the
/// attenuation never exceeds unity.
class PathLossModel {
 public:
  PathLossModel(double exponent, double bound = 1.0);

  double exponent() const noexcept { return exponent_; }
  double bound() const noexcept { return bound_; }

 private:
  double exponent_;
  double bound_;
};

double path_loss(const PathLossModel& model, double distance);

/// One scalar fading realization. gain_sq is |gain|^2, cached at construction.
struct ChannelRealization {
  std::complex<double> gain;
  double gain_sq = 0.0;
  Position rx;

  static ChannelRealization from_gain(std::complex<double> gain, Position rx = {});
};

/// Rayleigh-faded link: gain = g * sqrt(path_loss(|rx - bs|)), g ~ CN(0, 1).
ChannelRealization draw_scalar_channel(CounterRng& rng, const PathLossModel& model,
                                       const Position& rx, const Position& bs);

/// Square M x M channel matrix.
struct MimoChannel {
  Eigen::MatrixXcd matrix;

  Eigen::Index antennas() const noexcept { return matrix.rows(); }
};

/// i.i.d. CN(0, power_scale) entries, filled column-major from the stream.
MimoChannel draw_mimo_channel(CounterRng& rng, int antennas, double power_scale);

}  // namespace noma::channel
