#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma::channel {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

PathLossModel::PathLossModel(double exponent, double bound) : exponent_(exponent), bound_(bound) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("path loss exponent must be positive and finite");
  }
  if (!(bound >= 1.0) || !std::isfinite(bound)) {
    throw std::invalid_argument("path loss bound must be >= 1");
  }
}

double path_loss(const PathLossModel& model, double distance) {
  if (!(distance >= 0.0)) {
    throw std::invalid_argument("distance must be non-negative");
  }
  return std::pow(std::max(model.bound(), distance), -model.exponent());
}

ChannelRealization ChannelRealization::from_gain(std::complex<double> gain, Position rx) {
  return {gain, std::norm(gain), rx};
}

ChannelRealization draw_scalar_channel(CounterRng& rng, const PathLossModel& model,
                                       const Position& rx, const Position& bs) {
  const double amplitude = std::sqrt(path_loss(model, distance(rx, bs)));
  return ChannelRealization::from_gain(rng.complex_gaussian() * amplitude, rx);
}

MimoChannel draw_mimo_channel(CounterRng& rng, int antennas, double power_scale) {
  if (antennas < 1) {
    throw std::invalid_argument("antenna count must be >= 1");
  }
  if (!(power_scale > 0.0)) {
    throw std::invalid_argument("power scale must be positive");
  }
  const double amplitude = std::sqrt(power_scale);
  MimoChannel channel{Eigen::MatrixXcd(antennas, antennas)};
  for (Eigen::Index col = 0; col < antennas; ++col) {
    for (Eigen::Index row = 0; row < antennas; ++row) {
      channel.matrix(row, col) = rng.complex_gaussian() * amplitude;
    }
  }
  return channel;
}

}  // namespace noma::channel
