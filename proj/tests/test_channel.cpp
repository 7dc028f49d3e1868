#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "noma/channel.hpp"
#include "noma/monte_carlo.hpp"
#include "noma/random.hpp"

namespace ch = noma::channel;
using noma::CounterRng;
using noma::Link;

TEST(PathLoss, CubicAtFiveMetres) {
  EXPECT_DOUBLE_EQ(ch::path_loss({3.0, 1.0}, 5.0), 0.008);
}

TEST(PathLoss, ShortDistanceClampsToBound) {
  EXPECT_DOUBLE_EQ(ch::path_loss({3.0, 1.0}, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(ch::path_loss({3.0, 1.0}, 0.0), 1.0);
}

TEST(PathLoss, SquareLawAtTenMetres) {
  EXPECT_DOUBLE_EQ(ch::path_loss({2.0, 1.0}, 10.0), 0.01);
}

TEST(PathLoss, RejectsBadInputs) {
  EXPECT_THROW(ch::PathLossModel(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ch::PathLossModel(3.0, 0.5), std::invalid_argument);
  EXPECT_THROW(ch::path_loss({3.0, 1.0}, -1.0), std::invalid_argument);
}

TEST(PathLoss, NonIncreasingInDistance) {
  const ch::PathLossModel model{3.5, 2.0};
  double previous = ch::path_loss(model, 0.0);
  for (double d = 0.1; d < 50.0; d += 0.1) {
    const double current = ch::path_loss(model, d);
    EXPECT_LE(current, previous);
    EXPECT_GT(current, 0.0);
    previous = current;
  }
}

TEST(ScalarChannel, MeanGainMatchesPathLoss) {
  const ch::PathLossModel model{3.0, 1.0};
  noma::MeanAccumulator acc;
  for (std::uint64_t t = 0; t < 1'000'000; ++t) {
    CounterRng rng(2024, 0, t, Link::kBsToWeak);
    acc.add(ch::draw_scalar_channel(rng, model, {5.0, 0.0}, {0.0, 0.0}).gain_sq);
  }
  EXPECT_NEAR(acc.mean(), 0.008, 3.0 * acc.standard_error());
}

TEST(ScalarChannel, ReceiverAtBaseStationHasUnitMeanGain) {
  const ch::PathLossModel model{3.0, 1.0};
  noma::MeanAccumulator acc;
  for (std::uint64_t t = 0; t < 200'000; ++t) {
    CounterRng rng(9, 0, t, Link::kBsToStrong);
    acc.add(ch::draw_scalar_channel(rng, model, {1.0, 2.0}, {1.0, 2.0}).gain_sq);
  }
  EXPECT_NEAR(acc.mean(), 1.0, 3.0 * acc.standard_error());
}

TEST(ScalarChannel, Deterministic) {
  const ch::PathLossModel model{3.0, 1.0};
  CounterRng a(77, 4, 123, Link::kStrongToWeak);
  CounterRng b(77, 4, 123, Link::kStrongToWeak);
  const auto x = ch::draw_scalar_channel(a, model, {2.0, 1.0}, {0.0, 0.0});
  const auto y = ch::draw_scalar_channel(b, model, {2.0, 1.0}, {0.0, 0.0});
  EXPECT_EQ(x.gain, y.gain);
  EXPECT_EQ(x.gain_sq, y.gain_sq);
  EXPECT_EQ(x.rx, y.rx);
}

TEST(MimoChannel, FrobeniusMoment) {
  noma::MeanAccumulator acc;
  for (std::uint64_t t = 0; t < 100'000; ++t) {
    CounterRng rng(31, 0, t, Link::kMimoStrong);
    acc.add(ch::draw_mimo_channel(rng, 4, 1.0).matrix.squaredNorm() / 16.0);
  }
  EXPECT_NEAR(acc.mean(), 1.0, 3.0 * acc.standard_error());
}

TEST(MimoChannel, PowerScaleMultipliesEntryVariance) {
  noma::MeanAccumulator acc;
  for (std::uint64_t t = 0; t < 50'000; ++t) {
    CounterRng rng(31, 1, t, Link::kMimoWeak);
    acc.add(ch::draw_mimo_channel(rng, 2, 0.25).matrix.squaredNorm() / 4.0);
  }
  EXPECT_NEAR(acc.mean(), 0.25, 3.0 * acc.standard_error());
}

TEST(MimoChannel, RejectsBadArguments) {
  CounterRng rng(1, 0, 0, Link::kMimoStrong);
  EXPECT_THROW(ch::draw_mimo_channel(rng, 0, 1.0), std::invalid_argument);
  EXPECT_THROW(ch::draw_mimo_channel(rng, 2, 0.0), std::invalid_argument);
}
