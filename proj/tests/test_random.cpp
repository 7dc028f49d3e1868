#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "noma/random.hpp"

using noma::CounterRng;
using noma::Link;
using noma::Philox4x32;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                        {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(CounterRng, SameCoordinatesGiveSameStream) {
  CounterRng a(42, 3, 1000, Link::kBsToWeak);
  CounterRng b(42, 3, 1000, Link::kBsToWeak);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(a.complex_gaussian(), b.complex_gaussian());
}

TEST(CounterRng, EachCoordinateSelectsDistinctStream) {
  std::set<std::uint32_t> first_words;
  const auto word = [](CounterRng rng) { return rng.next_block()[0]; };
  first_words.insert(word(CounterRng(1, 0, 0, Link::kBsToWeak)));
  first_words.insert(word(CounterRng(2, 0, 0, Link::kBsToWeak)));
  first_words.insert(word(CounterRng(1, 1, 0, Link::kBsToWeak)));
  first_words.insert(word(CounterRng(1, 0, 1, Link::kBsToWeak)));
  first_words.insert(word(CounterRng(1, 0, 0, Link::kBsToStrong)));
  first_words.insert(word(CounterRng(1, 0, std::uint64_t{1} << 32, Link::kBsToWeak)));
  EXPECT_EQ(first_words.size(), 6u);
}

TEST(CounterRng, UniformStaysInsideOpenInterval) {
  CounterRng rng(7, 0, 0, Link::kSymbols);
  double sum = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // mean 1/2, variance 1/12
  EXPECT_NEAR(sum / kDraws, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / kDraws));
}

TEST(CounterRng, ComplexGaussianMoments) {
  CounterRng rng(11, 0, 0, Link::kNoise);
  constexpr int kDraws = 400000;
  std::complex<double> mean{};
  double power = 0.0;
  double power_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto z = rng.complex_gaussian();
    mean += z;
    power += std::norm(z);
    power_sq += std::norm(z) * std::norm(z);
  }
  mean /= kDraws;
  power /= kDraws;
  power_sq /= kDraws;
  const double se = 1.0 / std::sqrt(kDraws);
  EXPECT_NEAR(mean.real(), 0.0, 5.0 * se * std::sqrt(0.5));
  EXPECT_NEAR(mean.imag(), 0.0, 5.0 * se * std::sqrt(0.5));
  // |z|^2 ~ Exp(1): mean 1, second moment 2
  EXPECT_NEAR(power, 1.0, 5.0 * se);
  EXPECT_NEAR(power_sq, 2.0, 5.0 * se * std::sqrt(20.0));
}

TEST(CounterRng, BitsReturnsRequestedWidth) {
  CounterRng rng(5, 0, 0, Link::kSymbols);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.bits(4), 16u);
}
