#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noma {

/// Trials per shard. Fixed so that per-block partial sums, and therefore the
/// fold order of floating-point accumulators, never depend on the worker count.
inline constexpr std::uint64_t kTrialBlock = 4096;

/// Normal-approximation 95% quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Runs block_fn(begin, end) over [0, trials) in kTrialBlock shards on `workers`
/// threads, then folds the block results in index order with operator+=.
template <class Acc, class BlockFn>
Acc run_sharded(std::uint64_t trials, unsigned workers, BlockFn&& block_fn) {
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Acc> partial(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t begin = b * kTrialBlock;
        partial[b] = block_fn(begin, std::min(trials, begin + kTrialBlock));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(blocks, 1)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

/// Sample mean with a 95% normal-approximation half-width.
struct MeanAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;

  void add(double x) noexcept {
    sum += x;
    sum_sq += x * x;
    ++count;
  }

  MeanAccumulator& operator+=(const MeanAccumulator& other) noexcept {
    sum += other.sum;
    sum_sq += other.sum_sq;
    count += other.count;
    return *this;
  }

  double mean() const noexcept { return count ? sum / static_cast<double>(count) : 0.0; }

  double variance() const noexcept {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  }

  double standard_error() const noexcept {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }

  double half_width() const noexcept { return kZ95 * standard_error(); }
};

}  // namespace noma
