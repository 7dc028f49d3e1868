#include "noma/must.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "noma/error.hpp"
#include "noma/monte_carlo.hpp"
#include "noma/random.hpp"

namespace noma::must {
namespace {

constexpr double kGridTolerance = 1e-9;
constexpr double kMinDistance = 1e-9;

unsigned label_bit(std::uint32_t label, unsigned k, unsigned width) {
  return (label >> (width - 1 - k)) & 1u;
}

unsigned bits_of(Modulation m) { return m == Modulation::kQpsk ? 2 : 4; }

// Parity of the label bits that drive one axis (even bits: I, odd bits: Q).
unsigned axis_parity(std::uint32_t label, unsigned width, unsigned axis) {
  unsigned parity = 0;
  for (unsigned k = axis; k < width; k += 2) parity ^= label_bit(label, k, width);
  return parity;
}

// Sorted distinct coordinates, merging values closer than the grid tolerance.
std::vector<double> distinct_levels(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> levels;
  for (double v : values) {
    if (levels.empty() || v - levels.back() > kGridTolerance) levels.push_back(v);
  }
  return levels;
}

std::size_t level_index(const std::vector<double>& levels, double v) {
  const auto it = std::lower_bound(levels.begin(), levels.end(), v - kGridTolerance);
  return static_cast<std::size_t>(it - levels.begin());
}

double min_pairwise_distance(std::span<const Symbol> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, std::abs(points[i] - points[j]));
    }
  }
  return best;
}

// Cat3: reflected Gray code over each axis of the composite grid, counted from
// the most positive level so that the leading bit matches the component sign
// convention (0 -> positive). The far user owns the leading bits of each axis.
std::vector<std::uint32_t> grid_gray_labels(std::span<const Symbol> points, unsigned far_bits,
                                            unsigned near_bits) {
  std::vector<double> re, im;
  for (const auto& p : points) {
    re.push_back(p.real());
    im.push_back(p.imag());
  }
  const auto re_levels = distinct_levels(re);
  const auto im_levels = distinct_levels(im);
  const unsigned axis_bits = (far_bits + near_bits) / 2;
  if (re_levels.size() != (1u << axis_bits) || im_levels.size() != (1u << axis_bits)) {
    throw DomainError("composite constellation is not a square grid");
  }

  const unsigned width = far_bits + near_bits;
  std::vector<std::uint32_t> labels;
  labels.reserve(points.size());
  for (const auto& p : points) {
    const std::size_t i_from_top = re_levels.size() - 1 - level_index(re_levels, p.real());
    const std::size_t q_from_top = im_levels.size() - 1 - level_index(im_levels, p.imag());
    const auto gray_i = static_cast<std::uint32_t>(i_from_top ^ (i_from_top >> 1));
    const auto gray_q = static_cast<std::uint32_t>(q_from_top ^ (q_from_top >> 1));

    std::uint32_t label = 0;
    auto put = [&](unsigned position, unsigned bit) { label |= bit << (width - 1 - position); };
    for (unsigned k = 0; k < far_bits / 2; ++k) {
      put(2 * k, (gray_i >> (axis_bits - 1 - k)) & 1u);
      put(2 * k + 1, (gray_q >> (axis_bits - 1 - k)) & 1u);
    }
    for (unsigned k = 0; k < near_bits / 2; ++k) {
      const unsigned axis_pos = far_bits / 2 + k;
      put(far_bits + 2 * k, (gray_i >> (axis_bits - 1 - axis_pos)) & 1u);
      put(far_bits + 2 * k + 1, (gray_q >> (axis_bits - 1 - axis_pos)) & 1u);
    }
    labels.push_back(label);
  }
  return labels;
}

}  // namespace

LabeledConstellation::LabeledConstellation(std::vector<Symbol> points,
                                           std::vector<std::uint32_t> labels,
                                           unsigned bits_per_symbol)
    : points_(std::move(points)), labels_(std::move(labels)), bits_(bits_per_symbol) {
  if (bits_ == 0 || bits_ > 16) throw std::invalid_argument("label width must be in [1, 16]");
  const std::size_t expected = std::size_t{1} << bits_;
  if (points_.size() != expected || labels_.size() != expected) {
    throw std::invalid_argument("constellation size must equal 2^(label width)");
  }
  by_label_.assign(expected, expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (labels_[i] >= expected || by_label_[labels_[i]] != expected) {
      throw std::invalid_argument("constellation labels must be distinct and in range");
    }
    by_label_[labels_[i]] = i;
  }
  double power = 0.0;
  for (const auto& p : points_) power += std::norm(p);
  average_power_ = power / static_cast<double>(expected);
}

std::string LabeledConstellation::label_string(std::size_t index) const {
  std::string out(bits_, '0');
  for (unsigned k = 0; k < bits_; ++k) {
    if (label_bit(labels_.at(index), k, bits_)) out[k] = '1';
  }
  return out;
}

LabeledConstellation LabeledConstellation::normalized() const {
  const double scale = 1.0 / std::sqrt(average_power_);
  std::vector<Symbol> scaled(points_);
  for (auto& p : scaled) p *= scale;
  return {std::move(scaled), labels_, bits_};
}

std::string_view to_string(Modulation m) { return m == Modulation::kQpsk ? "QPSK" : "16QAM"; }

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kCat1: return "Cat1";
    case Category::kCat2: return "Cat2";
    case Category::kCat3: return "Cat3";
  }
  return "?";
}

std::optional<Modulation> parse_modulation(std::string_view text) {
  if (text == "QPSK") return Modulation::kQpsk;
  if (text == "16QAM") return Modulation::kQam16;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view text) {
  for (auto c : {Category::kCat1, Category::kCat2, Category::kCat3}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

LabeledConstellation gray_constellation(Modulation modulation) {
  const unsigned bits = bits_of(modulation);
  const std::size_t size = std::size_t{1} << bits;
  std::vector<Symbol> points(size);
  std::vector<std::uint32_t> labels(size);
  for (std::uint32_t label = 0; label < size; ++label) {
    labels[label] = label;
    const double sign_i = 1.0 - 2.0 * label_bit(label, 0, bits);
    const double sign_q = 1.0 - 2.0 * label_bit(label, 1, bits);
    if (modulation == Modulation::kQpsk) {
      points[label] = Symbol(sign_i, sign_q) / std::sqrt(2.0);
    } else {
      const double amp_i = 2.0 - (1.0 - 2.0 * label_bit(label, 2, bits));
      const double amp_q = 2.0 - (1.0 - 2.0 * label_bit(label, 3, bits));
      points[label] = Symbol(sign_i * amp_i, sign_q * amp_q) / std::sqrt(10.0);
    }
  }
  return {std::move(points), std::move(labels), bits};
}

LabeledConstellation build_composite(const SuperpositionSpec& spec) {
  const double beta = spec.power_ratio;
  if (!(beta > 0.5) || !(beta < 1.0)) {
    throw DomainError("power ratio must lie in (0.5, 1)");
  }
  const auto far = gray_constellation(spec.far);
  const auto near = gray_constellation(spec.near);
  const unsigned far_bits = far.bits_per_symbol();
  const unsigned near_bits = near.bits_per_symbol();
  const double far_amp = std::sqrt(beta);
  const double near_amp = std::sqrt(1.0 - beta);

  std::vector<Symbol> points;
  std::vector<std::uint32_t> labels;
  for (std::uint32_t f = 0; f < far.size(); ++f) {
    for (std::uint32_t n = 0; n < near.size(); ++n) {
      std::uint32_t near_symbol = n;
      if (spec.category == Category::kCat2) {
        near_symbol ^= axis_parity(f, far_bits, 0) << (near_bits - 1);
        near_symbol ^= axis_parity(f, far_bits, 1) << (near_bits - 2);
      }
      points.push_back(far_amp * far.point_of(f) + near_amp * near.point_of(near_symbol));
      labels.push_back(f << near_bits | n);
    }
  }

  LabeledConstellation composite =
      LabeledConstellation(std::move(points), std::move(labels), far_bits + near_bits).normalized();
  if (min_pairwise_distance(composite.points()) < kMinDistance) {
    throw DomainError("power ratio makes composite constellation points coincide");
  }
  if (spec.category != Category::kCat3) return composite;

  std::vector<Symbol> grid(composite.points().begin(), composite.points().end());
  auto gray_labels = grid_gray_labels(grid, far_bits, near_bits);
  return {std::move(grid), std::move(gray_labels), far_bits + near_bits};
}

GrayCheckResult gray_check(const LabeledConstellation& constellation) {
  const auto points = constellation.points();
  std::vector<double> re, im;
  for (const auto& p : points) {
    re.push_back(p.real());
    im.push_back(p.imag());
  }
  const auto re_levels = distinct_levels(re);
  const auto im_levels = distinct_levels(im);
  const std::size_t cols = re_levels.size();
  const std::size_t rows = im_levels.size();
  if (cols * rows != points.size()) {
    throw DomainError("points do not form a rectangular grid");
  }

  constexpr std::size_t kEmpty = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cell(points.size(), kEmpty);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t c = level_index(re_levels, points[i].real());
    const std::size_t r = level_index(im_levels, points[i].imag());
    if (c >= cols || r >= rows || cell[r * cols + c] != kEmpty) {
      throw DomainError("points do not form a rectangular grid");
    }
    cell[r * cols + c] = i;
  }

  const auto labels = constellation.labels();
  auto differs_by_one = [&](std::size_t a, std::size_t b) {
    return std::popcount(labels[a] ^ labels[b]) == 1;
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t here = cell[r * cols + c];
      if (c + 1 < cols && !differs_by_one(here, cell[r * cols + c + 1])) {
        return {false, std::pair{here, cell[r * cols + c + 1]}};
      }
      if (r + 1 < rows && !differs_by_one(here, cell[(r + 1) * cols + c])) {
        return {false, std::pair{here, cell[(r + 1) * cols + c]}};
      }
    }
  }
  return {true, std::nullopt};
}

std::uint32_t hard_decision(const LabeledConstellation& constellation, Symbol received) {
  const auto points = constellation.points();
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = std::norm(received - points[i]);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return constellation.labels()[best];
}

Demodulated demodulate(const LabeledConstellation& constellation, Symbol received,
                       double noise_var) {
  if (!(noise_var > 0.0)) throw std::invalid_argument("noise variance must be positive");
  const unsigned width = constellation.bits_per_symbol();
  const auto points = constellation.points();
  const auto labels = constellation.labels();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> min_zero(width, kInf);
  std::vector<double> min_one(width, kInf);

  Demodulated out;
  double best = kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = std::norm(received - points[i]);
    if (d < best) {
      best = d;
      out.hard_label = labels[i];
    }
    for (unsigned k = 0; k < width; ++k) {
      auto& slot = label_bit(labels[i], k, width) ? min_one[k] : min_zero[k];
      slot = std::min(slot, d);
    }
  }
  out.llrs.resize(width);
  for (unsigned k = 0; k < width; ++k) out.llrs[k] = (min_one[k] - min_zero[k]) / noise_var;
  return out;
}

namespace {

struct LinkCounts {
  std::array<std::uint64_t, 3> far_errors{};
  std::array<std::uint64_t, 3> near_errors{};
  std::uint64_t oma_far_errors = 0;
  std::uint64_t oma_near_errors = 0;

  LinkCounts& operator+=(const LinkCounts& other) noexcept {
    for (std::size_t c = 0; c < 3; ++c) {
      far_errors[c] += other.far_errors[c];
      near_errors[c] += other.near_errors[c];
    }
    oma_far_errors += other.oma_far_errors;
    oma_near_errors += other.oma_near_errors;
    return *this;
  }
};

}  // namespace

std::vector<LinkGainRow> link_gain_experiment(const LinkExperiment& experiment, unsigned workers) {
  if (experiment.categories.empty() || experiment.categories.size() > 3) {
    throw std::invalid_argument("link experiment needs one to three categories");
  }
  if (experiment.trials < 10'000) {
    throw std::invalid_argument("link experiment needs at least 10^4 trials");
  }

  std::vector<LabeledConstellation> composites;
  for (auto category : experiment.categories) {
    composites.push_back(
        build_composite({experiment.far, experiment.near, experiment.power_ratio, category}));
  }
  const auto far = gray_constellation(experiment.far);
  const auto near = gray_constellation(experiment.near);
  const unsigned far_bits = far.bits_per_symbol();
  const unsigned near_bits = near.bits_per_symbol();
  const std::uint32_t near_mask = (1u << near_bits) - 1;

  // Every category shares one point set; trials draw a point of the first
  // composite and each category reads its own label for that point.
  const auto& reference = composites.front().points();
  std::vector<std::vector<std::uint32_t>> label_at(composites.size());
  for (std::size_t c = 0; c < composites.size(); ++c) {
    for (const auto& p : reference) {
      const auto& pts = composites[c].points();
      const auto it = std::min_element(pts.begin(), pts.end(), [&](const Symbol& a, const Symbol& b) {
        return std::abs(a - p) < std::abs(b - p);
      });
      label_at[c].push_back(composites[c].labels()[static_cast<std::size_t>(it - pts.begin())]);
    }
  }

  std::vector<LinkGainRow> rows;
  for (std::size_t s = 0; s < experiment.snr_db.size(); ++s) {
    const double snr_db = experiment.snr_db[s];
    const double noise_std = std::sqrt(std::pow(10.0, -snr_db / 10.0));

    const auto counts = run_sharded<LinkCounts>(
        experiment.trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
          LinkCounts acc;
          for (std::uint64_t t = begin; t < end; ++t) {
            CounterRng symbols(experiment.seed, s, t, Link::kSymbols);
            CounterRng noise_rng(experiment.seed, s, t, Link::kNoise);
            const std::size_t index = symbols.bits(far_bits + near_bits);
            const Symbol noise = noise_rng.complex_gaussian() * noise_std;
            const Symbol received = reference[index] + noise;

            for (std::size_t c = 0; c < composites.size(); ++c) {
              const std::uint32_t sent = label_at[c][index];
              const std::uint32_t got = hard_decision(composites[c], received);
              acc.far_errors[c] += std::popcount((got ^ sent) >> near_bits);
              acc.near_errors[c] += std::popcount((got ^ sent) & near_mask);
            }
            const std::uint32_t f = label_at[0][index] >> near_bits;
            const std::uint32_t n = label_at[0][index] & near_mask;
            acc.oma_far_errors += std::popcount(hard_decision(far, far.point_of(f) + noise) ^ f);
            acc.oma_near_errors += std::popcount(hard_decision(near, near.point_of(n) + noise) ^ n);
          }
          return acc;
        });

    const double n_trials = static_cast<double>(experiment.trials);
    const double oma_ber_far = counts.oma_far_errors / (n_trials * far_bits);
    const double oma_ber_near = counts.oma_near_errors / (n_trials * near_bits);
    const double oma_goodput =
        0.5 * far_bits * (1.0 - oma_ber_far) + 0.5 * near_bits * (1.0 - oma_ber_near);
    for (std::size_t c = 0; c < composites.size(); ++c) {
      LinkGainRow row;
      row.snr_db = snr_db;
      row.category = experiment.categories[c];
      row.ber_far = counts.far_errors[c] / (n_trials * far_bits);
      row.ber_near = counts.near_errors[c] / (n_trials * near_bits);
      row.goodput_far = far_bits * (1.0 - row.ber_far);
      row.goodput_near = near_bits * (1.0 - row.ber_near);
      row.goodput_sum = row.goodput_far + row.goodput_near;
      row.oma_ber_far = oma_ber_far;
      row.oma_ber_near = oma_ber_near;
      row.oma_goodput_sum = oma_goodput;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_constellation_csv(const LabeledConstellation& constellation, std::ostream& out) {
  out << "re,im,label\n";
  char buffer[64];
  for (std::size_t i = 0; i < constellation.size(); ++i) {
    const auto& p = constellation.points()[i];
    std::snprintf(buffer, sizeof buffer, "%.12g,%.12g,", p.real(), p.imag());
    out << buffer << constellation.label_string(i) << '\n';
  }
}

}  // namespace noma::must
