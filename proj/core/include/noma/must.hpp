#pragma once

// Downlink multiuser superposition transmission (MUST): composite
// constellations for Categories 1-3, Gray-adjacency verification, max-log
// demodulation, and an uncoded link-level goodput comparison against OMA.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noma::must {

using Symbol = std::complex<double>;

/// Complex points with fixed-width bit labels. Label bit 0 is the most
/// significant bit of the integer label and the leftmost character of label_string().
class LabeledConstellation {
 public:
  LabeledConstellation(std::vector<Symbol> points, std::vector<std::uint32_t> labels,
                       unsigned bits_per_symbol);

  std::span<const Symbol> points() const noexcept { return points_; }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }
  unsigned bits_per_symbol() const noexcept { return bits_; }
  double average_power() const noexcept { return average_power_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Index of the point carrying `label`.
  std::size_t index_of(std::uint32_t label) const { return by_label_.at(label); }
  const Symbol& point_of(std::uint32_t label) const { return points_[index_of(label)]; }
  std::string label_string(std::size_t index) const;

  /// Same points scaled to unit average power.
  LabeledConstellation normalized() const;

 private:
  std::vector<Symbol> points_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> by_label_;
  unsigned bits_;
  double average_power_;
};

enum class Modulation { kQpsk, kQam16 };
enum class Category { kCat1, kCat2, kCat3 };

std::string_view to_string(Modulation m);
std::string_view to_string(Category c);
std::optional<Modulation> parse_modulation(std::string_view text);
std::optional<Category> parse_category(std::string_view text);

/// Unit-power square QAM with the interleaved Gray labelling used by LTE:
/// even label bits drive the in-phase axis, odd bits the quadrature axis,
/// bits 0 and 1 are the signs. Point i carries label i.
LabeledConstellation gray_constellation(Modulation modulation);

struct SuperpositionSpec {
  Modulation far = Modulation::kQpsk;
  Modulation near = Modulation::kQpsk;
  /// Fraction of power on the far user's component, in (0.5, 1).
  double power_ratio = 0.8;
  Category category = Category::kCat1;
};

/// Composite sqrt(beta) s_far + sqrt(1 - beta) s_near, normalized to unit power.
/// Labels are far bits followed by near bits:
///  - Cat1 keeps both component labels unchanged (not Gray on the composite).
///  - Cat2 flips the near user's sign bit on each axis by the parity of the far
///    user's bits on that axis, which mirrors the near component inside every
///    far decision region and makes the composite Gray.
///  - Cat3 labels the composite grid directly with a per-axis reflected Gray code,
///    far user taking the most significant bits of each axis.
/// Throws DomainError for beta outside (0.5, 1) or coincident composite points.
LabeledConstellation build_composite(const SuperpositionSpec& spec);

struct GrayCheckResult {
  bool gray = false;
  /// Indices of one adjacent pair whose labels differ in more than one bit.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Checks that every horizontally or vertically adjacent pair of a rectangular
/// grid differs in exactly one label bit. Throws DomainError if the points do
/// not form a full rectangular grid (tolerance 1e-9).
GrayCheckResult gray_check(const LabeledConstellation& constellation);

struct Demodulated {
  std::uint32_t hard_label = 0;
  /// ln P(b = 0 | y) / P(b = 1 | y) under max-log; positive favours 0.
  std::vector<double> llrs;
};

Demodulated demodulate(const LabeledConstellation& constellation, Symbol received,
                       double noise_var);

/// Label of the nearest point.
std::uint32_t hard_decision(const LabeledConstellation& constellation, Symbol received);

struct LinkExperiment {
  Modulation far = Modulation::kQpsk;
  Modulation near = Modulation::kQpsk;
  double power_ratio = 0.8;
  std::vector<Category> categories{Category::kCat1, Category::kCat2, Category::kCat3};
  std::vector<double> snr_db;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Uncoded goodput (correct bits per channel use) for one category at one SNR.
/// The OMA baseline gives each user half the channel uses with its own
/// component constellation at full power.
struct LinkGainRow {
  double snr_db = 0.0;
  Category category = Category::kCat1;
  double ber_far = 0.0;
  double ber_near = 0.0;
  double goodput_far = 0.0;
  double goodput_near = 0.0;
  double goodput_sum = 0.0;
  double oma_ber_far = 0.0;
  double oma_ber_near = 0.0;
  double oma_goodput_sum = 0.0;
};

/// AWGN link with unit symbol power and noise variance 10^(-snr/10). Every
/// category at a given SNR sees the same symbols and noise. Rows are ordered by
/// SNR, then by category as listed in the experiment.
std::vector<LinkGainRow> link_gain_experiment(const LinkExperiment& experiment,
                                              unsigned workers = 1);

/// CSV with header `re,im,label`; labels rendered as bit strings.
void write_constellation_csv(const LabeledConstellation& constellation, std::ostream& out);

}  // namespace noma::must
