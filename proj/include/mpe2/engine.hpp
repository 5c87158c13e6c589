#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpe2/bitstream.hpp"
#include "mpe2/image.hpp"
#include "mpe2/predictors.hpp"

namespace mpe2 {

// Number of histogram bins that carry payload: {0}, {0,-1}, {-1,0,+1}.
enum class Variant : std::uint8_t { OneBin, TwoBin, ThreeBin };

enum class Family : std::uint8_t {
  Mpe2,         // multi-predictor rule-based selection
  MpeBaseline,  // single MED predictor, plain histogram shifting
};

std::string_view to_string(Variant v);
std::string_view to_string(Family f);
// "1bin" / "2bin" / "3bin" and "mpe2" / "mpe". Throw InvalidArgument.
Variant parse_variant(std::string_view name);
Family parse_family(std::string_view name);

// A fully specified embedding scheme.
//
// Invariants enforced at construction:
//   - MpeBaseline supports TwoBin and ThreeBin only and always uses MED.
//   - Mpe2 with more than two predictors requires OneBin.
class Algorithm {
 public:
  static Algorithm mpe2(Variant variant, PredictorSet predictors = PredictorSet::standard());
  static Algorithm mpe_baseline(Variant variant);
  // Inverse of descriptor(), e.g. "mpe2-1bin-med+mean" or "mpe-2bin-med".
  static Algorithm parse_descriptor(std::string_view descriptor);

  Family family() const noexcept { return family_; }
  Variant variant() const noexcept { return variant_; }
  std::span<const PredictorKind> kinds() const noexcept { return kinds_; }

  std::string descriptor() const;

  friend bool operator==(const Algorithm&, const Algorithm&) = default;

 private:
  Algorithm(Family family, Variant variant, std::vector<PredictorKind> kinds)
      : family_(family), variant_(variant), kinds_(std::move(kinds)) {}

  Family family_;
  Variant variant_;
  std::vector<PredictorKind> kinds_;
};

struct PixelAction {
  enum class Kind : std::uint8_t { Embed, Shift, Skip, Guard };

  Kind kind = Kind::Skip;
  int bit = 0;    // meaningful for Embed only
  int delta = 0;  // stego = cover + delta

  static PixelAction embed(int bit, int delta) { return {Kind::Embed, bit, delta}; }
  static PixelAction shift(int delta) { return {Kind::Shift, 0, delta}; }
  static PixelAction skip() { return {Kind::Skip, 0, 0}; }
  static PixelAction guard() { return {Kind::Guard, 0, 0}; }

  friend bool operator==(const PixelAction&, const PixelAction&) = default;
};

struct ExtractDecision {
  std::optional<int> bit;  // absent for shifted or untouched pixels
  int restore_delta = 0;   // cover = stego + restore_delta

  friend bool operator==(const ExtractDecision&, const ExtractDecision&) = default;
};

// Side information needed to invert an embedding. Indices are 0-based
// row-major linear indices.
struct EmbedMeta {
  Algorithm algorithm = Algorithm::mpe2(Variant::OneBin);
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t payload_bits = 0;
  // Pixel that consumed the final payload bit, or width*height when the
  // payload is empty.
  std::size_t last_index = 0;
  // Guard pixels met before last_index, ascending.
  std::vector<std::size_t> overhead;

  std::size_t sentinel() const noexcept { return width * height; }
  bool empty_payload() const noexcept { return last_index == sentinel(); }

  friend bool operator==(const EmbedMeta&, const EmbedMeta&) = default;
};

struct EmbedOutcome {
  GrayImage stego;
  EmbedMeta meta;
  std::size_t bits_embedded = 0;
};

struct ExtractOutcome {
  BitStream payload;
  GrayImage recovered;
};

// Called once per processed scan position, in scan order.
using EmbedObserver = std::function<void(std::size_t linear_index, const PixelAction& action)>;

// Cover intensities excluded from modification (their positions go to the
// overhead list). Sorted ascending.
std::vector<std::uint8_t> guard_set(Variant variant);
std::vector<std::uint8_t> guard_set(const Algorithm& alg);

// Multi-predictor rule tables. TwoBin and ThreeBin take exactly two errors;
// OneBin takes two to four. next_bit must be present when the position is
// embeddable (MissingBit otherwise) and is ignored when it is not.
PixelAction classify_embed(Variant variant, const ErrorVector& errors,
                           std::optional<int> next_bit);
// Left inverse of classify_embed applied to the pixel. Throws
// InconsistentState on a stego error vector no embed action produces.
ExtractDecision classify_extract(Variant variant, const ErrorVector& stego_errors);

// Single-predictor MPE rules on the MED error.
PixelAction classify_embed_baseline(Variant variant, int error, std::optional<int> next_bit);
ExtractDecision classify_extract_baseline(Variant variant, int stego_error);

// Dispatch on the algorithm family; errors has one entry per alg.kinds().
PixelAction classify_embed(const Algorithm& alg, const ErrorVector& errors,
                           std::optional<int> next_bit);
ExtractDecision classify_extract(const Algorithm& alg, const ErrorVector& stego_errors);

// Raster-scan embedding. Throws ImageTooSmall (< 2x2) and
// PayloadExceedsCapacity.
EmbedOutcome embed(const Algorithm& alg, const GrayImage& cover, const BitStream& payload,
                   const EmbedObserver& observer = {});

// Throws MetaMismatch, InconsistentState, PayloadShortfall.
ExtractOutcome extract(const Algorithm& alg, const GrayImage& stego, const EmbedMeta& meta);

// Number of embeddable positions under a full scan; independent of payload.
std::size_t capacity(const Algorithm& alg, const GrayImage& cover);

struct PolarityCounts {
  std::size_t has_zero_unipolar = 0;  // some zero error, nonzero ones share a sign
  std::size_t all_positive = 0;
  std::size_t all_negative = 0;
  std::size_t mixed = 0;  // strictly positive and strictly negative errors present
  std::size_t guard = 0;  // cover intensity 0 or 255

  std::size_t total() const noexcept {
    return has_zero_unipolar + all_positive + all_negative + mixed + guard;
  }

  friend bool operator==(const PolarityCounts&, const PolarityCounts&) = default;
};

PolarityCounts polarity_stats(const PredictorSet& set, const GrayImage& cover);

}  // namespace mpe2
