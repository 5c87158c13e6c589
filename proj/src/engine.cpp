#include "mpe2/engine.hpp"

#include <algorithm>
#include <string>

#include "mpe2/error.hpp"

namespace mpe2 {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::OneBin:
      return "1bin";
    case Variant::TwoBin:
      return "2bin";
    case Variant::ThreeBin:
      return "3bin";
  }
  return "?";
}

std::string_view to_string(Family f) { return f == Family::Mpe2 ? "mpe2" : "mpe"; }

Variant parse_variant(std::string_view name) {
  if (name == "1bin") return Variant::OneBin;
  if (name == "2bin") return Variant::TwoBin;
  if (name == "3bin") return Variant::ThreeBin;
  throw InvalidArgument("unknown variant '" + std::string(name) + "'");
}

Family parse_family(std::string_view name) {
  if (name == "mpe2") return Family::Mpe2;
  if (name == "mpe") return Family::MpeBaseline;
  throw InvalidArgument("unknown algorithm family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Algorithm

Algorithm Algorithm::mpe2(Variant variant, PredictorSet predictors) {
  if (predictors.size() > 2 && variant != Variant::OneBin) {
    throw InvalidArgument("more than two predictors requires the 1bin variant");
  }
  const auto kinds = predictors.kinds();
  return Algorithm(Family::Mpe2, variant, {kinds.begin(), kinds.end()});
}

Algorithm Algorithm::mpe_baseline(Variant variant) {
  if (variant == Variant::OneBin) {
    throw InvalidArgument("baseline MPE supports 2bin and 3bin only");
  }
  return Algorithm(Family::MpeBaseline, variant, {PredictorKind::Med});
}

std::string Algorithm::descriptor() const {
  std::string out(to_string(family_));
  out += '-';
  out += to_string(variant_);
  out += '-';
  for (std::size_t k = 0; k < kinds_.size(); ++k) {
    if (k) out += '+';
    out += to_string(kinds_[k]);
  }
  return out;
}

Algorithm Algorithm::parse_descriptor(std::string_view descriptor) {
  const auto first = descriptor.find('-');
  const auto second = first == std::string_view::npos ? first : descriptor.find('-', first + 1);
  if (second == std::string_view::npos) {
    throw InvalidArgument("algorithm descriptor '" + std::string(descriptor) +
                          "' is not family-variant-predictors");
  }
  const Family family = parse_family(descriptor.substr(0, first));
  const Variant variant = parse_variant(descriptor.substr(first + 1, second - first - 1));
  std::string list(descriptor.substr(second + 1));
  std::replace(list.begin(), list.end(), '+', ',');
  if (family == Family::MpeBaseline) {
    if (list != "med") throw InvalidArgument("baseline MPE uses the med predictor only");
    return mpe_baseline(variant);
  }
  return mpe2(variant, PredictorSet::parse(list));
}

// ---------------------------------------------------------------------------
// Guard sets

namespace {

// Range of deltas any rule of the algorithm may apply.
struct DeltaRange {
  int lo;
  int hi;
};

DeltaRange delta_range(const Algorithm& alg) {
  if (alg.family() == Family::MpeBaseline) {
    return alg.variant() == Variant::TwoBin ? DeltaRange{-1, 1} : DeltaRange{-2, 2};
  }
  switch (alg.variant()) {
    case Variant::OneBin:
      return {-1, 1};
    case Variant::TwoBin:
      return {-2, 1};
    case Variant::ThreeBin:
      return {-2, 2};
  }
  return {-2, 2};
}

// Every intensity v for which v + lo < 0 or v + hi > 255.
std::vector<std::uint8_t> guard_from_range(DeltaRange r) {
  std::vector<std::uint8_t> out;
  for (int v = 0; v < -r.lo; ++v) out.push_back(static_cast<std::uint8_t>(v));
  for (int v = 256 - r.hi; v <= 255; ++v) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

using GuardMask = std::array<bool, 256>;

GuardMask guard_mask(const Algorithm& alg) {
  GuardMask mask{};
  for (std::uint8_t v : guard_set(alg)) mask[v] = true;
  return mask;
}

}  // namespace

std::vector<std::uint8_t> guard_set(Variant variant) {
  return guard_set(Algorithm::mpe2(variant));
}

std::vector<std::uint8_t> guard_set(const Algorithm& alg) {
  return guard_from_range(delta_range(alg));
}

// ---------------------------------------------------------------------------
// Rule tables
//
// Every rule moves all prediction errors of a pixel by the same delta, so a
// rule is fully described by the delta(s) it applies.

namespace {

struct Rule {
  enum class Kind : std::uint8_t { Embeddable, Shift, Skip };
  Kind kind = Kind::Skip;
  int delta_bit0 = 0;  // Embeddable
  int delta_bit1 = 0;  // Embeddable; also the Shift delta

  static constexpr Rule embeddable(int d0, int d1) { return {Kind::Embeddable, d0, d1}; }
  static constexpr Rule shift(int d) { return {Kind::Shift, 0, d}; }
  static constexpr Rule skip() { return {Kind::Skip, 0, 0}; }
};

// OneBin, any number of predictors.
Rule one_bin_rule(std::span<const int> e) {
  bool has_zero = false, has_pos = false, has_neg = false;
  for (int v : e) {
    has_zero |= v == 0;
    has_pos |= v > 0;
    has_neg |= v < 0;
  }
  if (has_pos && has_neg) return Rule::skip();
  if (has_zero) return Rule::embeddable(0, has_neg ? -1 : +1);
  return has_pos ? Rule::shift(+1) : Rule::shift(-1);
}

// Zero-bin rows shared by every two-predictor variant; first match wins.
std::optional<Rule> zero_bin_rule(int e1, int e2) {
  if (e1 == 0 && e2 >= 0) return Rule::embeddable(0, +1);
  if (e2 == 0 && e1 > 0) return Rule::embeddable(0, +1);
  if (e1 == 0 && e2 < 0) return Rule::embeddable(0, -1);
  if (e2 == 0 && e1 < 0) return Rule::embeddable(0, -1);
  return std::nullopt;
}

Rule two_bin_rule(int e1, int e2) {
  if (auto r = zero_bin_rule(e1, e2)) return *r;
  if (e1 == -1 && e2 < 0) return Rule::embeddable(-1, -2);
  if (e2 == -1 && e1 < -1) return Rule::embeddable(-1, -2);
  if (e1 > 0 && e2 > 0) return Rule::shift(+1);
  if (e1 < -1 && e2 < -1) return Rule::shift(-2);
  return Rule::skip();
}

Rule three_bin_rule(int e1, int e2) {
  if (auto r = zero_bin_rule(e1, e2)) return *r;
  if (e1 == -1 && e2 < 0) return Rule::embeddable(-1, -2);
  if (e2 == -1 && e1 < -1) return Rule::embeddable(-1, -2);
  if (e1 == 1 && e2 > 0) return Rule::embeddable(+1, +2);
  if (e2 == 1 && e1 > 1) return Rule::embeddable(+1, +2);
  if (e1 > 1 && e2 > 1) return Rule::shift(+2);
  if (e1 < -1 && e2 < -1) return Rule::shift(-2);
  return Rule::skip();
}

Rule mpe2_rule(Variant variant, const ErrorVector& errors) {
  if (variant == Variant::OneBin) {
    if (errors.size() < 2) throw InvalidArgument("1bin needs two to four prediction errors");
    return one_bin_rule(errors.values());
  }
  if (errors.size() != 2) {
    throw InvalidArgument(std::string(to_string(variant)) + " needs exactly two prediction errors");
  }
  return variant == Variant::TwoBin ? two_bin_rule(errors[0], errors[1])
                                    : three_bin_rule(errors[0], errors[1]);
}

Rule baseline_rule(Variant variant, int e) {
  if (variant == Variant::TwoBin) {
    if (e == 0) return Rule::embeddable(0, +1);
    if (e == -1) return Rule::embeddable(0, -1);
    return e > 0 ? Rule::shift(+1) : Rule::shift(-1);
  }
  if (variant == Variant::ThreeBin) {
    if (e == 0) return Rule::embeddable(0, +1);
    if (e == 1) return Rule::embeddable(+1, +2);
    if (e == -1) return Rule::embeddable(-1, -2);
    return e > 1 ? Rule::shift(+2) : Rule::shift(-2);
  }
  throw InvalidArgument("baseline MPE supports 2bin and 3bin only");
}

Rule rule_for(const Algorithm& alg, const ErrorVector& errors) {
  if (alg.family() == Family::MpeBaseline) {
    if (errors.size() != 1) throw InvalidArgument("baseline MPE takes one prediction error");
    return baseline_rule(alg.variant(), errors[0]);
  }
  return mpe2_rule(alg.variant(), errors);
}

PixelAction apply_rule(const Rule& rule, std::optional<int> next_bit) {
  switch (rule.kind) {
    case Rule::Kind::Embeddable:
      if (!next_bit) throw MissingBit("embeddable position classified without a payload bit");
      if (*next_bit != 0 && *next_bit != 1) throw InvalidArgument("bit value must be 0 or 1");
      return PixelAction::embed(*next_bit, *next_bit ? rule.delta_bit1 : rule.delta_bit0);
    case Rule::Kind::Shift:
      return PixelAction::shift(rule.delta_bit1);
    case Rule::Kind::Skip:
      break;
  }
  return PixelAction::skip();
}

[[noreturn]] void inconsistent(const ErrorVector& e) {
  std::string s = "unreachable stego prediction errors (";
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(e[k]);
  }
  throw InconsistentState(s + ")");
}

constexpr ExtractDecision bit_of(int bit, int restore) { return {bit, restore}; }
constexpr ExtractDecision no_bit(int restore) { return {std::nullopt, restore}; }

ExtractDecision one_bin_extract(const ErrorVector& e) {
  bool has_zero = false, has_pos = false, has_neg = false;
  int lo = e[0], hi = e[0];
  for (int v : e.values()) {
    has_zero |= v == 0;
    has_pos |= v > 0;
    has_neg |= v < 0;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (has_pos && has_neg) return no_bit(0);
  if (has_zero) return bit_of(0, 0);
  if (has_pos) return lo == 1 ? bit_of(1, -1) : no_bit(-1);
  // All negative. A 1-bit on the negative side needs at least one error that
  // was strictly negative before embedding, so all -1 cannot occur.
  if (hi == -1) {
    if (lo == -1) inconsistent(e);
    return bit_of(1, +1);
  }
  return no_bit(+1);
}

std::optional<ExtractDecision> zero_bin_extract(int e1, int e2) {
  if (e1 == 0 || e2 == 0) return bit_of(0, 0);
  if (e1 == 1 && e2 >= 1) return bit_of(1, -1);
  if (e2 == 1 && e1 > 1) return bit_of(1, -1);
  if (e1 == -1 && e2 < -1) return bit_of(1, +1);
  if (e2 == -1 && e1 < -1) return bit_of(1, +1);
  return std::nullopt;
}

// Rows for the -1 bin and the shift-by-2 on the negative side.
std::optional<ExtractDecision> minus_one_bin_extract(int e1, int e2) {
  if (e1 == -2 && e2 <= -2) return bit_of(0, +1);
  if (e2 == -2 && e1 <= -3) return bit_of(0, +1);
  if (e1 == -3 && e2 <= -3) return bit_of(1, +2);
  if (e2 == -3 && e1 <= -4) return bit_of(1, +2);
  if (e1 <= -4 && e2 <= -4) return no_bit(+2);
  return std::nullopt;
}

std::optional<ExtractDecision> plus_one_bin_extract(int e1, int e2) {
  if (e1 == 2 && e2 >= 2) return bit_of(0, -1);
  if (e2 == 2 && e1 >= 3) return bit_of(0, -1);
  if (e1 == 3 && e2 >= 3) return bit_of(1, -2);
  if (e2 == 3 && e1 >= 4) return bit_of(1, -2);
  if (e1 >= 4 && e2 >= 4) return no_bit(-2);
  return std::nullopt;
}

ExtractDecision two_bin_extract(const ErrorVector& e) {
  const int e1 = e[0], e2 = e[1];
  if (auto d = zero_bin_extract(e1, e2)) return *d;
  if (e1 > 1 && e2 > 1) return no_bit(-1);
  if (auto d = minus_one_bin_extract(e1, e2)) return *d;
  if ((e1 > 0 && e2 < 0) || (e1 < 0 && e2 > 0)) return no_bit(0);
  inconsistent(e);
}

ExtractDecision three_bin_extract(const ErrorVector& e) {
  const int e1 = e[0], e2 = e[1];
  if (auto d = zero_bin_extract(e1, e2)) return *d;
  if (auto d = plus_one_bin_extract(e1, e2)) return *d;
  if (auto d = minus_one_bin_extract(e1, e2)) return *d;
  if ((e1 > 0 && e2 < 0) || (e1 < 0 && e2 > 0)) return no_bit(0);
  inconsistent(e);
}

}  // namespace

PixelAction classify_embed(Variant variant, const ErrorVector& errors,
                           std::optional<int> next_bit) {
  return apply_rule(mpe2_rule(variant, errors), next_bit);
}

ExtractDecision classify_extract(Variant variant, const ErrorVector& stego_errors) {
  switch (variant) {
    case Variant::OneBin:
      if (stego_errors.size() < 2) throw InvalidArgument("1bin needs two to four prediction errors");
      return one_bin_extract(stego_errors);
    case Variant::TwoBin:
    case Variant::ThreeBin:
      if (stego_errors.size() != 2) {
        throw InvalidArgument(std::string(to_string(variant)) +
                              " needs exactly two prediction errors");
      }
      return variant == Variant::TwoBin ? two_bin_extract(stego_errors)
                                        : three_bin_extract(stego_errors);
  }
  throw InvalidArgument("unknown variant");
}

PixelAction classify_embed_baseline(Variant variant, int error, std::optional<int> next_bit) {
  return apply_rule(baseline_rule(variant, error), next_bit);
}

ExtractDecision classify_extract_baseline(Variant variant, int e) {
  if (variant == Variant::TwoBin) {
    if (e == 0 || e == -1) return bit_of(0, 0);
    if (e == 1) return bit_of(1, -1);
    if (e == -2) return bit_of(1, +1);
    return e > 0 ? no_bit(-1) : no_bit(+1);
  }
  if (variant == Variant::ThreeBin) {
    switch (e) {
      case 0:
        return bit_of(0, 0);
      case 1:
        return bit_of(1, -1);
      case 2:
        return bit_of(0, -1);
      case 3:
        return bit_of(1, -2);
      case -2:
        return bit_of(0, +1);
      case -3:
        return bit_of(1, +2);
      case -1:
        inconsistent(ErrorVector{e});
      default:
        return e > 0 ? no_bit(-2) : no_bit(+2);
    }
  }
  throw InvalidArgument("baseline MPE supports 2bin and 3bin only");
}

PixelAction classify_embed(const Algorithm& alg, const ErrorVector& errors,
                           std::optional<int> next_bit) {
  return apply_rule(rule_for(alg, errors), next_bit);
}

ExtractDecision classify_extract(const Algorithm& alg, const ErrorVector& stego_errors) {
  if (alg.family() == Family::MpeBaseline) {
    if (stego_errors.size() != 1) throw InvalidArgument("baseline MPE takes one prediction error");
    return classify_extract_baseline(alg.variant(), stego_errors[0]);
  }
  return classify_extract(alg.variant(), stego_errors);
}

// ---------------------------------------------------------------------------
// Raster scan

namespace {

void require_scannable(const GrayImage& img) {
  if (img.width() < 2 || img.height() < 2) {
    throw ImageTooSmall("image must be at least 2x2, got " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()));
  }
}

std::uint8_t to_pixel(int value, std::size_t index) {
  if (value < 0 || value > 255) {
    throw InconsistentState("pixel " + std::to_string(index) + " would leave [0,255] (" +
                            std::to_string(value) + ")");
  }
  return static_cast<std::uint8_t>(value);
}

}  // namespace

EmbedOutcome embed(const Algorithm& alg, const GrayImage& cover, const BitStream& payload,
                   const EmbedObserver& observer) {
  require_scannable(cover);
  const GuardMask guard = guard_mask(alg);

  EmbedOutcome out{cover, {}, 0};
  out.meta.algorithm = alg;
  out.meta.width = cover.width();
  out.meta.height = cover.height();
  out.meta.payload_bits = payload.bit_length();
  out.meta.last_index = out.meta.sentinel();
  if (payload.empty()) return out;

  std::size_t cursor = 0;
  for (std::size_t i = 2; i <= cover.height(); ++i) {
    for (std::size_t j = 2; j <= cover.width(); ++j) {
      const std::size_t index = cover.linear_index(i, j);
      const int value = cover.at(i, j);
      if (guard[value]) {
        out.meta.overhead.push_back(index);
        if (observer) observer(index, PixelAction::guard());
        continue;
      }
      // Predictions always come from the unmodified cover neighbourhood.
      const ErrorVector errors = error_vector(alg.kinds(), context_unchecked(cover, i, j), value);
      const Rule rule = rule_for(alg, errors);
      std::optional<int> bit;
      if (rule.kind == Rule::Kind::Embeddable) bit = payload.bit(cursor++);
      const PixelAction action = apply_rule(rule, bit);
      out.stego.at(i, j) = static_cast<std::uint8_t>(value + action.delta);
      if (observer) observer(index, action);
      if (cursor == payload.bit_length() && action.kind == PixelAction::Kind::Embed) {
        out.meta.last_index = index;
        out.bits_embedded = cursor;
        return out;
      }
    }
  }
  // Ran out of image: the full scan yielded `cursor` embeddable positions.
  throw PayloadExceedsCapacity(payload.bit_length(), cursor);
}

ExtractOutcome extract(const Algorithm& alg, const GrayImage& stego, const EmbedMeta& meta) {
  if (meta.width != stego.width() || meta.height != stego.height()) {
    throw MetaMismatch("sidecar is for " + std::to_string(meta.width) + "x" +
                       std::to_string(meta.height) + ", image is " +
                       std::to_string(stego.width()) + "x" + std::to_string(stego.height()));
  }
  if (!(meta.algorithm == alg)) {
    throw MetaMismatch("sidecar algorithm " + meta.algorithm.descriptor() + " differs from " +
                       alg.descriptor());
  }
  if (meta.empty_payload() != (meta.payload_bits == 0)) {
    throw MetaMismatch("last_index sentinel disagrees with payload_bits");
  }
  require_scannable(stego);

  ExtractOutcome out{{}, stego};
  if (meta.empty_payload()) return out;
  if (meta.last_index >= meta.sentinel()) throw MetaMismatch("last_index out of range");

  auto next_overhead = meta.overhead.begin();
  for (std::size_t i = 2; i <= stego.height(); ++i) {
    for (std::size_t j = 2; j <= stego.width(); ++j) {
      const std::size_t index = stego.linear_index(i, j);
      if (index > meta.last_index) break;
      if (next_overhead != meta.overhead.end() && *next_overhead == index) {
        ++next_overhead;
        continue;  // recovered already holds the stego value
      }
      const int value = stego.at(i, j);
      // Neighbours up and to the left are already restored to cover values.
      const ErrorVector errors =
          error_vector(alg.kinds(), context_unchecked(out.recovered, i, j), value);
      const ExtractDecision d = classify_extract(alg, errors);
      out.recovered.at(i, j) = to_pixel(value + d.restore_delta, index);
      if (d.bit) {
        if (out.payload.bit_length() == meta.payload_bits) {
          throw InconsistentState("more embedded bits found than the sidecar declares");
        }
        out.payload.push_back(*d.bit);
      }
    }
  }
  if (next_overhead != meta.overhead.end()) {
    throw MetaMismatch("overhead index outside the scanned region");
  }
  if (out.payload.bit_length() < meta.payload_bits) {
    throw PayloadShortfall("extracted " + std::to_string(out.payload.bit_length()) + " of " +
                           std::to_string(meta.payload_bits) + " payload bits");
  }
  return out;
}

std::size_t capacity(const Algorithm& alg, const GrayImage& cover) {
  require_scannable(cover);
  const GuardMask guard = guard_mask(alg);
  std::size_t count = 0;
  for (std::size_t i = 2; i <= cover.height(); ++i) {
    for (std::size_t j = 2; j <= cover.width(); ++j) {
      const int value = cover.at(i, j);
      if (guard[value]) continue;
      const ErrorVector errors = error_vector(alg.kinds(), context_unchecked(cover, i, j), value);
      if (rule_for(alg, errors).kind == Rule::Kind::Embeddable) ++count;
    }
  }
  return count;
}

PolarityCounts polarity_stats(const PredictorSet& set, const GrayImage& cover) {
  require_scannable(cover);
  PolarityCounts counts;
  for (std::size_t i = 2; i <= cover.height(); ++i) {
    for (std::size_t j = 2; j <= cover.width(); ++j) {
      const int value = cover.at(i, j);
      if (value == 0 || value == 255) {
        ++counts.guard;
        continue;
      }
      const ErrorVector errors = error_vector(set.kinds(), context_unchecked(cover, i, j), value);
      bool has_zero = false, has_pos = false, has_neg = false;
      for (int v : errors.values()) {
        has_zero |= v == 0;
        has_pos |= v > 0;
        has_neg |= v < 0;
      }
      if (has_pos && has_neg) {
        ++counts.mixed;
      } else if (has_zero) {
        ++counts.has_zero_unipolar;
      } else if (has_pos) {
        ++counts.all_positive;
      } else {
        ++counts.all_negative;
      }
    }
  }
  return counts;
}

}  // namespace mpe2
