#include "mpe2/sidecar.hpp"

#include <charconv>
#include <cstdint>
#include <limits>
#include <vector>

#include "mpe2/error.hpp"

namespace mpe2 {

std::string write_sidecar(const EmbedMeta& meta) {
  const Algorithm& alg = meta.algorithm;
  std::string out;
  out += std::string(kSidecarMagic) + " " + std::to_string(kSidecarVersion) + "\n";
  out += "algorithm " + std::string(to_string(alg.family())) + "\n";
  out += "variant " + std::string(to_string(alg.variant())) + "\n";
  out += "predictors ";
  for (std::size_t k = 0; k < alg.kinds().size(); ++k) {
    if (k) out += ',';
    out += to_string(alg.kinds()[k]);
  }
  out += "\n";
  out += "size " + std::to_string(meta.width) + " " + std::to_string(meta.height) + "\n";
  out += "payload_bits " + std::to_string(meta.payload_bits) + "\n";
  out += "last_index " + std::to_string(meta.last_index) + "\n";
  out += "overhead_count " + std::to_string(meta.overhead.size()) + "\n";
  for (std::size_t index : meta.overhead) out += std::to_string(index) + "\n";
  return out;
}

namespace {

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : text_(text) {
    if (text_.empty() || text_.back() != '\n') {
      throw FormatError("sidecar must end with a single LF");
    }
  }

  std::string_view next() {
    if (pos_ >= text_.size()) throw FormatError("sidecar truncated after line " + std::to_string(line_));
    const std::size_t end = text_.find('\n', pos_);
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (line.find('\r') != std::string_view::npos) throw FormatError("sidecar must use LF line endings");
    return line;
  }

  bool done() const { return pos_ == text_.size(); }
  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::size_t parse_count(std::string_view token, std::string_view what) {
  std::size_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  // Canonical decimal only: no sign, no leading zeros.
  if (token.empty() || (token.size() > 1 && token[0] == '0')) {
    throw FormatError("sidecar: bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw FormatError("sidecar: bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

// "key value" with exactly one space; returns value.
std::string_view keyed(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() + 1 || line.substr(0, key.size()) != key ||
      line[key.size()] != ' ') {
    throw FormatError("sidecar: expected '" + std::string(key) + " ...', got '" +
                      std::string(line) + "'");
  }
  return line.substr(key.size() + 1);
}

bool interior(std::size_t index, std::size_t width) {
  return index >= width && index % width != 0;
}

}  // namespace

EmbedMeta read_sidecar(std::string_view text) {
  LineCursor lines(text);
  if (lines.next() != std::string(kSidecarMagic) + " " + std::to_string(kSidecarVersion)) {
    throw FormatError("sidecar: bad magic or unsupported version");
  }

  EmbedMeta meta;
  try {
    const Family family = parse_family(keyed(lines.next(), "algorithm"));
    const Variant variant = parse_variant(keyed(lines.next(), "variant"));
    const std::string_view predictors = keyed(lines.next(), "predictors");
    if (family == Family::MpeBaseline) {
      if (predictors != "med") throw FormatError("sidecar: baseline MPE uses predictors med");
      meta.algorithm = Algorithm::mpe_baseline(variant);
    } else {
      meta.algorithm = Algorithm::mpe2(variant, PredictorSet::parse(predictors));
    }
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("sidecar: ") + e.what());
  }

  const std::string_view size = keyed(lines.next(), "size");
  const std::size_t space = size.find(' ');
  if (space == std::string_view::npos) throw FormatError("sidecar: size needs width and height");
  meta.width = parse_count(size.substr(0, space), "width");
  meta.height = parse_count(size.substr(space + 1), "height");
  if (meta.width < 2 || meta.height < 2) throw FormatError("sidecar: image smaller than 2x2");
  if (meta.width > std::numeric_limits<std::uint32_t>::max() ||
      meta.height > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError("sidecar: image dimensions too large");
  }

  meta.payload_bits = parse_count(keyed(lines.next(), "payload_bits"), "payload_bits");
  meta.last_index = parse_count(keyed(lines.next(), "last_index"), "last_index");
  const std::size_t overhead_count =
      parse_count(keyed(lines.next(), "overhead_count"), "overhead_count");

  const std::size_t scan_positions = (meta.width - 1) * (meta.height - 1);
  if (meta.payload_bits > scan_positions) {
    throw FormatError("sidecar: payload_bits exceeds scan positions");
  }
  if (meta.empty_payload()) {
    if (meta.payload_bits != 0) throw FormatError("sidecar: empty-payload sentinel with nonzero payload_bits");
    if (overhead_count != 0) throw FormatError("sidecar: overhead listed for an empty payload");
  } else {
    if (meta.payload_bits == 0) throw FormatError("sidecar: zero payload_bits needs the sentinel last_index");
    if (meta.last_index >= meta.sentinel() || !interior(meta.last_index, meta.width)) {
      throw FormatError("sidecar: last_index out of range");
    }
  }
  if (overhead_count > scan_positions) throw FormatError("sidecar: overhead_count too large");

  meta.overhead.reserve(overhead_count);
  for (std::size_t k = 0; k < overhead_count; ++k) {
    const std::size_t index = parse_count(lines.next(), "overhead index");
    if (!interior(index, meta.width) || index >= meta.last_index) {
      throw FormatError("sidecar: overhead index " + std::to_string(index) + " out of range");
    }
    if (!meta.overhead.empty() && index <= meta.overhead.back()) {
      throw FormatError("sidecar: overhead indices not strictly increasing");
    }
    meta.overhead.push_back(index);
  }
  if (!lines.done()) throw FormatError("sidecar: trailing content after overhead list");
  return meta;
}

}  // namespace mpe2
