#include "mpe2/image.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <string>

#include "mpe2/error.hpp"

namespace mpe2 {

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : GrayImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height,
                     std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) {
    throw InvalidArgument("image dimensions must be at least 1x1");
  }
  if (pixels_.size() != width * height) {
    throw InvalidArgument("pixel count " + std::to_string(pixels_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

std::uint8_t GrayImage::pixel(std::size_t row, std::size_t col) const {
  if (row < 1 || row > height_ || col < 1 || col > width_) {
    throw OutOfBounds("pixel (" + std::to_string(row) + ", " +
                      std::to_string(col) + ") outside " +
                      std::to_string(height_) + "x" + std::to_string(width_));
  }
  return at(row, col);
}

void GrayImage::set_pixel(std::size_t row, std::size_t col, std::uint8_t value) {
  if (row < 1 || row > height_ || col < 1 || col > width_) {
    throw OutOfBounds("pixel (" + std::to_string(row) + ", " +
                      std::to_string(col) + ") outside " +
                      std::to_string(height_) + "x" + std::to_string(width_));
  }
  at(row, col) = value;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and comment lines, then reads one decimal token.
  std::size_t number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) ++pos_;
    if (pos_ == start) {
      throw FormatError(std::string("PGM header: expected numeric ") + what);
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw FormatError(std::string("PGM header: non-numeric ") + what);
    }
    std::size_t value = 0;
    const auto* first = reinterpret_cast<const char*>(bytes_.data() + start);
    const auto* last = reinterpret_cast<const char*>(bytes_.data() + pos_);
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw FormatError(std::string("PGM header: bad ") + what);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("PGM header: missing whitespace before raster");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("not a binary PGM (magic P5 expected)");
  }
  HeaderReader reader(bytes);
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  if (width == 0 || height == 0) throw FormatError("PGM has zero dimension");
  if (maxval != 255) {
    throw FormatError("PGM maxval " + std::to_string(maxval) + " unsupported (need 255)");
  }
  reader.single_whitespace();

  if (width > std::numeric_limits<std::size_t>::max() / height) {
    throw FormatError("PGM dimensions overflow");
  }
  const std::size_t count = width * height;
  const std::size_t offset = reader.position();
  if (bytes.size() - offset < count) {
    throw FormatError("PGM raster truncated: need " + std::to_string(count) +
                      " bytes, have " + std::to_string(bytes.size() - offset));
  }
  if (bytes.size() - offset > count) {
    throw FormatError("PGM has " + std::to_string(bytes.size() - offset - count) +
                      " bytes after the raster");
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return GrayImage(width, height, std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

}  // namespace mpe2
