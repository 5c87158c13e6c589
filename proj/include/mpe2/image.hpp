#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpe2 {

// 8-bit grayscale raster, row-major, top-left origin.
//
// Engine-facing accessors use 1-based (row, column) coordinates; linear
// indices are 0-based: linear = (row - 1) * width + (column - 1).
class GrayImage {
 public:
  GrayImage() = default;
  // Zero-filled image. Throws InvalidArgument when either side is zero.
  GrayImage(std::size_t width, std::size_t height);
  // Throws InvalidArgument when pixels.size() != width * height.
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  // Bounds-checked; throws OutOfBounds.
  std::uint8_t pixel(std::size_t row, std::size_t col) const;
  void set_pixel(std::size_t row, std::size_t col, std::uint8_t value);

  // Unchecked 1-based access for hot loops.
  std::uint8_t at(std::size_t row, std::size_t col) const noexcept {
    return pixels_[(row - 1) * width_ + (col - 1)];
  }
  std::uint8_t& at(std::size_t row, std::size_t col) noexcept {
    return pixels_[(row - 1) * width_ + (col - 1)];
  }

  std::size_t linear_index(std::size_t row, std::size_t col) const noexcept {
    return (row - 1) * width_ + (col - 1);
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary PGM (P5), maxval 255 only. '#' comments are accepted anywhere a
// header token may start. Exactly one image per file: trailing bytes are
// rejected. Throws FormatError.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

// Canonical form: "P5\n<w> <h>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> save_pgm(const GrayImage& img);

}  // namespace mpe2
