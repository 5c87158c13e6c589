#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpe2 {

// Exact-length bit sequence packed MSB-first; unused low bits of the final
// byte are always zero.
class BitStream {
 public:
  BitStream() = default;

  // Validates that bytes.size() == ceil(bit_length / 8) and that padding
  // bits are zero. Throws FormatError / PaddingNonZero.
  static BitStream from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_length);

  std::size_t bit_length() const noexcept { return bit_length_; }
  bool empty() const noexcept { return bit_length_ == 0; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  // Unchecked; k < bit_length().
  int bit(std::size_t k) const noexcept { return (bytes_[k >> 3] >> (7 - (k & 7))) & 1; }
  void push_back(int bit);

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_length_ = 0;
};

// Each element must be 0 or 1; anything else throws InvalidArgument.
BitStream pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(const BitStream& stream);

}  // namespace mpe2
