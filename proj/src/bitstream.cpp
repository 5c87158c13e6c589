#include "mpe2/bitstream.hpp"

#include <string>

#include "mpe2/error.hpp"

namespace mpe2 {

BitStream BitStream::from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_length) {
  const std::size_t expected = (bit_length + 7) / 8;
  if (bytes.size() != expected) {
    throw FormatError(std::to_string(bit_length) + " bits need " + std::to_string(expected) +
                      " bytes, got " + std::to_string(bytes.size()));
  }
  if (const std::size_t used = bit_length & 7; used != 0) {
    const auto mask = static_cast<std::uint8_t>(0xFFu >> used);
    if (bytes.back() & mask) throw PaddingNonZero("payload padding bits are not zero");
  }
  BitStream out;
  out.bytes_ = std::move(bytes);
  out.bit_length_ = bit_length;
  return out;
}

void BitStream::push_back(int bit) {
  if (bit != 0 && bit != 1) throw InvalidArgument("bit value must be 0 or 1");
  if ((bit_length_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_length_ & 7));
  ++bit_length_;
}

BitStream pack_bits(std::span<const std::uint8_t> bits) {
  BitStream out;
  for (std::uint8_t b : bits) out.push_back(b);
  return out;
}

std::vector<std::uint8_t> unpack_bits(const BitStream& stream) {
  std::vector<std::uint8_t> bits(stream.bit_length());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = static_cast<std::uint8_t>(stream.bit(k));
  return bits;
}

}  // namespace mpe2
