#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpe2 {

// Base of everything the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

class ImageTooSmall : public Error {
 public:
  using Error::Error;
};

class PayloadExceedsCapacity : public Error {
 public:
  PayloadExceedsCapacity(std::size_t requested, std::size_t capacity)
      : Error("payload of " + std::to_string(requested) +
              " bits exceeds capacity of " + std::to_string(capacity) +
              " bits"),
        requested_(requested),
        capacity_(capacity) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  std::size_t requested_;
  std::size_t capacity_;
};

// A stego error vector no embed action can produce. Usually means the
// stego image was modified or the wrong algorithm/sidecar was supplied.
class InconsistentState : public Error {
 public:
  using Error::Error;
};

class MetaMismatch : public Error {
 public:
  using Error::Error;
};

class PayloadShortfall : public Error {
 public:
  using Error::Error;
};

// Caller bug: an embeddable position was classified without a bit.
class MissingBit : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PaddingNonZero : public FormatError {
 public:
  using FormatError::FormatError;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Invalid configuration such as a bad predictor list or an unsupported
// family/variant combination.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace mpe2
