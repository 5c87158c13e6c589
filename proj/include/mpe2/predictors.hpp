#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpe2/image.hpp"

namespace mpe2 {

// Causal neighbours of pixel x:   c b
//                                 a x
struct CausalContext {
  int a = 0;  // left        (i, j-1)
  int b = 0;  // upper       (i-1, j)
  int c = 0;  // upper-left  (i-1, j-1)

  friend bool operator==(const CausalContext&, const CausalContext&) = default;
};

enum class PredictorKind : std::uint8_t { Med, Mean, Median, Min };

inline constexpr std::size_t kMaxPredictors = 4;

std::string_view to_string(PredictorKind kind);
// Accepts "med", "mean", "median", "min". Throws InvalidArgument.
PredictorKind parse_predictor_kind(std::string_view name);

// Ordered list of 2..4 distinct predictors; element 0 is "predictor 1".
class PredictorSet {
 public:
  // Throws InvalidArgument on size outside [2,4] or duplicates.
  PredictorSet(std::initializer_list<PredictorKind> kinds);
  explicit PredictorSet(std::span<const PredictorKind> kinds);

  // MED then Mean.
  static PredictorSet standard();
  // Comma-separated names, e.g. "med,mean,median".
  static PredictorSet parse(std::string_view list);

  std::span<const PredictorKind> kinds() const noexcept { return kinds_; }
  std::size_t size() const noexcept { return kinds_.size(); }
  std::string to_string() const;

  friend bool operator==(const PredictorSet&, const PredictorSet&) = default;

 private:
  std::vector<PredictorKind> kinds_;
};

// One prediction error per predictor, in predictor order. Values are kept
// in int: MED's planar branch a+b-c is not clamped, so errors span roughly
// [-510, 510].
class ErrorVector {
 public:
  ErrorVector() = default;
  ErrorVector(std::initializer_list<int> values);
  explicit ErrorVector(std::span<const int> values);

  std::size_t size() const noexcept { return size_; }
  int operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const int> values() const noexcept { return {values_.data(), size_}; }

  void push_back(int value);
  // Adds delta to every component.
  ErrorVector shifted(int delta) const;

  friend bool operator==(const ErrorVector& lhs, const ErrorVector& rhs) {
    return lhs.values_ == rhs.values_ && lhs.size_ == rhs.size_;
  }

 private:
  std::array<int, kMaxPredictors> values_{};
  std::size_t size_ = 0;
};

// Throws OutOfBounds unless 2 <= row <= height and 2 <= col <= width.
CausalContext context_of(const GrayImage& source, std::size_t row, std::size_t col);

inline CausalContext context_unchecked(const GrayImage& source, std::size_t row,
                                       std::size_t col) noexcept {
  return {source.at(row, col - 1), source.at(row - 1, col), source.at(row - 1, col - 1)};
}

int predict(PredictorKind kind, const CausalContext& ctx) noexcept;

ErrorVector error_vector(std::span<const PredictorKind> kinds, const CausalContext& ctx,
                         int actual);

// error[k] = actual - predict(kinds[k], context_of(source, row, col)).
ErrorVector error_vector(const PredictorSet& set, const GrayImage& source, std::size_t row,
                         std::size_t col, int actual);

}  // namespace mpe2
