#include "mpe2/predictors.hpp"

#include <algorithm>
#include <string>

#include "mpe2/error.hpp"

namespace mpe2 {

std::string_view to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::Med:
      return "med";
    case PredictorKind::Mean:
      return "mean";
    case PredictorKind::Median:
      return "median";
    case PredictorKind::Min:
      return "min";
  }
  return "?";
}

PredictorKind parse_predictor_kind(std::string_view name) {
  if (name == "med") return PredictorKind::Med;
  if (name == "mean") return PredictorKind::Mean;
  if (name == "median") return PredictorKind::Median;
  if (name == "min") return PredictorKind::Min;
  throw InvalidArgument("unknown predictor '" + std::string(name) + "'");
}

PredictorSet::PredictorSet(std::initializer_list<PredictorKind> kinds)
    : PredictorSet(std::span<const PredictorKind>(kinds.begin(), kinds.size())) {}

PredictorSet::PredictorSet(std::span<const PredictorKind> kinds)
    : kinds_(kinds.begin(), kinds.end()) {
  if (kinds_.size() < 2 || kinds_.size() > kMaxPredictors) {
    throw InvalidArgument("predictor set needs 2 to 4 predictors, got " +
                          std::to_string(kinds_.size()));
  }
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    for (std::size_t j = i + 1; j < kinds_.size(); ++j) {
      if (kinds_[i] == kinds_[j]) {
        throw InvalidArgument("duplicate predictor '" + std::string(mpe2::to_string(kinds_[i])) +
                              "'");
      }
    }
  }
}

PredictorSet PredictorSet::standard() { return {PredictorKind::Med, PredictorKind::Mean}; }

PredictorSet PredictorSet::parse(std::string_view list) {
  std::vector<PredictorKind> kinds;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = list.find(',', start);
    kinds.push_back(parse_predictor_kind(list.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PredictorSet(std::span<const PredictorKind>(kinds));
}

std::string PredictorSet::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < kinds_.size(); ++k) {
    if (k) out += ',';
    out += mpe2::to_string(kinds_[k]);
  }
  return out;
}

ErrorVector::ErrorVector(std::initializer_list<int> values)
    : ErrorVector(std::span<const int>(values.begin(), values.size())) {}

ErrorVector::ErrorVector(std::span<const int> values) {
  if (values.size() > kMaxPredictors) {
    throw InvalidArgument("error vector longer than " + std::to_string(kMaxPredictors));
  }
  std::copy(values.begin(), values.end(), values_.begin());
  size_ = values.size();
}

void ErrorVector::push_back(int value) {
  if (size_ == kMaxPredictors) {
    throw InvalidArgument("error vector longer than " + std::to_string(kMaxPredictors));
  }
  values_[size_++] = value;
}

ErrorVector ErrorVector::shifted(int delta) const {
  ErrorVector out = *this;
  for (std::size_t k = 0; k < size_; ++k) out.values_[k] += delta;
  return out;
}

CausalContext context_of(const GrayImage& source, std::size_t row, std::size_t col) {
  if (row < 2 || col < 2 || row > source.height() || col > source.width()) {
    throw OutOfBounds("no causal context at (" + std::to_string(row) + ", " +
                      std::to_string(col) + ")");
  }
  return context_unchecked(source, row, col);
}

int predict(PredictorKind kind, const CausalContext& ctx) noexcept {
  const int a = ctx.a, b = ctx.b, c = ctx.c;
  switch (kind) {
    case PredictorKind::Med:
      if (c >= std::max(a, b)) return std::min(a, b);
      if (c <= std::min(a, b)) return std::max(a, b);
      return a + b - c;
    case PredictorKind::Mean:
      // Operands are non-negative, so integer division is the floor.
      return (a + b + c) / 3;
    case PredictorKind::Median:
      // Odd count: the middle element, never an average.
      return std::max(std::min(a, b), std::min(std::max(a, b), c));
    case PredictorKind::Min:
      return std::min({a, b, c});
  }
  return 0;
}

ErrorVector error_vector(std::span<const PredictorKind> kinds, const CausalContext& ctx,
                         int actual) {
  std::array<int, kMaxPredictors> values{};
  for (std::size_t k = 0; k < kinds.size(); ++k) values[k] = actual - predict(kinds[k], ctx);
  return ErrorVector(std::span<const int>(values.data(), kinds.size()));
}

ErrorVector error_vector(const PredictorSet& set, const GrayImage& source, std::size_t row,
                         std::size_t col, int actual) {
  return error_vector(set.kinds(), context_of(source, row, col), actual);
}

}  // namespace mpe2
