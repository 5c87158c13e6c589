#pragma once

#include <string>

#include "mpe2/engine.hpp"
#include "mpe2/image.hpp"

namespace mpe2 {

double mse(const GrayImage& a, const GrayImage& b);

// 10*log10(255^2 / MSE); +infinity for identical images.
// Throws DimensionMismatch.
double psnr(const GrayImage& a, const GrayImage& b);

// Worst-case PSNR when bipolar, all-positive and all-negative pixels are
// equally likely and every bit is 1:
//   1bin: per-class squared deltas {1, 1, 0}
//   2bin: {1, 4, 0}
//   3bin: {4, 4, 0}
double theoretical_floor(Variant variant);

// Fixed 4-decimal text, or "inf". Locale independent.
std::string format_db(double db);

}  // namespace mpe2
