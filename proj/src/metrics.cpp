#include "mpe2/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "mpe2/error.hpp"

namespace mpe2 {

double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch("cannot compare " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " with " + std::to_string(b.width()) +
                            "x" + std::to_string(b.height()));
  }
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const int d = int(pa[k]) - int(pb[k]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

double theoretical_floor(Variant variant) {
  double mean_sq = 0.0;
  switch (variant) {
    case Variant::OneBin:
      mean_sq = (1.0 + 1.0) / 3.0;
      break;
    case Variant::TwoBin:
      mean_sq = (1.0 + 4.0) / 3.0;
      break;
    case Variant::ThreeBin:
      mean_sq = (4.0 + 4.0) / 3.0;
      break;
  }
  return 10.0 * std::log10(255.0 * 255.0 / mean_sq);
}

std::string format_db(double db) {
  if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
  if (std::isnan(db)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, db, std::chars_format::fixed, 4);
  return {buf, ptr};
}

}  // namespace mpe2
