#pragma once

#include <string>
#include <string_view>

#include "mpe2/engine.hpp"

namespace mpe2 {

inline constexpr std::string_view kSidecarMagic = "MPE2META";
inline constexpr int kSidecarVersion = 1;
inline constexpr std::string_view kSidecarExtension = ".mpe2meta";

// Line-oriented text, LF line endings, one trailing LF:
//
//   MPE2META 1
//   algorithm <mpe2|mpe>
//   variant <1bin|2bin|3bin>
//   predictors <name>[,<name>...]
//   size <width> <height>
//   payload_bits <n>
//   last_index <L>
//   overhead_count <m>
//   <index>            (m lines, ascending)
std::string write_sidecar(const EmbedMeta& meta);

// Strict inverse of write_sidecar. Throws FormatError on any deviation
// from the grammar or on a meta that could not come from embed().
EmbedMeta read_sidecar(std::string_view text);

}  // namespace mpe2
