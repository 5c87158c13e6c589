#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mpe2/bitstream.hpp"
#include "mpe2/engine.hpp"
#include "mpe2/image.hpp"

namespace mpe2 {

struct BenchRecord {
  std::string image;
  std::string algorithm;  // Algorithm::descriptor()
  double fraction = 1.0;
  std::size_t payload_bits = 0;
  std::size_t max_capacity = 0;
  double psnr_db = 0.0;  // +inf when nothing changed, NaN on failure
  double elapsed_ms = 0.0;
  std::uint64_t rng_seed = 0;
  bool roundtrip_ok = false;
  std::string error;  // diagnostic when the record failed; not part of the CSV
};

struct BenchOptions {
  // When false elapsed_ms is written as 0 so that repeated runs produce
  // byte-identical CSV.
  bool measure_time = true;
  unsigned threads = 1;
};

struct NamedImage {
  std::string name;
  GrayImage image;
};

// Deterministic payload: std::mt19937_64 seeded via std::seed_seq, 64 bits
// per draw, consumed MSB-first.
BitStream random_payload(std::size_t bits, std::uint64_t seed);

// FNV-1a of the run seed and the record identity, so a record's payload
// does not depend on the order in which records are computed.
std::uint64_t record_seed(std::uint64_t run_seed, std::string_view image,
                          std::string_view algorithm, double fraction);

// One record per (image, algorithm, fraction) in nested input order. Each
// record embeds floor(fraction * capacity) random bits and checks the round
// trip. Failures are flagged, never dropped.
// Throws InvalidArgument when a fraction lies outside (0, 1].
std::vector<BenchRecord> bench_run(std::span<const NamedImage> corpus,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const double> fractions, std::uint64_t seed,
                                   const BenchOptions& options = {});

// Loads each file (record name = file stem). Unreadable files produce
// failed records for every configuration.
std::vector<BenchRecord> bench_run(std::span<const std::filesystem::path> corpus,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const double> fractions, std::uint64_t seed,
                                   const BenchOptions& options = {});

// Header "image,algorithm,payload_bits,max_capacity,psnr_db,elapsed_ms,
// rng_seed,roundtrip_ok" and one row per record.
std::string write_csv(std::span<const BenchRecord> records);

// Every MPE2 and baseline variant, plus 1bin with three or four predictors.
std::vector<Algorithm> standard_algorithms();

GrayImage read_pgm_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace mpe2
