#include "mpe2/bench.hpp"

#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <thread>

#include "mpe2/error.hpp"
#include "mpe2/metrics.hpp"

namespace mpe2 {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw FormatError("error reading " + path.string());
  return bytes;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  try {
    return load_pgm(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

BitStream random_payload(std::size_t bits, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::uint8_t> bytes((bits + 7) / 8, 0);
  for (std::size_t k = 0; k < bytes.size(); k += 8) {
    std::uint64_t word = rng();
    for (std::size_t b = 0; b < 8 && k + b < bytes.size(); ++b) {
      bytes[k + b] = static_cast<std::uint8_t>(word >> (56 - 8 * b));
    }
  }
  if (const std::size_t used = bits & 7; used != 0) {
    bytes.back() &= static_cast<std::uint8_t>(0xFFu << (8 - used));
  }
  return BitStream::from_bytes(std::move(bytes), bits);
}

std::uint64_t record_seed(std::uint64_t run_seed, std::string_view image,
                          std::string_view algorithm, double fraction) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ run_seed;
  auto mix = [&h](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
    h ^= 0xff;
    h *= 0x100000001b3ull;
  };
  mix(image);
  mix(algorithm);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, fraction);
  mix(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
  return h;
}

namespace {

void validate_fractions(std::span<const double> fractions) {
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw InvalidArgument("payload fraction " + std::to_string(f) + " outside (0, 1]");
    }
  }
}

BenchRecord run_one(const NamedImage& img, const Algorithm& alg, double fraction,
                    std::uint64_t run_seed, const BenchOptions& options) {
  BenchRecord rec;
  rec.image = img.name;
  rec.algorithm = alg.descriptor();
  rec.fraction = fraction;
  rec.rng_seed = run_seed;
  rec.psnr_db = std::numeric_limits<double>::quiet_NaN();
  try {
    rec.max_capacity = capacity(alg, img.image);
    rec.payload_bits =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(rec.max_capacity)));
    const BitStream payload =
        random_payload(rec.payload_bits, record_seed(run_seed, rec.image, rec.algorithm, fraction));

    const auto start = std::chrono::steady_clock::now();
    EmbedOutcome stego = embed(alg, img.image, payload);
    ExtractOutcome back = extract(alg, stego.stego, stego.meta);
    const auto stop = std::chrono::steady_clock::now();

    if (options.measure_time) {
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    rec.psnr_db = psnr(img.image, stego.stego);
    rec.roundtrip_ok = back.payload == payload && back.recovered == img.image &&
                       stego.bits_embedded == rec.payload_bits;
    if (!rec.roundtrip_ok) rec.error = "round trip mismatch";
  } catch (const std::exception& e) {
    rec.roundtrip_ok = false;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> bench_run(std::span<const NamedImage> corpus,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const double> fractions, std::uint64_t seed,
                                   const BenchOptions& options) {
  validate_fractions(fractions);
  const std::size_t per_image = algorithms.size() * fractions.size();
  std::vector<BenchRecord> records(corpus.size() * per_image);

  // Each worker owns whole images; slots are preassigned so output order
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      std::size_t slot = i * per_image;
      for (const Algorithm& alg : algorithms) {
        for (double f : fractions) records[slot++] = run_one(corpus[i], alg, f, seed, options);
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(corpus.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return records;
}

std::vector<BenchRecord> bench_run(std::span<const std::filesystem::path> corpus,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const double> fractions, std::uint64_t seed,
                                   const BenchOptions& options) {
  validate_fractions(fractions);
  std::vector<NamedImage> images;
  std::vector<std::pair<std::size_t, std::string>> failed;  // position, diagnostic
  for (const auto& path : corpus) {
    try {
      images.push_back({path.stem().string(), read_pgm_file(path)});
    } catch (const std::exception& e) {
      failed.emplace_back(images.size() + failed.size(), e.what());
    }
  }
  std::vector<BenchRecord> good = bench_run(std::span<const NamedImage>(images), algorithms,
                                            fractions, seed, options);
  if (failed.empty()) return good;

  // Re-interleave failed images at their input positions.
  const std::size_t per_image = algorithms.size() * fractions.size();
  std::vector<BenchRecord> out;
  out.reserve(corpus.size() * per_image);
  auto next_good = good.begin();
  auto next_failed = failed.begin();
  for (std::size_t pos = 0; pos < corpus.size(); ++pos) {
    if (next_failed != failed.end() && next_failed->first == pos) {
      for (const Algorithm& alg : algorithms) {
        for (double f : fractions) {
          BenchRecord rec;
          rec.image = corpus[pos].stem().string();
          rec.algorithm = alg.descriptor();
          rec.fraction = f;
          rec.rng_seed = seed;
          rec.psnr_db = std::numeric_limits<double>::quiet_NaN();
          rec.error = next_failed->second;
          out.push_back(std::move(rec));
        }
      }
      ++next_failed;
    } else {
      for (std::size_t k = 0; k < per_image; ++k) out.push_back(std::move(*next_good++));
    }
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string fixed(double v, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return {buf, ptr};
}

}  // namespace

std::string write_csv(std::span<const BenchRecord> records) {
  std::string out =
      "image,algorithm,payload_bits,max_capacity,psnr_db,elapsed_ms,rng_seed,roundtrip_ok\n";
  for (const BenchRecord& r : records) {
    out += csv_field(r.image);
    out += ',';
    out += csv_field(r.algorithm);
    out += ',';
    out += std::to_string(r.payload_bits);
    out += ',';
    out += std::to_string(r.max_capacity);
    out += ',';
    out += format_db(r.psnr_db);
    out += ',';
    out += fixed(r.elapsed_ms, 3);
    out += ',';
    out += std::to_string(r.rng_seed);
    out += ',';
    out += r.roundtrip_ok ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<Algorithm> standard_algorithms() {
  using K = PredictorKind;
  return {
      Algorithm::mpe2(Variant::OneBin),
      Algorithm::mpe2(Variant::TwoBin),
      Algorithm::mpe2(Variant::ThreeBin),
      Algorithm::mpe_baseline(Variant::TwoBin),
      Algorithm::mpe_baseline(Variant::ThreeBin),
      Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median}),
      Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median, K::Min}),
  };
}

}  // namespace mpe2
