#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <unistd.h>
#include <vector>

#include "mpe2/bench.hpp"
#include "mpe2/engine.hpp"
#include "mpe2/error.hpp"
#include "mpe2/metrics.hpp"
#include "mpe2/sidecar.hpp"

namespace mpe2::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgorithmFlags {
  std::string family = "mpe2";
  std::string variant = "1bin";
  std::string predictors = "med,mean";
  CLI::Option* predictors_opt = nullptr;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--family", family, "mpe2 or mpe (single-predictor baseline)")
        ->capture_default_str();
    cmd.add_option("--variant", variant, "1bin, 2bin or 3bin")->capture_default_str();
    predictors_opt = cmd.add_option("--predictors", predictors,
                                    "comma-separated list of med, mean, median, min")
                         ->capture_default_str();
  }

  Algorithm resolve() const {
    try {
      const Family fam = parse_family(family);
      const Variant var = parse_variant(variant);
      if (fam == Family::MpeBaseline) {
        if (predictors_opt->count() > 0 && predictors != "med") {
          throw UsageError("--family mpe uses the med predictor only");
        }
        return Algorithm::mpe_baseline(var);
      }
      return Algorithm::mpe2(var, PredictorSet::parse(predictors));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

fs::path normalized(const fs::path& p) {
  std::error_code ec;
  fs::path n = fs::weakly_canonical(p, ec);
  return ec ? fs::absolute(p) : n;
}

void refuse_overwrite(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                      bool force) {
  for (std::size_t a = 0; a < outputs.size(); ++a) {
    for (std::size_t b = a + 1; b < outputs.size(); ++b) {
      if (normalized(outputs[a]) == normalized(outputs[b])) {
        throw UsageError("output paths must differ: " + outputs[a]);
      }
    }
  }
  if (force) return;
  for (const auto& out : outputs) {
    for (const auto& in : inputs) {
      if (normalized(out) == normalized(in)) {
        throw UsageError("output " + out + " would overwrite input (pass --force)");
      }
    }
  }
}

// Writes every file to a temporary sibling first, then renames them all,
// so that either all outputs appear or none do.
void write_outputs(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&staged] {
    std::error_code ec;
    for (const auto& [tmp, dst] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [path, content] : files) {
    fs::path dst(path);
    fs::path tmp = dst;
    tmp += ".tmp" + std::to_string(::getpid());
    staged.emplace_back(tmp, dst);
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) {
      cleanup();
      throw IoError("cannot write " + path);
    }
  }
  for (std::size_t k = 0; k < staged.size(); ++k) {
    std::error_code ec;
    fs::rename(staged[k].first, staged[k].second, ec);
    if (ec) {
      for (std::size_t done = 0; done < k; ++done) {
        std::error_code ignore;
        fs::remove(staged[done].second, ignore);
      }
      cleanup();
      throw IoError("cannot write " + staged[k].second.string() + ": " + ec.message());
    }
  }
}

std::string as_string(const std::vector<std::uint8_t>& bytes) {
  return {bytes.begin(), bytes.end()};
}

std::string read_text(const std::string& path) { return as_string(read_file(path)); }

int cmd_embed(const std::string& cover_path, const std::string& payload_path,
              std::optional<std::size_t> bits, const Algorithm& alg, const std::string& stego_path,
              std::string meta_path, bool force, std::ostream& out) {
  if (meta_path.empty()) meta_path = stego_path + std::string(kSidecarExtension);
  refuse_overwrite({cover_path, payload_path}, {stego_path, meta_path}, force);

  const GrayImage cover = read_pgm_file(cover_path);
  std::vector<std::uint8_t> bytes = read_file(payload_path);
  const std::size_t n = bits.value_or(bytes.size() * 8);
  const std::size_t needed = (n + 7) / 8;
  if (bytes.size() < needed) {
    throw FormatError("payload file has " + std::to_string(bytes.size()) + " bytes, " +
                      std::to_string(n) + " bits need " + std::to_string(needed));
  }
  if (bytes.size() > needed) {
    throw FormatError("payload file has " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string(needed) + " for " + std::to_string(n) + " bits");
  }
  const BitStream payload = BitStream::from_bytes(std::move(bytes), n);

  const EmbedOutcome result = embed(alg, cover, payload);
  const std::size_t cap = capacity(alg, cover);
  write_outputs({{stego_path, as_string(save_pgm(result.stego))},
                 {meta_path, write_sidecar(result.meta)}});
  out << "bits_embedded " << result.bits_embedded << "\n";
  out << "capacity " << cap << "\n";
  out << "psnr " << format_db(psnr(cover, result.stego)) << "\n";
  return kOk;
}

int cmd_extract(const std::string& stego_path, const std::string& meta_path,
                const std::string& payload_out, const std::string& recovered_out, bool force,
                std::ostream& out) {
  refuse_overwrite({stego_path, meta_path}, {payload_out, recovered_out}, force);
  const GrayImage stego = read_pgm_file(stego_path);
  const EmbedMeta meta = read_sidecar(read_text(meta_path));
  const ExtractOutcome result = extract(meta.algorithm, stego, meta);
  const auto bytes = result.payload.bytes();
  write_outputs({{payload_out, std::string(bytes.begin(), bytes.end())},
                 {recovered_out, as_string(save_pgm(result.recovered))}});
  out << "payload_bits " << result.payload.bit_length() << "\n";
  return kOk;
}

std::vector<fs::path> collect_corpus(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(in)) {
      files.emplace_back(in);
    } else {
      throw IoError("no such file or directory: " + in);
    }
  }
  if (files.empty()) throw IoError("no .pgm files found");
  return files;
}

int cmd_bench(const std::vector<std::string>& inputs, const std::string& algorithms,
              const std::string& fractions, std::uint64_t seed, unsigned threads, bool no_timing,
              const std::string& out_path, std::ostream& out) {
  std::vector<Algorithm> algs;
  std::vector<double> fracs;
  try {
    if (algorithms.empty()) {
      algs = standard_algorithms();
    } else {
      for (const auto& d : split_list(algorithms)) algs.push_back(Algorithm::parse_descriptor(d));
    }
    for (const auto& f : split_list(fractions)) {
      std::size_t used = 0;
      const double v = std::stod(f, &used);
      if (used != f.size() || !(v > 0.0 && v <= 1.0)) throw UsageError("bad fraction '" + f + "'");
      fracs.push_back(v);
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const std::logic_error&) {
    throw UsageError("bad --fractions list '" + fractions + "'");
  }
  if (fracs.empty()) throw UsageError("--fractions is empty");

  const std::vector<fs::path> corpus = collect_corpus(inputs);
  BenchOptions options;
  options.measure_time = !no_timing;
  options.threads = threads;
  const auto records = bench_run(std::span<const fs::path>(corpus), algs, fracs, seed, options);
  const std::string csv = write_csv(records);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_outputs({{out_path, csv}});
  }
  const auto failed = std::count_if(records.begin(), records.end(),
                                    [](const BenchRecord& r) { return !r.roundtrip_ok; });
  if (failed > 0) {
    const auto first = std::find_if(records.begin(), records.end(),
                                    [](const BenchRecord& r) { return !r.roundtrip_ok; });
    throw InconsistentState(std::to_string(failed) + " bench record(s) failed, first: " +
                            first->image + " " + first->algorithm + ": " + first->error);
  }
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible data hiding with dual-predictor prediction-error shifting", "mpe2"};
  app.require_subcommand(1);

  bool force = false;

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Hide a payload in a PGM cover image");
  std::string cover_path, payload_path, stego_path, meta_path;
  std::optional<std::size_t> bits;
  AlgorithmFlags embed_alg;
  embed_cmd->add_option("cover", cover_path, "cover image (binary PGM)")->required();
  embed_cmd->add_option("payload", payload_path, "payload file, bits read MSB-first")->required();
  embed_cmd->add_option("-o,--out", stego_path, "stego image to write")->required();
  embed_cmd->add_option("--meta", meta_path, "sidecar to write (default <out>.mpe2meta)");
  embed_cmd->add_option("--bits", bits, "payload length in bits (default 8 x file size)");
  embed_cmd->add_flag("--force", force, "allow outputs to replace inputs");
  embed_alg.add_to(*embed_cmd);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Recover payload and cover from a stego image");
  std::string x_stego, x_meta, x_payload, x_recovered;
  extract_cmd->add_option("stego", x_stego, "stego image (binary PGM)")->required();
  extract_cmd->add_option("--meta", x_meta, "sidecar written by embed")->required();
  extract_cmd->add_option("--payload-out", x_payload, "file for the extracted payload")->required();
  extract_cmd->add_option("-o,--out", x_recovered, "recovered cover image to write")->required();
  extract_cmd->add_flag("--force", force, "allow outputs to replace inputs");

  // capacity
  auto* capacity_cmd = app.add_subcommand("capacity", "Print the maximum payload in bits");
  std::string c_cover;
  AlgorithmFlags capacity_alg;
  capacity_cmd->add_option("cover", c_cover, "cover image (binary PGM)")->required();
  capacity_alg.add_to(*capacity_cmd);

  // psnr
  auto* psnr_cmd = app.add_subcommand("psnr", "Print the PSNR between two images in dB");
  std::string p_a, p_b;
  psnr_cmd->add_option("a", p_a)->required();
  psnr_cmd->add_option("b", p_b)->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Print prediction-error polarity counts");
  std::string s_cover;
  std::string s_predictors = "med,mean";
  stats_cmd->add_option("cover", s_cover, "cover image (binary PGM)")->required();
  stats_cmd->add_option("--predictors", s_predictors, "comma-separated predictor list")
      ->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Embed/extract across a corpus and write CSV");
  std::vector<std::string> b_inputs;
  std::string b_algorithms, b_fractions = "0.25,0.5,1.0", b_out;
  std::uint64_t b_seed = 1;
  unsigned b_threads = 1;
  bool b_no_timing = false;
  bench_cmd->add_option("corpus", b_inputs, "directories of .pgm files or individual files")
      ->required();
  bench_cmd->add_option("--algorithms", b_algorithms,
                        "comma-separated descriptors, e.g. mpe2-1bin-med+mean,mpe-2bin-med "
                        "(default: standard set)");
  bench_cmd->add_option("--fractions", b_fractions, "payload fractions of capacity")
      ->capture_default_str();
  bench_cmd->add_option("--seed", b_seed, "payload RNG seed")->capture_default_str();
  bench_cmd->add_option("--threads", b_threads, "images processed concurrently")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", b_no_timing, "write elapsed_ms as 0 for reproducible output");
  bench_cmd->add_option("--out", b_out, "CSV file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*embed_cmd) {
      return cmd_embed(cover_path, payload_path, bits, embed_alg.resolve(), stego_path, meta_path,
                       force, out);
    }
    if (*extract_cmd) return cmd_extract(x_stego, x_meta, x_payload, x_recovered, force, out);
    if (*capacity_cmd) {
      const Algorithm alg = capacity_alg.resolve();
      out << capacity(alg, read_pgm_file(c_cover)) << "\n";
      return kOk;
    }
    if (*psnr_cmd) {
      out << format_db(psnr(read_pgm_file(p_a), read_pgm_file(p_b))) << "\n";
      return kOk;
    }
    if (*stats_cmd) {
      PredictorSet set = PredictorSet::standard();
      try {
        set = PredictorSet::parse(s_predictors);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      const PolarityCounts c = polarity_stats(set, read_pgm_file(s_cover));
      out << "has_zero_unipolar " << c.has_zero_unipolar << "\n"
          << "all_positive " << c.all_positive << "\n"
          << "all_negative " << c.all_negative << "\n"
          << "mixed " << c.mixed << "\n"
          << "guard " << c.guard << "\n";
      return kOk;
    }
    if (*bench_cmd) {
      return cmd_bench(b_inputs, b_algorithms, b_fractions, b_seed, b_threads, b_no_timing, b_out,
                       out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PayloadExceedsCapacity& e) {
    err << "error: " << e.what() << "\n";
    return kCapacityExceeded;
  } catch (const InconsistentState& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const PayloadShortfall& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const Error& e) {
    // FormatError, MetaMismatch, DimensionMismatch, ImageTooSmall
    err << "error: " << e.what() << "\n";
    return kFormat;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kFormat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFormat;
  }
  return kUsage;
}

}  // namespace mpe2::cli
