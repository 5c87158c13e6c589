// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Usage: mpe2_acceptance <corpus-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mpe2/bench.hpp"
#include "mpe2/engine.hpp"
#include "mpe2/error.hpp"
#include "mpe2/metrics.hpp"
#include "mpe2/sidecar.hpp"

using namespace mpe2;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Reference {
  std::size_t cap1, cap2, cap3;
  double psnr1;
};

// Published full-capacity figures for the images whose names match the
// bundled corpus. Other corpus images have no published counterpart.
const std::map<std::string, Reference> kReference = {
    {"lena", {57406, 77746, 101121, 49.64}},
    {"baboon", {40957, 48250, 64019, 49.67}},
    {"barbara", {37685, 50445, 65619, 49.52}},
};

constexpr double kCapacityTolerance = 0.05;
constexpr double kPsnrTolerance = 0.5;
constexpr double kPsnrBandLo = 48.5, kPsnrBandHi = 50.5;
constexpr double kFloorTolerance = 0.01;
constexpr double kMultiPredictorSpread = 0.20;
constexpr double kRunSecondsPerPair = 2.0;
constexpr double kOracleSeconds = 1.0;
constexpr std::uint64_t kSeed = 20130101;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
  if (!ok) ++failures;
}

void detail(const std::string& s) { std::cout << "  " << s << "\n"; }

std::string fmt(double v, int prec = 2) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << v;
  return o.str();
}

struct Corpus {
  std::vector<NamedImage> images;
};

Corpus load_corpus(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  Corpus c;
  for (const auto& f : files) c.images.push_back({f.stem().string(), read_pgm_file(f)});
  return c;
}

int distortion_bound(const Algorithm& alg) {
  if (alg.variant() == Variant::OneBin) return 1;
  if (alg.family() == Family::MpeBaseline && alg.variant() == Variant::TwoBin) return 1;
  return 2;
}

// Criterion 3 is evaluated during the criterion 1 sweep and reported later.
std::function<void()> pending_distortion_report;

void reversibility_and_distortion(const Corpus& corpus) {
  const auto algs = standard_algorithms();
  const double fractions[] = {0.25, 0.5, 1.0};
  std::size_t runs = 0, roundtrip_bad = 0, distortion_bad = 0, slow = 0;
  double worst_seconds = 0;
  for (const NamedImage& img : corpus.images) {
    for (const Algorithm& alg : algs) {
      const std::size_t cap = capacity(alg, img.image);
      double seconds = 0;
      int max_seen = 0;
      for (double f : fractions) {
        ++runs;
        const auto n = static_cast<std::size_t>(std::floor(f * static_cast<double>(cap)));
        const BitStream payload = random_payload(n, record_seed(kSeed, img.name, alg.descriptor(), f));
        const auto t0 = Clock::now();
        const EmbedOutcome r = embed(alg, img.image, payload);
        bool ok = false;
        try {
          const ExtractOutcome x = extract(alg, r.stego, r.meta);
          ok = x.payload == payload && x.recovered == img.image;
        } catch (const Error& e) {
          detail(img.name + " " + alg.descriptor() + ": " + e.what());
        }
        seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        if (!ok) {
          ++roundtrip_bad;
          detail("round trip failed: " + img.name + " " + alg.descriptor() + " f=" + fmt(f));
        }

        const std::size_t w = img.image.width();
        bool bounded = true;
        for (std::size_t k = 0; k < img.image.size(); ++k) {
          const int d = std::abs(int(r.stego.pixels()[k]) - int(img.image.pixels()[k]));
          max_seen = std::max(max_seen, d);
          const bool border = k < w || k % w == 0;
          if (d > distortion_bound(alg) || ((border || k > r.meta.last_index) && d != 0)) bounded = false;
        }
        if (!bounded) {
          ++distortion_bad;
          detail("distortion bound violated: " + img.name + " " + alg.descriptor() + " f=" + fmt(f));
        }
      }
      // OneBin must actually reach its bound of 1 on a non-empty run.
      if (alg.variant() == Variant::OneBin && cap > 0 && max_seen != 1) {
        ++distortion_bad;
        detail("max |stego-cover| for " + img.name + " " + alg.descriptor() + " is " +
               std::to_string(max_seen));
      }
      worst_seconds = std::max(worst_seconds, seconds);
      if (seconds >= kRunSecondsPerPair) ++slow;
    }
  }
  detail("corpus runs: " + std::to_string(runs) + ", slowest (image, algorithm): " + fmt(worst_seconds, 3) +
         " s");
  report(1, corpus.images.size() >= 6 && roundtrip_bad == 0 && slow == 0,
         "bit-exact payload and cover recovery on " + std::to_string(corpus.images.size()) +
             " images x " + std::to_string(algs.size()) + " algorithms x 3 fractions (" +
             std::to_string(roundtrip_bad) + " failures, " + std::to_string(slow) + " over " +
             fmt(kRunSecondsPerPair, 0) + " s)");
  pending_distortion_report = [distortion_bad] {
    report(3, distortion_bad == 0,
           "per-pixel distortion within 1 (OneBin) / 2 (TwoBin, ThreeBin), border and post-L "
           "pixels untouched (" +
               std::to_string(distortion_bad) + " violations)");
  };
}

// Extracting from the shifted vector must recover the bit and undo the delta.
std::size_t oracle_violations(const Algorithm& alg, int lo, int hi) {
  const std::size_t n = alg.kinds().size();
  std::vector<int> v(n, lo);
  std::size_t bad = 0;
  while (true) {
    const ErrorVector e{std::span<const int>(v)};
    for (int bit : {0, 1}) {
      const PixelAction a = classify_embed(alg, e, bit);
      try {
        const ExtractDecision d = classify_extract(alg, e.shifted(a.delta));
        const std::optional<int> want =
            a.kind == PixelAction::Kind::Embed ? std::optional<int>(bit) : std::nullopt;
        if (d.bit != want || d.restore_delta != -a.delta) ++bad;
      } catch (const InconsistentState&) {
        ++bad;
      }
    }
    std::size_t k = 0;
    while (k < n && ++v[k] > hi) v[k++] = lo;
    if (k == n) break;
  }
  return bad;
}

void exhaustive_oracle() {
  using K = PredictorKind;
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  for (Variant v : {Variant::OneBin, Variant::TwoBin, Variant::ThreeBin}) {
    bad += oracle_violations(Algorithm::mpe2(v), -8, 8);
  }
  for (Variant v : {Variant::TwoBin, Variant::ThreeBin}) {
    bad += oracle_violations(Algorithm::mpe_baseline(v), -8, 8);
  }
  bad += oracle_violations(Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median}), -4, 4);
  bad += oracle_violations(Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median, K::Min}), -4, 4);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  report(2, bad == 0 && seconds < kOracleSeconds,
         "rule tables invert over [-8,8]^2 and [-4,4]^n (" + std::to_string(bad) + " violations, " +
             fmt(seconds, 3) + " s)");
}

void analytic_floors() {
  const double want[] = {49.89, 45.91, 43.87};
  const Variant vs[] = {Variant::OneBin, Variant::TwoBin, Variant::ThreeBin};
  bool ok = true;
  std::string got;
  for (int k = 0; k < 3; ++k) {
    const double f = theoretical_floor(vs[k]);
    ok &= std::abs(f - want[k]) <= kFloorTolerance;
    got += (k ? " / " : "") + fmt(f, 3);
  }
  report(4, ok, "analytic PSNR floors " + got + " dB");
}

void psnr_reproduction(const Corpus& corpus) {
  const Algorithm alg = Algorithm::mpe2(Variant::OneBin);
  bool band_ok = true, ref_ok = true;
  for (const NamedImage& img : corpus.images) {
    const std::size_t cap = capacity(alg, img.image);
    const BitStream payload = random_payload(cap, record_seed(kSeed, img.name, alg.descriptor(), 1.0));
    const double p = psnr(img.image, embed(alg, img.image, payload).stego);
    const bool in_band = p >= kPsnrBandLo && p <= kPsnrBandHi;
    band_ok &= in_band;
    std::string line = img.name + ": " + fmt(p) + " dB" + (in_band ? "" : " (outside band)");
    if (auto it = kReference.find(img.name); it != kReference.end()) {
      const bool close = std::abs(p - it->second.psnr1) <= kPsnrTolerance;
      ref_ok &= close;
      line += ", published " + fmt(it->second.psnr1) + (close ? " ok" : " MISS");
    }
    detail(line);
  }
  report(5, band_ok && ref_ok,
         "full-capacity OneBin PSNR in [" + fmt(kPsnrBandLo, 1) + ", " + fmt(kPsnrBandHi, 1) +
             "] dB and within " + fmt(kPsnrTolerance, 1) + " dB of published values");
}

void capacity_reproduction(const Corpus& corpus) {
  const Algorithm one = Algorithm::mpe2(Variant::OneBin);
  const Algorithm two = Algorithm::mpe2(Variant::TwoBin);
  const Algorithm three = Algorithm::mpe2(Variant::ThreeBin);
  const Algorithm base2 = Algorithm::mpe_baseline(Variant::TwoBin);
  bool tol_ok = true, order_ok = true, vs_base_ok = true;
  for (const NamedImage& img : corpus.images) {
    const std::size_t c1 = capacity(one, img.image), c2 = capacity(two, img.image),
                      c3 = capacity(three, img.image), cb = capacity(base2, img.image);
    const bool ordered = c3 > c2 && c2 > c1;
    const bool beats_base = c1 > cb;
    order_ok &= ordered;
    vs_base_ok &= beats_base;
    std::string line = img.name + ": 1bin " + std::to_string(c1) + ", 2bin " + std::to_string(c2) +
                       ", 3bin " + std::to_string(c3) + ", mpe-2bin " + std::to_string(cb);
    if (!ordered) line += " [3bin>2bin>1bin violated]";
    if (!beats_base) line += " [1bin <= mpe-2bin]";
    detail(line);
    if (auto it = kReference.find(img.name); it != kReference.end()) {
      const std::size_t got[] = {c1, c2, c3};
      const std::size_t want[] = {it->second.cap1, it->second.cap2, it->second.cap3};
      std::string ref = "  published " + img.name + ":";
      for (int k = 0; k < 3; ++k) {
        const double rel = (double(got[k]) - double(want[k])) / double(want[k]);
        const bool close = std::abs(rel) <= kCapacityTolerance;
        tol_ok &= close;
        ref += " " + std::to_string(want[k]) + " (" + (rel >= 0 ? "+" : "") + fmt(100 * rel, 1) + "%" +
               (close ? "" : " MISS") + ")";
      }
      detail(ref);
    }
  }
  report(6, tol_ok && order_ok && vs_base_ok,
         std::string("capacities within 5% of published values") + (tol_ok ? "" : " [miss]") +
             ", 3bin > 2bin > 1bin on every image" + (order_ok ? "" : " [miss]") +
             ", 1bin MPE2 > 2bin MPE on every image" + (vs_base_ok ? "" : " [miss]"));
}

void capacity_identity(const Corpus& corpus) {
  bool ok = true;
  for (const NamedImage& img : corpus.images) {
    for (const Algorithm& alg : standard_algorithms()) {
      const std::size_t cap = capacity(alg, img.image);
      std::vector<std::size_t> positions[2];
      std::size_t embedded[2] = {0, 0};
      for (int k = 0; k < 2; ++k) {
        const BitStream payload = random_payload(cap, kSeed + 1 + k);
        const EmbedOutcome r =
            embed(alg, img.image, payload, [&](std::size_t index, const PixelAction& a) {
              if (a.kind == PixelAction::Kind::Embed) positions[k].push_back(index);
            });
        embedded[k] = r.bits_embedded;
      }
      const bool same = embedded[0] == cap && embedded[1] == cap && positions[0] == positions[1] &&
                        positions[0].size() == cap;
      if (!same) detail("identity broken: " + img.name + " " + alg.descriptor());
      ok &= same;
    }
  }
  report(7, ok, "capacity equals bits embedded for a saturating payload, embed positions independent of payload");
}

void multi_predictor(const Corpus& corpus) {
  using K = PredictorKind;
  const Algorithm two = Algorithm::mpe2(Variant::OneBin);
  const Algorithm three = Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median});
  const Algorithm four = Algorithm::mpe2(Variant::OneBin, {K::Med, K::Mean, K::Median, K::Min});
  const PredictorSet sets[] = {PredictorSet::standard(), PredictorSet{K::Med, K::Mean, K::Median},
                               PredictorSet{K::Med, K::Mean, K::Median, K::Min}};
  bool ok = true;
  bool trend = true;
  for (const NamedImage& img : corpus.images) {
    const std::size_t c2 = capacity(two, img.image);
    for (const Algorithm* alg : {&three, &four}) {
      const std::size_t c = capacity(*alg, img.image);
      const double rel = std::abs(double(c) - double(c2)) / double(c2);
      const BitStream payload = random_payload(c, kSeed);
      bool rt = false;
      const EmbedOutcome r = embed(*alg, img.image, payload);
      try {
        const ExtractOutcome x = extract(*alg, r.stego, r.meta);
        rt = x.payload == payload && x.recovered == img.image;
      } catch (const Error&) {
      }
      ok &= rt && rel < kMultiPredictorSpread;
      detail(img.name + " " + alg->descriptor() + ": capacity " + std::to_string(c) + " vs " +
             std::to_string(c2) + " (" + fmt(100 * rel, 1) + "%)" + (rt ? "" : " round trip FAILED"));
    }
    std::size_t prev = SIZE_MAX;
    std::string counts;
    for (const PredictorSet& s : sets) {
      const PolarityCounts pc = polarity_stats(s, img.image);
      const std::size_t unipolar = pc.has_zero_unipolar + pc.all_positive + pc.all_negative;
      trend &= unipolar <= prev;
      prev = unipolar;
      counts += " " + std::to_string(unipolar);
    }
    detail(img.name + " unipolar counts (2/3/4 predictors):" + counts);
  }
  detail(std::string("polarity trend (non-increasing unipolar count): ") +
         (trend ? "holds" : "does not hold") + " (logged only)");
  report(8, ok, "3 and 4 predictor OneBin round trips and capacity within 20% of the 2-predictor value");
}

void format_round_trips() {
  std::mt19937_64 rng(kSeed);
  std::size_t pgm_bad = 0, sidecar_bad = 0, reject_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
    std::vector<std::uint8_t> px(w * h);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    const GrayImage img(w, h, px);
    if (!(load_pgm(save_pgm(img)) == img)) ++pgm_bad;
  }
  const std::vector<Algorithm> algs = standard_algorithms();
  for (int trial = 0; trial < 1000; ++trial) {
    EmbedMeta m;
    m.algorithm = algs[rng() % algs.size()];
    m.width = 2 + rng() % 600;
    m.height = 2 + rng() % 600;
    if (rng() % 8 == 0) {
      m.last_index = m.sentinel();
    } else {
      m.last_index = (1 + rng() % (m.height - 1)) * m.width + 1 + rng() % (m.width - 1);
      m.payload_bits = 1 + rng() % ((m.width - 1) * (m.height - 1));
      std::set<std::size_t> oh;
      for (int k = rng() % 8; k > 0; --k) {
        const std::size_t idx = (1 + rng() % (m.height - 1)) * m.width + 1 + rng() % (m.width - 1);
        if (idx < m.last_index) oh.insert(idx);
      }
      m.overhead.assign(oh.begin(), oh.end());
    }
    try {
      const std::string text = write_sidecar(m);
      const EmbedMeta back = read_sidecar(text);
      if (!(back == m) || write_sidecar(back) != text) ++sidecar_bad;
    } catch (const Error&) {
      ++sidecar_bad;
    }
  }
  auto must_throw = [&](const std::function<void()>& f) {
    try {
      f();
      ++reject_bad;
    } catch (const FormatError&) {
    }
  };
  for (int pad = 1; pad < 4; ++pad) {
    must_throw([pad] { BitStream::from_bytes({static_cast<std::uint8_t>(0x74 | pad)}, 6); });
  }
  EmbedMeta sample;
  sample.width = sample.height = 4;
  sample.payload_bits = 2;
  sample.last_index = 10;
  sample.overhead = {5, 9};
  const std::string good = write_sidecar(sample);
  auto edit = [&good](const std::string& from, const std::string& to) {
    std::string s = good;
    return s.replace(s.find(from), from.size(), to);
  };
  for (const std::string& bad : {edit("MPE2META 1", "MPE2META 2"), edit("5\n9\n", "9\n5\n"),
                                 edit("med,mean", "med,avg"), edit("last_index 10", "last_index 40"),
                                 edit("overhead_count 2", "overhead_count 3"), good + "junk\n",
                                 edit("\n", "\r\n")}) {
    must_throw([&bad] { read_sidecar(bad); });
  }
  report(9, pgm_bad == 0 && sidecar_bad == 0 && reject_bad == 0,
         "1000 PGM and 1000 sidecar round trips, dirty padding and malformed sidecars rejected (" +
             std::to_string(pgm_bad + sidecar_bad) + " round-trip failures, " + std::to_string(reject_bad) +
             " accepted bad inputs)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: mpe2_acceptance <corpus-dir>\n";
    return 2;
  }
  Corpus corpus;
  try {
    corpus = load_corpus(argv[1]);
  } catch (const std::exception& e) {
    std::cerr << "cannot load corpus: " << e.what() << "\n";
    return 2;
  }
  std::cout << "corpus: " << corpus.images.size() << " images from " << argv[1] << "\n";

  reversibility_and_distortion(corpus);
  exhaustive_oracle();
  pending_distortion_report();
  analytic_floors();
  psnr_reproduction(corpus);
  capacity_reproduction(corpus);
  capacity_identity(corpus);
  multi_predictor(corpus);
  format_round_trips();

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
