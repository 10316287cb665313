// Reproducible Monte Carlo BER/FER engine over BPSK-AWGN, comparing the
// baseline construction against threshold-optimized variants.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarcc/codec.hpp"
#include "polarcc/construction.hpp"
#include "polarcc/random.hpp"
#include "polarcc/reliability.hpp"
#include "polarcc/tree.hpp"

namespace polarcc {

struct SimConfig {
    int n = 1024;
    int k = 512;
    double epsilon_design = 0.3;
    std::vector<double> thresholds;          // optimizer settings besides the baseline
    std::vector<double> ebno_db{1.0, 2.0, 3.0};
    std::int64_t max_frames = 100000;
    std::int64_t min_frame_errors = 100;     // 0 = always run max_frames
    std::uint64_t master_seed = 1;
    Kernel kernel = Kernel::MinSum;

    double rate() const { return static_cast<double>(k) / static_cast<double>(n); }
};

// Throws invalid_argument when fields are out of range.
void validate(const SimConfig& config);

struct SimResult {
    double ebno_db = 0.0;
    std::int64_t frames = 0;
    std::int64_t bit_errors = 0;
    std::int64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    std::string seed_provenance;
    // Sum of squared per-frame bit-error counts; errors cluster within
    // frames, so BER confidence intervals need this second moment.
    double bit_errors_sq_sum = 0.0;

    bool operator==(const SimResult&) const = default;
};

// BPSK over AWGN: s = 1 - 2x, sigma^2 = 1 / (2 rate 10^(ebno_db/10)),
// y = s + sigma g, llr = 2 y / sigma^2.  Requires rate in (0, 1].
std::vector<double> awgn_bpsk_llr(const std::vector<std::uint8_t>& codeword,
                                  double ebno_db, double rate, FrameRng& rng);

// Which decoder the engine drives.
enum class DecoderKind : std::uint8_t { FastSsc, Sc, FastN0N1 };

// Simulate one Eb/N0 point (must appear in config.ebno_db; its index salts
// the per-frame seeds).  Frames run until max_frames or, when
// min_frame_errors > 0, through the frame whose error reaches that count.
// Results are byte-identical for any worker count.
SimResult run_point(const SimConfig& config, const BitLayout& layout, double ebno_db,
                    int workers = 1, DecoderKind decoder = DecoderKind::FastSsc);

// One construction (baseline or one threshold) with its latency and curves.
struct ConstructionRun {
    double threshold = 0.0;  // 0 = baseline
    BitLayout layout;
    std::vector<SwapRecord> swaps;
    std::vector<LatencyReport> latency;  // one report per overhead mode
    std::vector<SimResult> points;       // one per config.ebno_db entry
};

struct ComparisonResult {
    SimConfig config;
    ReliabilityProfile profile;
    std::vector<ConstructionRun> runs;  // runs[0] is the baseline
};

// Full matrix: baseline plus every config.thresholds entry, each simulated
// across config.ebno_db, with latency reductions relative to the baseline.
ComparisonResult compare_constructions(const SimConfig& config, int workers = 1,
                                       DecoderKind decoder = DecoderKind::FastSsc);

}  // namespace polarcc
