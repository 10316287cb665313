#include "polarcc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace polarcc {

void validate(const SimConfig& config) {
    if (config.n < 2 || (config.n & (config.n - 1)) != 0)
        throw std::invalid_argument("n must be a power of two >= 2");
    if (config.k < 1 || config.k > config.n)
        throw std::invalid_argument("k must lie in [1, n]");
    if (!(config.epsilon_design >= 0.0 && config.epsilon_design <= 1.0))
        throw std::invalid_argument("epsilon_design must lie in [0, 1]");
    if (config.max_frames < 1) throw std::invalid_argument("max_frames must be >= 1");
    if (config.min_frame_errors < 0)
        throw std::invalid_argument("min_frame_errors must be >= 0");
    if (config.ebno_db.empty()) throw std::invalid_argument("ebno_db list must not be empty");
    for (double th : config.thresholds)
        if (!(th >= 0.0)) throw std::invalid_argument("thresholds must be >= 0");
}

std::vector<double> awgn_bpsk_llr(const std::vector<std::uint8_t>& codeword,
                                  double ebno_db, double rate, FrameRng& rng) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("rate must lie in (0, 1]");
    const double sigma_sq = 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
    const double sigma = std::sqrt(sigma_sq);
    const double scale = 2.0 / sigma_sq;
    std::vector<double> llrs(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double symbol = codeword[i] ? -1.0 : 1.0;
        llrs[i] = scale * (symbol + sigma * rng.gaussian());
    }
    return llrs;
}

namespace {

// Info-bit errors of one self-contained frame: generate, encode, disturb,
// decode, compare.  Depends only on (config, layout, point_index, frame).
int simulate_frame(const SimConfig& config, const BitLayout& layout,
                   const PrunedTree* tree, DecoderKind kind, Decoder& decoder,
                   double ebno_db, std::uint64_t point_index, std::int64_t frame) {
    FrameRng rng(derive_seed(config.master_seed, point_index,
                             static_cast<std::uint64_t>(frame)));
    std::vector<std::uint8_t> info(static_cast<std::size_t>(layout.k));
    for (auto& bit : info) bit = rng.bit();
    const auto codeword = encode(layout, info);
    const auto llrs = awgn_bpsk_llr(codeword, ebno_db, config.rate(), rng);
    const DecodeResult decoded = kind == DecoderKind::Sc
                                     ? decoder.sc_decode(llrs, layout)
                                     : decoder.fast_decode(llrs, *tree);
    int errors = 0;
    for (std::size_t i = 0; i < info.size(); ++i)
        errors += info[i] != decoded.info_bits[i];
    return errors;
}

}  // namespace

SimResult run_point(const SimConfig& config, const BitLayout& layout, double ebno_db,
                    int workers, DecoderKind kind) {
    validate(config);
    if (layout.n() != config.n || layout.k != config.k)
        throw std::invalid_argument("layout does not match config (n, k)");
    std::int64_t point_index = -1;
    for (std::size_t i = 0; i < config.ebno_db.size(); ++i)
        if (config.ebno_db[i] == ebno_db) {
            point_index = static_cast<std::int64_t>(i);
            break;
        }
    if (point_index < 0)
        throw std::invalid_argument("ebno_db must be one of config.ebno_db");
    if (workers < 1) workers = 1;

    PrunedTree tree;
    if (kind != DecoderKind::Sc)
        tree = build_pruned_tree(layout, kind == DecoderKind::FastN0N1
                                             ? PruneSet::N0N1Only
                                             : PruneSet::Full);

    SimResult result;
    result.ebno_db = ebno_db;
    result.seed_provenance =
        "mt19937_64/box-muller, seed=splitmix64_chain(master=" +
        std::to_string(config.master_seed) + ", point=" + std::to_string(point_index) +
        ", frame)";

    // Frames are processed in fixed blocks: each block is fanned out to the
    // workers, then folded sequentially in frame order so the stopping frame
    // (and hence every tally) is identical for any worker count.
    const std::int64_t block = 256;
    std::vector<int> frame_errors_buf(static_cast<std::size_t>(block));
    bool stopped = false;
    for (std::int64_t start = 0; start < config.max_frames && !stopped; start += block) {
        const std::int64_t count = std::min(block, config.max_frames - start);
        auto chunk = [&](std::int64_t lo, std::int64_t hi) {
            Decoder decoder(config.n, config.kernel);
            for (std::int64_t f = lo; f < hi; ++f)
                frame_errors_buf[static_cast<std::size_t>(f - start)] = simulate_frame(
                    config, layout, &tree, kind, decoder, ebno_db,
                    static_cast<std::uint64_t>(point_index), f);
        };
        if (workers == 1 || count == 1) {
            chunk(start, start + count);
        } else {
            const int used = static_cast<int>(std::min<std::int64_t>(workers, count));
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> failures(static_cast<std::size_t>(used));
            pool.reserve(static_cast<std::size_t>(used));
            for (int w = 0; w < used; ++w) {
                const std::int64_t lo = start + count * w / used;
                const std::int64_t hi = start + count * (w + 1) / used;
                pool.emplace_back([&, lo, hi, w] {
                    try {
                        chunk(lo, hi);
                    } catch (...) {
                        failures[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& failure : failures)
                if (failure) std::rethrow_exception(failure);
        }
        for (std::int64_t f = 0; f < count; ++f) {
            const int errs = frame_errors_buf[static_cast<std::size_t>(f)];
            ++result.frames;
            result.bit_errors += errs;
            result.bit_errors_sq_sum += static_cast<double>(errs) * errs;
            if (errs > 0) ++result.frame_errors;
            if (config.min_frame_errors > 0 &&
                result.frame_errors >= config.min_frame_errors) {
                stopped = true;
                break;
            }
        }
    }

    const double info_bits = static_cast<double>(result.frames) * config.k;
    result.ber = info_bits > 0 ? static_cast<double>(result.bit_errors) / info_bits : 0.0;
    result.fer = result.frames > 0
                     ? static_cast<double>(result.frame_errors) / static_cast<double>(result.frames)
                     : 0.0;
    return result;
}

ComparisonResult compare_constructions(const SimConfig& config, int workers,
                                       DecoderKind decoder) {
    validate(config);
    ComparisonResult result;
    result.config = config;
    result.profile = bec_profile(config.epsilon_design, config.n);

    const BitLayout baseline = baseline_layout(result.profile, config.k);
    static constexpr OverheadMode kModes[] = {
        OverheadMode::SumOfLeaves, OverheadMode::PlusTwoPerMixed, OverheadMode::Calibrated};

    auto build_run = [&](double threshold) {
        ConstructionRun run;
        run.threshold = threshold;
        if (threshold == 0.0) {
            run.layout = baseline;
        } else {
            OptimizeResult opt = optimize_layout(baseline, result.profile, threshold);
            run.layout = std::move(opt.layout);
            run.swaps = std::move(opt.swaps);
        }
        const PrunedTree tree = build_pruned_tree(run.layout);
        for (OverheadMode mode : kModes) run.latency.push_back(total_latency(tree, mode));
        for (double ebno : config.ebno_db)
            run.points.push_back(run_point(config, run.layout, ebno, workers, decoder));
        return run;
    };

    result.runs.push_back(build_run(0.0));
    for (double threshold : config.thresholds) result.runs.push_back(build_run(threshold));

    // Reductions are relative to the baseline construction under the same mode.
    for (std::size_t r = 1; r < result.runs.size(); ++r)
        for (std::size_t m = 0; m < result.runs[r].latency.size(); ++m)
            set_baseline(result.runs[r].latency[m],
                         result.runs[0].latency[m].total_cycles);

    return result;
}

}  // namespace polarcc
