#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "polarcc/random.hpp"
#include "polarcc/sim.hpp"

using namespace polarcc;

namespace {

SimConfig small_config() {
    SimConfig config;
    config.n = 64;
    config.k = 32;
    config.epsilon_design = 0.3;
    config.ebno_db = {1.0};
    config.max_frames = 2000;
    config.min_frame_errors = 0;
    config.master_seed = 7;
    return config;
}

BitLayout config_layout(const SimConfig& config) {
    return baseline_layout(bec_profile(config.epsilon_design, config.n), config.k);
}

}  // namespace

TEST_CASE("stream seeds separate points and frames") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t point = 0; point < 4; ++point)
        for (std::uint64_t frame = 0; frame < 64; ++frame)
            seen.insert(derive_seed(99, point, frame));
    CHECK(seen.size() == 4 * 64);
    CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
    CHECK(derive_seed(1, 0, 1) == derive_seed(1, 0, 1));
}

TEST_CASE("frame RNG basics") {
    FrameRng a(123);
    FrameRng b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

    FrameRng rng(321);
    double sum = 0.0;
    double sum_sq = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(draws)));
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / draws));

    FrameRng u(11);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("channel LLR statistics match the BPSK-AWGN model") {
    SUBCASE("sigma^2 = 1 gives mean LLR 2 for the zero codeword") {
        // rate 0.5 at 0 dB: sigma^2 = 1 / (2 * 0.5 * 1) = 1.
        FrameRng rng(2024);
        const std::vector<std::uint8_t> zeros(1 << 20, 0);
        const std::vector<double> llrs = awgn_bpsk_llr(zeros, 0.0, 0.5, rng);
        double mean = 0.0;
        for (const double v : llrs) mean += v;
        mean /= static_cast<double>(llrs.size());
        // llr = 2y with std 2; three sigmas over 2^20 draws.
        CHECK(std::abs(mean - 2.0) < 3.0 * 2.0 / std::sqrt(1048576.0));
    }
    SUBCASE("sigma^2 = 0.5 gives mean LLR 4") {
        // rate 0.5, Eb/N0 = 10 log10(2): sigma^2 = 1 / (2 * 0.5 * 2) = 0.5.
        FrameRng rng(2025);
        const std::vector<std::uint8_t> zeros(1 << 20, 0);
        const double ebno = 10.0 * std::log10(2.0);
        const std::vector<double> llrs = awgn_bpsk_llr(zeros, ebno, 0.5, rng);
        double mean = 0.0;
        for (const double v : llrs) mean += v;
        mean /= static_cast<double>(llrs.size());
        CHECK(std::abs(mean - 4.0) < 3.0 * (2.0 / std::sqrt(0.5)) / std::sqrt(1048576.0));
    }
    SUBCASE("the noiseless limit preserves every sign") {
        FrameRng rng(2026);
        std::vector<std::uint8_t> codeword(4096);
        for (auto& bit : codeword) bit = rng.bit();
        const std::vector<double> llrs = awgn_bpsk_llr(codeword, 200.0, 0.5, rng);
        for (std::size_t i = 0; i < codeword.size(); ++i)
            CHECK((llrs[i] < 0.0) == (codeword[i] == 1));
    }
    SUBCASE("identical seeds give identical channels") {
        FrameRng a(5);
        FrameRng b(5);
        const std::vector<std::uint8_t> word(256, 1);
        CHECK(awgn_bpsk_llr(word, 1.5, 0.25, a) == awgn_bpsk_llr(word, 1.5, 0.25, b));
    }
    SUBCASE("invalid rate is rejected") {
        FrameRng rng(1);
        const std::vector<std::uint8_t> word(4, 0);
        CHECK_THROWS_AS(awgn_bpsk_llr(word, 1.0, 0.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(awgn_bpsk_llr(word, 1.0, -0.5, rng), std::invalid_argument);
        CHECK_THROWS_AS(awgn_bpsk_llr(word, 1.0, 1.5, rng), std::invalid_argument);
    }
}

TEST_CASE("a disabled error floor runs exactly max_frames") {
    SimConfig config = small_config();
    config.n = 16;
    config.k = 8;
    config.ebno_db = {0.0};
    config.max_frames = 100;
    const SimResult result = run_point(config, config_layout(config), 0.0);
    CHECK(result.frames == 100);
    CHECK(result.fer == doctest::Approx(result.frame_errors / 100.0));
    CHECK(result.ber == doctest::Approx(result.bit_errors / (100.0 * config.k)));
    CHECK(result.bit_errors_sq_sum >= static_cast<double>(result.bit_errors));
}

TEST_CASE("a huge Eb/N0 point is error free") {
    SimConfig config = small_config();
    config.ebno_db = {100.0};
    config.max_frames = 50;
    const SimResult result = run_point(config, config_layout(config), 100.0);
    CHECK(result.frames == 50);
    CHECK(result.bit_errors == 0);
    CHECK(result.frame_errors == 0);
    CHECK(result.ber == 0.0);
    CHECK(result.fer == 0.0);
}

TEST_CASE("the error floor stops the run early and deterministically") {
    SimConfig config = small_config();
    config.n = 16;
    config.k = 8;
    config.ebno_db = {-3.0};
    config.max_frames = 100000;
    config.min_frame_errors = 5;
    const BitLayout layout = config_layout(config);
    const SimResult one = run_point(config, layout, -3.0, 1);
    CHECK(one.frame_errors >= 5);
    CHECK(one.frames < config.max_frames);
    const SimResult four = run_point(config, layout, -3.0, 4);
    CHECK(one == four);
}

TEST_CASE("results are byte-identical for any worker count") {
    SimConfig config = small_config();
    config.min_frame_errors = 60;
    config.max_frames = 5000;
    const BitLayout layout = config_layout(config);
    const SimResult serial = run_point(config, layout, 1.0, 1);
    const SimResult parallel = run_point(config, layout, 1.0, 8);
    CHECK(serial == parallel);
    CHECK(serial.seed_provenance ==
          "mt19937_64/box-muller, seed=splitmix64_chain(master=7, point=0, frame)");
}

TEST_CASE("the plain and rate-0/rate-1 engines tally identically") {
    SimConfig config = small_config();
    config.max_frames = 1500;
    const BitLayout layout = config_layout(config);
    const SimResult sc = run_point(config, layout, 1.0, 2, DecoderKind::Sc);
    const SimResult fast = run_point(config, layout, 1.0, 2, DecoderKind::FastN0N1);
    CHECK(sc == fast);
}

TEST_CASE("error rates fall as the channel improves") {
    SimConfig config = small_config();
    config.ebno_db = {0.0, 2.0, 4.0};
    config.max_frames = 300000;
    config.min_frame_errors = 100;
    const BitLayout layout = config_layout(config);
    std::vector<SimResult> points;
    for (const double ebno : config.ebno_db)
        points.push_back(run_point(config, layout, ebno, 8));
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].ber <= points[i - 1].ber);
        CHECK(points[i].fer <= points[i - 1].fer);
        CHECK(points[i].frame_errors >= 100);
    }
}

TEST_CASE("construction comparison assembles the full matrix") {
    SimConfig config = small_config();
    config.thresholds = {0.02};
    config.ebno_db = {2.0, 4.0};
    config.max_frames = 800;
    const ComparisonResult result = compare_constructions(config, 2);

    REQUIRE(result.runs.size() == 2);
    CHECK(result.profile.n() == config.n);

    const ConstructionRun& base = result.runs[0];
    CHECK(base.threshold == 0.0);
    CHECK(base.swaps.empty());
    CHECK(base.layout == config_layout(config));
    REQUIRE(base.latency.size() == 3);
    for (const LatencyReport& report : base.latency) {
        CHECK(report.reduction_percent == 0.0);
        CHECK(report.baseline_cycles == report.total_cycles);
    }

    const ConstructionRun& opt = result.runs[1];
    CHECK(opt.threshold == 0.02);
    CHECK(opt.layout.k == config.k);
    for (const SwapRecord& swap : opt.swaps) CHECK(swap.delta < 0.02);
    REQUIRE(opt.latency.size() == 3);
    for (std::size_t m = 0; m < opt.latency.size(); ++m) {
        const LatencyReport& report = opt.latency[m];
        CHECK(report.baseline_cycles == base.latency[m].total_cycles);
        CHECK(report.reduction_percent ==
              doctest::Approx(100.0 * (1.0 - static_cast<double>(report.total_cycles) /
                                                 static_cast<double>(report.baseline_cycles))));
    }

    REQUIRE(base.points.size() == 2);
    REQUIRE(opt.points.size() == 2);
    CHECK(base.points[0].ebno_db == 2.0);
    CHECK(base.points[1].ebno_db == 4.0);
    // Matrix entries coincide with direct single-point runs.
    CHECK(base.points[0] == run_point(config, base.layout, 2.0, 2));
    CHECK(opt.points[1] == run_point(config, opt.layout, 4.0, 2));
}

TEST_CASE("simulation input validation") {
    SimConfig config = small_config();

    SimConfig bad = config;
    bad.n = 48;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.k = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.k = config.n + 1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.epsilon_design = 1.2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.max_frames = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.min_frame_errors = -1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.ebno_db.clear();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.thresholds = {-0.5};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    CHECK_THROWS_AS(run_point(config, config_layout(config), 9.0),
                    std::invalid_argument);
    const BitLayout wrong = baseline_layout(bec_profile(0.3, 32), 16);
    CHECK_THROWS_AS(run_point(config, wrong, 1.0), std::invalid_argument);
}
