// Deterministic, schedule-independent random streams for the simulator.
#pragma once

#include <cstdint>
#include <random>

namespace polarcc {

// splitmix64 step: advances state by the golden-ratio increment and returns
// a mixed output.  Used only to derive well-separated stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for the (master, point, frame) stream.  Pure function of its inputs,
// so any worker decomposition reproduces identical frames.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t frame);

// Per-frame random source: one mt19937_64 stream plus a Box-Muller gaussian.
// All draws are bit-exact functions of the seed.
class FrameRng {
public:
    explicit FrameRng(std::uint64_t seed) : gen_(seed) {}

    std::uint8_t bit() { return static_cast<std::uint8_t>(gen_() & 1u); }

    double uniform() {  // [0, 1) with 53 random bits
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian();  // standard normal

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace polarcc
