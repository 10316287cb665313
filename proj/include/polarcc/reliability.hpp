// Bit-channel reliability profiles and frozen/information bit selection.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polarcc {

enum class BitKind : std::uint8_t { Frozen, Info };

// Frozen/information designation per synthesized bit-channel, natural
// (encoder input) order throughout -- no bit-reversal anywhere.
struct BitLayout {
    std::vector<BitKind> kinds;
    int k = 0;  // number of Info entries

    int n() const { return static_cast<int>(kinds.size()); }
    bool is_info(int i) const { return kinds[static_cast<std::size_t>(i)] == BitKind::Info; }
    std::vector<int> info_indices() const;
    std::string to_string() const;  // e.g. "FFFIFIII"
    static BitLayout from_string(const std::string& s);

    bool operator==(const BitLayout&) const = default;
};

// Erasure probability of each synthesized bit-channel under a BEC design
// channel, natural order.  z[0] is the all-minus (worst) channel.
struct ReliabilityProfile {
    double epsilon = 0.0;
    std::vector<double> z;

    int n() const { return static_cast<int>(z.size()); }
};

// Recursive channel-splitting profile: z- = 2z - z^2, z+ = z^2.
// Requires n a power of two >= 1 and epsilon in [0, 1].
ReliabilityProfile bec_profile(double epsilon, int n);

// Mark the k most reliable channels (smallest z) Info, rest Frozen.
// Ties broken toward the larger bit index.
BitLayout baseline_layout(const ReliabilityProfile& profile, int k);

// Exact erasure probability of one bit-channel by exhaustive enumeration of
// all 2^n channel erasure patterns.  Independent of bec_profile; intended as
// a cross-check.  Requires n <= 16.
double bec_exhaustive_oracle(double epsilon, int n, int bit_index);

}  // namespace polarcc
