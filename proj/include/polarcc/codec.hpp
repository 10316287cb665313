// Polar encoder, conventional successive-cancellation decoder, and the fast
// constituent-code decoder operating on a pruned tree.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polarcc/reliability.hpp"
#include "polarcc/tree.hpp"

namespace polarcc {

// LLR convention: positive means bit 0 is more likely; a hard decision at
// exactly zero yields 0.  Frozen bits are always 0.
enum class Kernel : std::uint8_t {
    MinSum,  // f = sign(a) sign(b) min(|a|, |b|)
    Exact,   // f = 2 atanh(tanh(a/2) tanh(b/2))
};

const char* to_string(Kernel k);

double f_op(double a, double b, Kernel kernel = Kernel::MinSum);
double g_op(double a, double b, std::uint8_t s);  // b + (1 - 2s) a

// In-place butterfly x = u F^(x)m over GF(2); self-inverse.
// Length must be a power of two >= 1.
void polar_transform(std::span<std::uint8_t> bits);

// Scatter info_bits (index order) over the Info positions, zeros elsewhere,
// then transform.  Requires |info_bits| == layout.k.
std::vector<std::uint8_t> encode(const BitLayout& layout,
                                 const std::vector<std::uint8_t>& info_bits);

struct DecodeResult {
    std::vector<std::uint8_t> info_bits;  // u-domain estimates at Info positions
    std::vector<std::uint8_t> codeword;   // re-encoded codeword estimate
};

// Reusable scratch buffers for repeated decodes of one block length.  An
// instance serves one decode at a time; independent instances are safe to
// run concurrently.
class Decoder {
public:
    explicit Decoder(int n, Kernel kernel = Kernel::MinSum);

    // Full-depth bit-by-bit successive cancellation.
    DecodeResult sc_decode(std::span<const double> channel_llrs, const BitLayout& layout);

    // Constituent-code decoding over the pruned tree: N0 forces zeros, N1
    // takes elementwise hard decisions, REP thresholds the LLR sum, SPC
    // applies the Wagner rule (flip the least reliable bit when the parity
    // of the hard decisions fails).
    DecodeResult fast_decode(std::span<const double> channel_llrs, const PrunedTree& tree);

    int n() const { return n_; }
    Kernel kernel() const { return kernel_; }

private:
    void load_channel(std::span<const double> llrs, int n);
    void split_f(int size, int start);
    void split_g(int size, int start);
    void combine(int size, int start);
    void sc_span(const BitLayout& layout, int start, int size);
    void tree_node(const PrunedTree& tree, int node_index);
    DecodeResult collect(const BitLayout& layout);

    int n_;
    Kernel kernel_;
    std::vector<double> soft_;        // level-packed LLRs: span size s lives at [s, 2s)
    std::vector<std::uint8_t> beta_;  // partial sums, indexed by bit position
    std::vector<std::uint8_t> u_;     // u-domain estimates, indexed by bit position
};

// One-shot conveniences.
DecodeResult sc_decode(std::span<const double> channel_llrs, const BitLayout& layout,
                       Kernel kernel = Kernel::MinSum);
DecodeResult fast_decode(std::span<const double> channel_llrs, const PrunedTree& tree,
                         Kernel kernel = Kernel::MinSum);

}  // namespace polarcc
