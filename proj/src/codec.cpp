#include "polarcc/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace polarcc {

const char* to_string(Kernel k) {
    return k == Kernel::MinSum ? "min_sum" : "exact";
}

namespace {

inline double sign_of(double x) { return std::copysign(1.0, x); }

inline std::uint8_t hard(double llr) { return llr < 0.0 ? 1 : 0; }

}  // namespace

double f_op(double a, double b, Kernel kernel) {
    const double min_sum = sign_of(a) * sign_of(b) * std::min(std::fabs(a), std::fabs(b));
    if (kernel == Kernel::MinSum || std::isinf(a) || std::isinf(b)) return min_sum;
    // Exact boxplus via the Jacobian correction of min-sum.
    return min_sum + std::log1p(std::exp(-std::fabs(a + b))) -
           std::log1p(std::exp(-std::fabs(a - b)));
}

double g_op(double a, double b, std::uint8_t s) {
    const double t = s ? -a : a;
    if (std::isinf(t) && std::isinf(b) && (t > 0) != (b > 0)) return 0.0;
    return b + t;
}

void polar_transform(std::span<std::uint8_t> bits) {
    const auto size = bits.size();
    if (size == 0 || !std::has_single_bit(size))
        throw std::invalid_argument("transform length must be a power of two >= 1");
    for (std::size_t inc = 1; inc < size; inc <<= 1)
        for (std::size_t base = 0; base < size; base += 2 * inc)
            for (std::size_t j = 0; j < inc; ++j)
                bits[base + j] = static_cast<std::uint8_t>(bits[base + j] ^ bits[base + j + inc]);
}

std::vector<std::uint8_t> encode(const BitLayout& layout,
                                 const std::vector<std::uint8_t>& info_bits) {
    if (static_cast<int>(info_bits.size()) != layout.k)
        throw std::invalid_argument("info_bits length must equal layout.k");
    std::vector<std::uint8_t> u(static_cast<std::size_t>(layout.n()), 0);
    std::size_t next = 0;
    for (int i = 0; i < layout.n(); ++i)
        if (layout.is_info(i)) u[static_cast<std::size_t>(i)] = info_bits[next++] & 1u;
    polar_transform(u);
    return u;
}

Decoder::Decoder(int n, Kernel kernel) : n_(n), kernel_(kernel) {
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("block length must be a power of two >= 1");
    soft_.resize(2 * static_cast<std::size_t>(n));
    beta_.resize(static_cast<std::size_t>(n));
    u_.resize(static_cast<std::size_t>(n));
}

void Decoder::load_channel(std::span<const double> llrs, int n) {
    if (static_cast<int>(llrs.size()) != n_ || n != n_)
        throw std::invalid_argument("LLR vector length must equal the decoder block length");
    std::copy(llrs.begin(), llrs.end(), soft_.begin() + n_);
}

// Children of a span of width `size` read their LLRs from level size/2.
void Decoder::split_f(int size, int /*start*/) {
    const int half = size / 2;
    const double* in = soft_.data() + size;
    double* out = soft_.data() + half;
    for (int j = 0; j < half; ++j) out[j] = f_op(in[j], in[j + half], kernel_);
}

void Decoder::split_g(int size, int start) {
    const int half = size / 2;
    const double* in = soft_.data() + size;
    double* out = soft_.data() + half;
    for (int j = 0; j < half; ++j)
        out[j] = g_op(in[j], in[j + half], beta_[static_cast<std::size_t>(start + j)]);
}

// beta = (beta_left XOR beta_right, beta_right), in place.
void Decoder::combine(int size, int start) {
    const int half = size / 2;
    for (int j = 0; j < half; ++j)
        beta_[static_cast<std::size_t>(start + j)] = static_cast<std::uint8_t>(
            beta_[static_cast<std::size_t>(start + j)] ^
            beta_[static_cast<std::size_t>(start + half + j)]);
}

void Decoder::sc_span(const BitLayout& layout, int start, int size) {
    if (size == 1) {
        const std::uint8_t bit = layout.is_info(start) ? hard(soft_[1]) : 0;
        u_[static_cast<std::size_t>(start)] = bit;
        beta_[static_cast<std::size_t>(start)] = bit;
        return;
    }
    split_f(size, start);
    sc_span(layout, start, size / 2);
    split_g(size, start);
    sc_span(layout, start + size / 2, size / 2);
    combine(size, start);
}

void Decoder::tree_node(const PrunedTree& tree, int node_index) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
    const double* llr = soft_.data() + node.size;
    std::uint8_t* beta = beta_.data() + node.start;
    std::uint8_t* u = u_.data() + node.start;
    const std::size_t span = static_cast<std::size_t>(node.size);

    switch (node.cls) {
        case NodeClass::N0:
            std::fill_n(beta, span, std::uint8_t{0});
            std::fill_n(u, span, std::uint8_t{0});
            return;
        case NodeClass::N1:
            for (int j = 0; j < node.size; ++j) beta[j] = hard(llr[j]);
            std::copy_n(beta, span, u);
            polar_transform({u, span});
            return;
        case NodeClass::Rep: {
            double sum = 0.0;
            for (int j = 0; j < node.size; ++j) sum += llr[j];
            const std::uint8_t bit = hard(sum);
            std::fill_n(beta, span, bit);
            std::fill_n(u, span, std::uint8_t{0});
            u[node.size - 1] = bit;
            return;
        }
        case NodeClass::Spc: {
            std::uint8_t parity = 0;
            int weakest = 0;
            for (int j = 0; j < node.size; ++j) {
                beta[j] = hard(llr[j]);
                parity ^= beta[j];
                if (std::fabs(llr[j]) < std::fabs(llr[weakest])) weakest = j;
            }
            if (parity) beta[weakest] ^= 1u;
            std::copy_n(beta, span, u);
            polar_transform({u, span});
            return;
        }
        case NodeClass::Mixed:
            split_f(node.size, node.start);
            tree_node(tree, node.left);
            split_g(node.size, node.start);
            tree_node(tree, node.right);
            combine(node.size, node.start);
            return;
    }
}

DecodeResult Decoder::collect(const BitLayout& layout) {
    DecodeResult result;
    result.info_bits.reserve(static_cast<std::size_t>(layout.k));
    for (int i = 0; i < n_; ++i)
        if (layout.is_info(i)) result.info_bits.push_back(u_[static_cast<std::size_t>(i)]);
    result.codeword.assign(beta_.begin(), beta_.end());
    return result;
}

DecodeResult Decoder::sc_decode(std::span<const double> channel_llrs, const BitLayout& layout) {
    load_channel(channel_llrs, layout.n());
    sc_span(layout, 0, n_);
    return collect(layout);
}

DecodeResult Decoder::fast_decode(std::span<const double> channel_llrs, const PrunedTree& tree) {
    load_channel(channel_llrs, tree.n());
    tree_node(tree, 0);
    return collect(tree.layout);
}

DecodeResult sc_decode(std::span<const double> channel_llrs, const BitLayout& layout,
                       Kernel kernel) {
    Decoder decoder(layout.n(), kernel);
    return decoder.sc_decode(channel_llrs, layout);
}

DecodeResult fast_decode(std::span<const double> channel_llrs, const PrunedTree& tree,
                         Kernel kernel) {
    Decoder decoder(tree.n(), kernel);
    return decoder.fast_decode(channel_llrs, tree);
}

}  // namespace polarcc
