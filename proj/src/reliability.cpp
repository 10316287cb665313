#include "polarcc/reliability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polarcc {

namespace {

void require_power_of_two(int n) {
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("block length must be a power of two >= 1");
}

}  // namespace

std::vector<int> BitLayout::info_indices() const {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < n(); ++i)
        if (is_info(i)) idx.push_back(i);
    return idx;
}

std::string BitLayout::to_string() const {
    std::string s;
    s.reserve(kinds.size());
    for (BitKind b : kinds) s.push_back(b == BitKind::Info ? 'I' : 'F');
    return s;
}

BitLayout BitLayout::from_string(const std::string& s) {
    BitLayout layout;
    require_power_of_two(static_cast<int>(s.size()));
    layout.kinds.reserve(s.size());
    for (char c : s) {
        if (c == 'I') {
            layout.kinds.push_back(BitKind::Info);
            ++layout.k;
        } else if (c == 'F') {
            layout.kinds.push_back(BitKind::Frozen);
        } else {
            throw std::invalid_argument("layout string may contain only 'F' and 'I'");
        }
    }
    return layout;
}

ReliabilityProfile bec_profile(double epsilon, int n) {
    require_power_of_two(n);
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");

    std::vector<double> z{epsilon};
    z.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(z.size()) < n) {
        std::vector<double> next(z.size() * 2);
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];  // minus: erased unless both survive
            next[2 * i + 1] = z[i] * z[i];           // plus: erased only if both erased
        }
        z = std::move(next);
    }

    return ReliabilityProfile{epsilon, std::move(z)};
}

BitLayout baseline_layout(const ReliabilityProfile& profile, int k) {
    const int n = profile.n();
    require_power_of_two(n);
    if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0, n]");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (profile.z[static_cast<std::size_t>(a)] != profile.z[static_cast<std::size_t>(b)])
            return profile.z[static_cast<std::size_t>(a)] < profile.z[static_cast<std::size_t>(b)];
        return a > b;  // equal reliability: prefer the larger index as Info
    });

    BitLayout layout;
    layout.kinds.assign(static_cast<std::size_t>(n), BitKind::Frozen);
    layout.k = k;
    for (int i = 0; i < k; ++i)
        layout.kinds[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = BitKind::Info;
    return layout;
}

namespace {

// Whether bit-channel `bit` is erased for one channel erasure pattern.
// The split at width `size` pairs position j with j + size/2: the minus
// branch is erased if either input is, the plus branch only if both are.
// Descend into whichever half contains `bit`.
bool bit_erased(std::vector<char> e, int bit) {
    for (int size = static_cast<int>(e.size()); size > 1; size /= 2) {
        const int half = size / 2;
        if (bit < half) {
            for (int j = 0; j < half; ++j)
                e[static_cast<std::size_t>(j)] =
                    e[static_cast<std::size_t>(j)] | e[static_cast<std::size_t>(j + half)];
        } else {
            for (int j = 0; j < half; ++j)
                e[static_cast<std::size_t>(j)] =
                    e[static_cast<std::size_t>(j)] & e[static_cast<std::size_t>(j + half)];
            bit -= half;
        }
        e.resize(static_cast<std::size_t>(half));
    }
    return e[0] != 0;
}

}  // namespace

double bec_exhaustive_oracle(double epsilon, int n, int bit_index) {
    require_power_of_two(n);
    if (n > 16) throw std::invalid_argument("oracle limited to n <= 16");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (bit_index < 0 || bit_index >= n)
        throw std::invalid_argument("bit_index out of range");

    // Pattern weight eps^w * (1-eps)^(n-w) by erasure count w.
    std::vector<double> weight(static_cast<std::size_t>(n) + 1);
    for (int w = 0; w <= n; ++w)
        weight[static_cast<std::size_t>(w)] = std::pow(epsilon, w) * std::pow(1.0 - epsilon, n - w);

    double total = 0.0;
    std::vector<char> erased(static_cast<std::size_t>(n));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (int j = 0; j < n; ++j)
            erased[static_cast<std::size_t>(j)] = static_cast<char>((mask >> j) & 1u);
        if (bit_erased(erased, bit_index))
            total += weight[static_cast<std::size_t>(std::popcount(mask))];
    }
    return total;
}

}  // namespace polarcc
