#include "polarcc/construction.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace polarcc {

const char* to_string(SubcodeType t) {
    switch (t) {
        case SubcodeType::TypeI: return "TypeI";
        case SubcodeType::TypeII: return "TypeII";
        case SubcodeType::TypeIII: return "TypeIII";
        case SubcodeType::TypeIV: return "TypeIV";
        case SubcodeType::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

// Uniform type of the aligned span [start, start+size), Mixed if none applies.
SubcodeType span_type(const BitLayout& layout, int start, int size, int info_count,
                      int* special_index) {
    *special_index = -1;
    if (info_count == 0) return SubcodeType::TypeI;
    if (info_count == size) return SubcodeType::TypeII;
    if (info_count == 1) {
        for (int i = start; i < start + size; ++i)
            if (layout.is_info(i)) { *special_index = i; break; }
        return SubcodeType::TypeIII;
    }
    if (info_count == size - 1) {
        for (int i = start; i < start + size; ++i)
            if (!layout.is_info(i)) { *special_index = i; break; }
        return SubcodeType::TypeIV;
    }
    return SubcodeType::Mixed;
}

void classify_rec(const BitLayout& layout, const std::vector<int>& info_prefix,
                  int start, int size, std::vector<SubcodeEntry>& out) {
    const int info_count = info_prefix[static_cast<std::size_t>(start + size)] -
                           info_prefix[static_cast<std::size_t>(start)];
    int special = -1;
    const SubcodeType type = span_type(layout, start, size, info_count, &special);
    if (type != SubcodeType::Mixed) {
        out.push_back(SubcodeEntry{start, size, type, special});
        return;
    }
    classify_rec(layout, info_prefix, start, size / 2, out);
    classify_rec(layout, info_prefix, start + size / 2, size / 2, out);
}

std::vector<int> info_prefix_sums(const BitLayout& layout) {
    std::vector<int> prefix(static_cast<std::size_t>(layout.n()) + 1, 0);
    for (int i = 0; i < layout.n(); ++i)
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + (layout.is_info(i) ? 1 : 0);
    return prefix;
}

}  // namespace

std::vector<SubcodeEntry> classify_subcodes(const BitLayout& layout) {
    if (layout.n() < 1)
        throw std::invalid_argument("layout must not be empty");
    std::vector<SubcodeEntry> out;
    classify_rec(layout, info_prefix_sums(layout), 0, layout.n(), out);
    return out;
}

OptimizeResult optimize_layout(const BitLayout& layout,
                               const ReliabilityProfile& profile,
                               double threshold) {
    if (profile.n() != layout.n())
        throw std::invalid_argument("profile length must match layout length");
    if (!(threshold >= 0.0) || std::isnan(threshold))
        throw std::invalid_argument("threshold must be >= 0");

    OptimizeResult result{layout, {}};
    if (threshold == 0.0) return result;

    auto gap = [&](int a, int b) {
        return std::abs(profile.z[static_cast<std::size_t>(a)] -
                        profile.z[static_cast<std::size_t>(b)]);
    };

    std::vector<SubcodeEntry> table = classify_subcodes(result.layout);
    std::size_t idx = 0;
    while (idx < table.size()) {
        const SubcodeEntry cur = table[idx];
        const bool cur_is_three = cur.type == SubcodeType::TypeIII;
        const bool cur_is_four = cur.type == SubcodeType::TypeIV;
        if (!cur_is_three && !cur_is_four) {
            ++idx;
            continue;
        }

        // Partner class: a TypeIII info bit pairs with a later TypeIV frozen
        // bit, and vice versa.  Pick the smallest reliability gap, ties
        // toward the smaller partner bit index.
        const SubcodeType wanted = cur_is_three ? SubcodeType::TypeIV : SubcodeType::TypeIII;
        int best_partner = -1;
        double best_delta = std::numeric_limits<double>::infinity();
        for (std::size_t j = idx + 1; j < table.size(); ++j) {
            if (table[j].type != wanted) continue;
            const int cand = table[j].special_index;
            const double d = gap(cur.special_index, cand);
            if (d < best_delta || (d == best_delta && cand < best_partner)) {
                best_delta = d;
                best_partner = cand;
            }
        }

        if (best_partner < 0 || best_delta >= threshold) {
            ++idx;
            continue;
        }

        const int info_bit = cur_is_three ? cur.special_index : best_partner;
        const int frozen_bit = cur_is_three ? best_partner : cur.special_index;
        result.layout.kinds[static_cast<std::size_t>(info_bit)] = BitKind::Frozen;
        result.layout.kinds[static_cast<std::size_t>(frozen_bit)] = BitKind::Info;
        result.swaps.push_back(SwapRecord{info_bit, frozen_bit, best_delta});

        // Spans merge after a swap, so table positions shift.  Resume at the
        // entry covering the swapped span's start bit: merged entries get
        // (re-)examined, and no entry to the right is ever skipped.  An entry
        // once found unswappable stays unswappable (reliabilities are fixed
        // and the later-candidate set only shrinks), so a second pass with
        // the same threshold performs no further swaps.
        table = classify_subcodes(result.layout);
        idx = 0;
        while (idx < table.size() &&
               table[idx].start + table[idx].size <= cur.start)
            ++idx;
    }

    return result;
}

}  // namespace polarcc
