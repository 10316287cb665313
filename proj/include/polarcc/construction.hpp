// Constituent-code classification and threshold-driven bit-swap optimization.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarcc/reliability.hpp"

namespace polarcc {

// Constituent code classes over a contiguous, tree-aligned span of bits:
//   TypeI   all frozen          TypeII  all info
//   TypeIII exactly one info    TypeIV  exactly one frozen
// Spans that fit none of these are Mixed (only possible at size >= 4;
// every size-2 span is one of TypeI..TypeIII by the precedence below).
enum class SubcodeType : std::uint8_t { TypeI, TypeII, TypeIII, TypeIV, Mixed };

const char* to_string(SubcodeType t);

// One maximal uniform-type span.  size is a power of two and start is
// size-aligned.  special_index is the lone Info bit (TypeIII) or lone
// Frozen bit (TypeIV); -1 otherwise.
struct SubcodeEntry {
    int start = 0;
    int size = 0;
    SubcodeType type = SubcodeType::Mixed;
    int special_index = -1;

    bool operator==(const SubcodeEntry&) const = default;
};

// Partition [0, n) into maximal tree-aligned spans of uniform type.
// A span is listed only if no enclosing aligned span has a uniform type.
// Size-2 spans with one info bit are TypeIII (precedence over TypeIV).
std::vector<SubcodeEntry> classify_subcodes(const BitLayout& layout);

struct SwapRecord {
    int info_index = 0;    // was Info before the swap
    int frozen_index = 0;  // was Frozen before the swap
    double delta = 0.0;    // |z[info_index] - z[frozen_index]|

    bool operator==(const SwapRecord&) const = default;
};

struct OptimizeResult {
    BitLayout layout;
    std::vector<SwapRecord> swaps;
};

// Scan the classification table in span order.  For a TypeIII span, try to
// move its lone Info bit onto the lone Frozen bit of a later TypeIV span
// (and symmetrically for TypeIV), choosing the partner that minimizes the
// reliability gap |z[i] - z[f]|, ties toward the smaller bit index.  The
// swap is applied only when the gap is strictly below `threshold`; the
// table is rebuilt after every swap and the scan resumes at the entry that
// covers the swapped span's start bit, so merged spans are re-examined and
// nothing to their right is skipped.  Running the optimizer on its own
// output with the same threshold is a no-op.  threshold = 0 returns the
// layout unchanged.
OptimizeResult optimize_layout(const BitLayout& layout,
                               const ReliabilityProfile& profile,
                               double threshold);

}  // namespace polarcc
