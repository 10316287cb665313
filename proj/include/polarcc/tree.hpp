// Pruned successive-cancellation decode tree and its cycle-latency model.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polarcc/reliability.hpp"

namespace polarcc {

// Leaf classes recognized by the fast decoder, checked in this order:
//   N0   all bits frozen            (rate 0)
//   N1   all bits info              (rate 1)
//   Rep  only the last bit info     (repetition)
//   Spc  only the first bit frozen  (single parity check)
// A size-2 frozen+info span matches both Rep and Spc; the order makes it Rep.
enum class NodeClass : std::uint8_t { N0, N1, Rep, Spc, Mixed };

const char* to_string(NodeClass c);

// Which leaf classes terminate recursion when building the tree.
enum class PruneSet : std::uint8_t {
    Full,      // N0, N1, Rep, Spc
    N0N1Only,  // N0, N1 -- reference tree for exact-equivalence checks
};

struct TreeNode {
    int start = 0;
    int size = 0;   // 1 << stage
    int stage = 0;
    NodeClass cls = NodeClass::Mixed;
    int left = -1;  // node indices; -1 on leaves
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

// Nodes in preorder, root first; `leaves` indexes them left to right, so
// leaf spans partition [0, n) in increasing start order.
struct PrunedTree {
    std::vector<TreeNode> nodes;
    std::vector<int> leaves;
    BitLayout layout;

    int n() const { return layout.n(); }
    const TreeNode& root() const { return nodes.front(); }
};

PrunedTree build_pruned_tree(const BitLayout& layout, PruneSet prune = PruneSet::Full);

// Cycles charged to a leaf of class `cls` covering `size` bits:
//   N0 = 1, N1 = 1, Spc = log2(size) + 1, Rep = log2(size).
// Mixed nodes are not leaves and are rejected.
std::int64_t constituent_latency(NodeClass cls, int size);

// How cycles are totaled across the tree.
enum class OverheadMode : std::uint8_t {
    SumOfLeaves,      // leaf constituent latencies only; internal nodes free
    PlusTwoPerMixed,  // additionally +2 cycles per internal node (f pass + g pass)
    Calibrated,       // SumOfLeaves plus one handoff cycle per REP/SPC leaf,
                      // minus one overall; reproduces the known-good hardware
                      // cycle counts the latency regression tests pin down
};

const char* to_string(OverheadMode m);

struct ClassTally {
    std::int64_t count = 0;
    std::int64_t cycles = 0;
};

struct LatencyReport {
    OverheadMode mode = OverheadMode::SumOfLeaves;
    std::int64_t total_cycles = 0;
    std::array<ClassTally, 5> per_class{};  // indexed by NodeClass; in Calibrated
                                            // mode their sum exceeds the total by 1
    std::int64_t baseline_cycles = 0;       // defaults to total_cycles
    double reduction_percent = 0.0;         // 100 * (1 - total/baseline)

    const ClassTally& tally(NodeClass c) const {
        return per_class[static_cast<std::size_t>(c)];
    }
};

LatencyReport total_latency(const PrunedTree& tree,
                            OverheadMode mode = OverheadMode::SumOfLeaves);

// Recompute reduction_percent against an external baseline cycle count.
void set_baseline(LatencyReport& report, std::int64_t baseline_cycles);

// Cycle count of unpruned bit-by-bit successive cancellation: 2n - 2.
std::int64_t conventional_latency(int n);

// Indented one-node-per-line rendering, e.g. "Mixed [0,8)".
std::string render_tree(const PrunedTree& tree);

}  // namespace polarcc
