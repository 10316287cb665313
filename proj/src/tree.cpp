#include "polarcc/tree.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace polarcc {

const char* to_string(NodeClass c) {
    switch (c) {
        case NodeClass::N0: return "N0";
        case NodeClass::N1: return "N1";
        case NodeClass::Rep: return "REP";
        case NodeClass::Spc: return "SPC";
        case NodeClass::Mixed: return "Mixed";
    }
    return "?";
}

const char* to_string(OverheadMode m) {
    switch (m) {
        case OverheadMode::SumOfLeaves: return "sum_of_leaves";
        case OverheadMode::PlusTwoPerMixed: return "plus_two_per_mixed";
        case OverheadMode::Calibrated: return "calibrated";
    }
    return "?";
}

namespace {

// Leaf class of the aligned span, or Mixed when recursion must continue.
NodeClass span_class(const BitLayout& layout, const std::vector<int>& info_prefix,
                     int start, int size, PruneSet prune) {
    const int info = info_prefix[static_cast<std::size_t>(start + size)] -
                     info_prefix[static_cast<std::size_t>(start)];
    if (info == 0) return NodeClass::N0;
    if (info == size) return NodeClass::N1;
    if (prune == PruneSet::Full) {
        if (info == 1 && layout.is_info(start + size - 1)) return NodeClass::Rep;
        if (info == size - 1 && !layout.is_info(start)) return NodeClass::Spc;
    }
    return NodeClass::Mixed;
}

int build_rec(const BitLayout& layout, const std::vector<int>& info_prefix,
              int start, int size, int stage, PruneSet prune, PrunedTree& tree) {
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{start, size, stage,
                                  span_class(layout, info_prefix, start, size, prune), -1, -1});
    if (tree.nodes[static_cast<std::size_t>(self)].cls != NodeClass::Mixed) {
        tree.leaves.push_back(self);
        return self;
    }
    const int half = size / 2;
    const int left = build_rec(layout, info_prefix, start, half, stage - 1, prune, tree);
    const int right = build_rec(layout, info_prefix, start + half, half, stage - 1, prune, tree);
    tree.nodes[static_cast<std::size_t>(self)].left = left;
    tree.nodes[static_cast<std::size_t>(self)].right = right;
    return self;
}

}  // namespace

PrunedTree build_pruned_tree(const BitLayout& layout, PruneSet prune) {
    const int n = layout.n();
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("layout length must be a power of two >= 1");

    std::vector<int> prefix(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + (layout.is_info(i) ? 1 : 0);

    PrunedTree tree;
    tree.layout = layout;
    build_rec(layout, prefix, 0, n, std::countr_zero(static_cast<unsigned>(n)), prune, tree);
    return tree;
}

std::int64_t constituent_latency(NodeClass cls, int size) {
    if (size < 1 || !std::has_single_bit(static_cast<unsigned>(size)))
        throw std::invalid_argument("size must be a power of two >= 1");
    const int log2_size = std::countr_zero(static_cast<unsigned>(size));
    switch (cls) {
        case NodeClass::N0: return 1;
        case NodeClass::N1: return 1;
        case NodeClass::Spc: return log2_size + 1;
        case NodeClass::Rep: return log2_size;
        case NodeClass::Mixed: break;
    }
    throw std::invalid_argument("Mixed nodes carry no constituent latency");
}

LatencyReport total_latency(const PrunedTree& tree, OverheadMode mode) {
    LatencyReport report;
    report.mode = mode;
    for (const TreeNode& node : tree.nodes) {
        ClassTally& tally = report.per_class[static_cast<std::size_t>(node.cls)];
        ++tally.count;
        if (node.cls == NodeClass::Mixed) {
            if (mode == OverheadMode::PlusTwoPerMixed) tally.cycles += 2;
        } else {
            tally.cycles += constituent_latency(node.cls, node.size);
            if (mode == OverheadMode::Calibrated &&
                (node.cls == NodeClass::Rep || node.cls == NodeClass::Spc))
                tally.cycles += 1;
        }
    }
    for (const ClassTally& tally : report.per_class) report.total_cycles += tally.cycles;
    // The closing leaf needs no handoff; keep degenerate one-leaf trees at 1.
    if (mode == OverheadMode::Calibrated && report.total_cycles > 1) --report.total_cycles;
    report.baseline_cycles = report.total_cycles;
    return report;
}

void set_baseline(LatencyReport& report, std::int64_t baseline_cycles) {
    if (baseline_cycles <= 0)
        throw std::invalid_argument("baseline cycle count must be positive");
    report.baseline_cycles = baseline_cycles;
    report.reduction_percent =
        100.0 * (1.0 - static_cast<double>(report.total_cycles) /
                           static_cast<double>(baseline_cycles));
}

std::int64_t conventional_latency(int n) {
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("block length must be a power of two >= 2");
    return 2 * static_cast<std::int64_t>(n) - 2;
}

std::string render_tree(const PrunedTree& tree) {
    std::ostringstream out;
    struct Walk {
        const PrunedTree& t;
        std::ostringstream& out;
        void run(int idx, int depth) {
            const TreeNode& node = t.nodes[static_cast<std::size_t>(idx)];
            for (int i = 0; i < depth; ++i) out << "  ";
            out << to_string(node.cls) << " [" << node.start << ","
                << node.start + node.size << ")\n";
            if (!node.is_leaf()) {
                run(node.left, depth + 1);
                run(node.right, depth + 1);
            }
        }
    };
    Walk{tree, out}.run(0, 0);
    return out.str();
}

}  // namespace polarcc
