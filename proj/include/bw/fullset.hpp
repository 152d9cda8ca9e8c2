#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bw/bdtree.hpp"
#include "bw/namu.hpp"
#include "bw/transcript.hpp"

namespace bw {

struct EvidenceCorrupt : std::logic_error {
    explicit EvidenceCorrupt(const std::string& w) : std::logic_error("evidence corrupt: " + w) {}
};

enum class StageKind { Leaf, Join, Shrink, Trim, Compare };
const char* stage_name(StageKind k);

// The base decomposition refined into stages: every internal base node x
// becomes join -> shrink -> trim -> compare, and a leaf stays a leaf.
struct CompositionTree {
    struct Node {
        StageKind kind;
        int base_node;
        int parent = -1;
        std::vector<int> children;
    };
    std::vector<Node> nodes;
    std::vector<int> compare_of; // base node -> its last stage (leaf or compare)
    int root = -1;
};
CompositionTree composition_tree(const DecTree& base);

// A stored namu together with how it was obtained.
struct Entry {
    Namu namu; // compact, in coordinates of the node's boundary basis
    int leaf_part = -1;
    int left = -1, right = -1; // indices into the children's tables
    HostMap pair;              // sum model, host = tree of pre_trim
    Namu pre_trim;             // the sum after shrinking
    TrimResult trimmed;
    KsafeAnchor anchor;
    HostMap align; // trimmed ⊴ namu
};

struct StageCounts {
    long sums = 0, shrunk = 0, trimmed = 0, stored = 0, max_nodes = 0;
};

struct FullSetTable {
    std::vector<std::vector<Entry>> table; // per base node
    std::vector<SpaceRef> space;           // store of each node's table, F^{d_x}
    std::vector<StageCounts> counts;
    CompositionTree comp;
    int root = -1;
    bool accepted() const { return !table[root].empty(); }
};

using TraceSink = std::function<void(const std::string&)>;

struct DpOptions {
    int cap = 64;
    TraceSink trace;
};

FullSetTable run_fullset_dp(const Arrangement& a, int k, const DecTree& base, const Transcript& tr,
                            const DpOptions& opt = {});

// Rooted decomposition of width <= k rebuilt from the evidence of the chosen
// root entry.
DecTree backtrack_decomposition(const FullSetTable& table, const DecTree& base, int root_choice = 0);
// The same replay for any stored entry: a decomposition of the parts below x
// (rooted when the namu has one node).
DecTree witness_decomposition(const FullSetTable& table, const DecTree& base, int x, int idx);

struct CompressionResult {
    bool above_k = false;
    DecTree tree; // unrooted decomposition when !above_k
    int failed_at = -1; // number of parts at which the DP rejected
};

CompressionResult iterative_compression(const Arrangement& a, int k, const DpOptions& opt = {});

} // namespace bw
