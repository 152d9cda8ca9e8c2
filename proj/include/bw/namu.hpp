#pragma once

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bw/subspace_store.hpp"

namespace bw {

struct ResourceExceeded : std::runtime_error {
    explicit ResourceExceeded(const std::string& w) : std::runtime_error(w) {}
};

struct NotTrimOf : std::invalid_argument {
    NotTrimOf() : std::invalid_argument("base is not the trim of the namu") {}
};

std::vector<int> typical(const std::vector<int>& s);

// A decorated subcubic tree. Subspaces are handles into `space`.
// alpha[e][s] is the subspace on the incidence (ends[e][s], e); it collects
// what lies on the side of ends[e][s].
struct Namu {
    SpaceRef space;
    int universe = 0;
    int n = 1;
    std::vector<std::array<int, 2>> ends;
    std::vector<std::array<int, 2>> alpha;
    std::vector<int> lambda;

    static Namu single(SpaceRef space, int universe);

    int edges() const { return static_cast<int>(ends.size()); }
    int width() const;
    std::vector<std::vector<int>> incident() const;
    int other(int e, int v) const { return ends[e][0] == v ? ends[e][1] : ends[e][0]; }
    int side_of(int e, int v) const { return ends[e][0] == v ? 0 : 1; }
    // alpha on the incidence (v, e)
    int at(int v, int e) const { return alpha[e][side_of(e, v)]; }

    bool valid() const;
    std::string str() const;
};

bool operator==(const Namu& a, const Namu& b); // identical indexing and decorations

// Decorated canonical form, invariant under node/edge relabeling.
std::string canonical(const Namu& g);

// Where a pattern edge lands: edge of the pattern (or -1) and the index s with
// pattern.ends[edge][s] on the side of host.ends[e][0].
struct EdgeImage {
    int edge = -1;
    int side = 0;
};

// A host tree carrying models of two pattern trees. Used both for sums
// (host = the sum's tree) and for comparison certificates (host = a common
// subdivision of both operands).
struct HostMap {
    int n = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<std::array<int, 2>> branch;      // pattern node per model, or -1
    std::vector<std::array<EdgeImage, 2>> image; // per model
};

// The subspace a model assigns to host incidence (v, e) for pattern `which`.
int model_alpha(const HostMap& h, int which, const Namu& pattern, int v, int e);
bool model_side_contains(const HostMap& h, int which, int v, int e);

struct TrimResult {
    Namu namu;
    std::vector<int> node_map; // old node -> new node or -1
    std::vector<int> edge_map; // old edge -> new edge or -1
    int degenerate_edge = -1;  // set when the result collapsed to one node
};

bool is_degenerate(const Namu& g, int e);
// returns the index s such that edge e guards ends[e][s], or -1
int guarded_end(const Namu& g, int e);
std::vector<char> blocked_nodes(const Namu& g);

TrimResult trim_with_map(const Namu& g);
Namu trim(const Namu& g);

// A compressible path: node sequence and edge sequence (edges.size() >= 2).
struct CompressPath {
    std::vector<int> nodes;
    std::vector<int> edges;
};
std::vector<CompressPath> compress_candidates(const Namu& g);
Namu compress(const Namu& g, const CompressPath& p);
Namu compress_fixpoint(const Namu& g, std::mt19937* shuffle = nullptr);
Namu compactify(const Namu& g, std::mt19937* shuffle = nullptr);

// Common subdivision certificate of a ⊴ b: host edges map into both patterns;
// model 0 is `a`, model 1 is `b`.
std::optional<HostMap> tle_certificate(const Namu& a, const Namu& b);
bool tle(const Namu& a, const Namu& b);

Namu project(const Namu& g, int sub);
// Image under a linear map into another store (map must be injective on U).
Namu map_namu(const Namu& g, const Mat& map, const SpaceRef& target);

struct SumResult {
    Namu namu;
    HostMap model;
};
Namu sum_by_model(const Namu& a, const Namu& b, const HostMap& h);
int sum_size(const Namu& a, const Namu& b);
// All sums up to isomorphism. Sums with an edge of lambda above
// `lambda_cap` are skipped when lambda_cap >= 0.
std::vector<SumResult> enumerate_sums(const Namu& a, const Namu& b, int cap = 64, int lambda_cap = -1);

// Where the single-node trim of a degenerate namu is anchored: node `node`,
// an end of the degenerate edge `edge`.
struct KsafeAnchor {
    int edge = -1;
    int node = -1;
};
// k-safety of g over its trim t (computed by trim_with_map(g)). For a
// degenerate g the anchor is returned; otherwise the anchor is empty.
std::optional<KsafeAnchor> ksafe_anchor(const Namu& g, const TrimResult& t, int k);
bool ksafe_extension_check(const Namu& g, const Namu& base, int k);

} // namespace bw
