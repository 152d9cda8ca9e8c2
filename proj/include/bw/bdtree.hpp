#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "bw/arrangement.hpp"
#include "bw/namu.hpp"

namespace bw {

struct LabelMismatch : std::invalid_argument {
    explicit LabelMismatch(const std::string& w) : std::invalid_argument("label mismatch: " + w) {}
};
struct EmptySubset : std::invalid_argument {
    EmptySubset() : std::invalid_argument("empty subset") {}
};
struct ScopeMismatch : std::invalid_argument {
    ScopeMismatch() : std::invalid_argument("parts of x are not all covered by the decomposition") {}
};
struct PreconditionViolated : std::invalid_argument {
    explicit PreconditionViolated(const std::string& w) : std::invalid_argument("precondition violated: " + w) {}
};
struct Unrooted : std::invalid_argument {
    Unrooted() : std::invalid_argument("tree has no root") {}
};

// Subcubic tree whose leaves carry part indices. A rooted tree has a root of
// degree 2 (or a single node); the root is never a leaf unless n == 1.
struct DecTree {
    int n = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<int> leaf_part; // per node: part index at a leaf, -1 elsewhere
    int root = -1;

    static DecTree leaf(int part);
    static DecTree pair(int p, int q);

    int edges() const { return static_cast<int>(ends.size()); }
    std::vector<std::vector<int>> incident() const;
    int other(int e, int v) const { return ends[e][0] == v ? ends[e][1] : ends[e][0]; }
    int add_node(int part = -1);
    void add_edge(int u, int v);

    std::vector<int> leaves() const;
    std::vector<int> parts() const; // sorted
    bool valid() const;

    // children of v in the rooted tree (ordered by edge index), parent or -1
    std::vector<int> children(int v) const;
    std::vector<int> parents() const;
    std::vector<int> postorder() const;
    // parts under v in the rooted tree
    std::vector<int> parts_below(int v) const;

    DecTree rooted_at_first_edge() const;
    DecTree unrooted() const;
    // subdivide edge e with a new leaf carrying `part`; returns the tree
    DecTree with_leaf_on_edge(int e, int part) const;
};

// parts on the side of ends[e][s] in T - e, for every edge and side
std::vector<std::array<std::vector<int>, 2>> side_parts(const DecTree& t);

struct WidthReport {
    int max = 0;
    std::vector<int> per_edge;
};
WidthReport width(const DecTree& t, const Arrangement& a);

struct InducedTree {
    DecTree tree;
    std::vector<int> phi; // node of tree -> node of the original
};
InducedTree induced(const DecTree& t, const std::vector<int>& subset);

// Canonical namu with respect to b, in the store `space` over F^r.
Namu canonical_namu(const DecTree& t, const Arrangement& a, const Subspace& b, const SpaceRef& space);
Namu canonical_namu(const DecTree& t, const Arrangement& a, const Subspace& b);

// boundary space of a part set: span(parts) ∩ span(rest of a)
Subspace boundary_of(const Arrangement& a, const std::vector<int>& part_set);

struct BlockingPath {
    int u, v, w;
    bool improper;
};

struct PredicateReport {
    std::vector<int> vx;
    Subspace boundary;
    bool degenerate = false; // the decomposition is x-degenerate
    bool disjoint = false;
    bool pure = false;
    bool totally_pure = false;
    bool ksafe = true; // only meaningful when k >= 0 was given
    std::vector<char> degenerate_edge, improper_degenerate, cuts_vx, crossing;
    // indexed [edge][s], about the ordered pair pointing towards ends[e][s]
    std::vector<std::array<char, 2>> mixed, guards, improper_guard, protect;
    std::vector<BlockingPath> blocking_paths;
    std::vector<char> blocked_node, protected_node;
};

PredicateReport decomposition_predicates(const DecTree& t, const Arrangement& a, const DecTree& base, int x, int k = -1);
Namu reduced_namu(const DecTree& t, const Arrangement& a, const DecTree& base, int x, const SpaceRef& space);

DecTree fork(const DecTree& t, const Arrangement& a, int v, const std::vector<int>& x_parts);
DecTree split(const DecTree& t, const Arrangement& a, std::array<int, 2> edge, const std::vector<int>& x_parts);

std::string postorder_string(const DecTree& t);

} // namespace bw
