#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bw/bdtree.hpp"

namespace bw {

struct WidthExceeded : std::runtime_error {
    explicit WidthExceeded(int node)
        : std::runtime_error("boundary at node " + std::to_string(node) + " exceeds the cap"), node(node) {}
    int node;
};
struct NotRREF : std::invalid_argument {
    NotRREF() : std::invalid_argument("matrix is not in reduced row echelon form") {}
};
struct ExtensionFailure : std::runtime_error {
    explicit ExtensionFailure(int node)
        : std::runtime_error("basis extension failed at node " + std::to_string(node)), node(node) {}
    int node;
};

// Per node of a rooted decomposition: the column/row index sets of the
// elimination and the resulting boundary basis (columns of an r x d matrix).
struct BoundaryBases {
    std::vector<std::vector<int>> p, r, q;
    std::vector<Mat> basis;
};

BoundaryBases boundary_bases(const DecTree& t, const Arrangement& a, int cap);

struct Transcript {
    std::vector<Mat> basis;      // B_v
    std::vector<Mat> extended;   // B_v', starts with B_v
    std::vector<Mat> transition; // T_v : coordinates in B_v -> coordinates in B_parent'
    int order = 0;
};

Transcript build_transcript(const DecTree& t, const Arrangement& a, const BoundaryBases& bases);

} // namespace bw
