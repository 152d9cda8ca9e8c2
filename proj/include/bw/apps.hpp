#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "bw/pipeline.hpp"

namespace bw {

struct InputError : std::runtime_error {
    explicit InputError(const std::string& w) : std::runtime_error("input error: " + w) {}
};

// Vertices are 0-based here; files use 1-based indices.
struct Graph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
};

struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges;
};

Graph make_graph(int n, const std::vector<std::array<int, 2>>& edges);

// One part per column.
Arrangement matroid_arrangement(const Mat& mat);

// Part i spanned by e_i and the i-th adjacency column; width is twice the rank-width.
Arrangement rankwidth_arrangement(const Graph& g);

// One part per vertex, spanned by its incident edges. Throws RejectedAboveK
// when some degree exceeds k.
Arrangement carving_arrangement(const Graph& g, int k);

struct HyperInput {
    Arrangement arr;
    std::vector<int> edge_of;                    // part i is hyperedge edge_of[i]
    std::vector<std::array<int, 2>> duplicates;  // {dropped edge, kept twin}
};

// Part i spanned by the vertices of edge i that lie on some other edge; no guards.
Arrangement hyperedge_arrangement(const Hypergraph& h);

// Drops parallel copies (rejecting copies larger than k), then applies the
// density and part-dimension tests. Throws RejectedAboveK; the message starts
// with "parallel", "density" or "part-dimension".
HyperInput hypergraph_arrangement(const Hypergraph& h, int k);

// Drivers returning decompositions over vertices (rank, carving) or hyperedges.
SolveResult solve_arrangement(const Arrangement& a, int k, const DpOptions& opt = {});
SolveResult solve_rankwidth(const Graph& g, int k, const DpOptions& opt = {});
SolveResult solve_carving(const Graph& g, int k, const DpOptions& opt = {});
SolveResult solve_hypergraph(const Hypergraph& h, int k, const DpOptions& opt = {});

// Text formats.
struct ArrangementFile {
    Mat mat;
    std::vector<int> sizes;
};
ArrangementFile parse_arrangement(std::istream& in);
Graph parse_graph(std::istream& in);
Hypergraph parse_hypergraph(std::istream& in);
// "u v" edge lines and "leaf u i" lines, 1-based
DecTree parse_tree(std::istream& in);

enum class TreeFormat { Postorder, Edges, Json };
TreeFormat parse_format(const std::string& s);
std::string format_tree(const DecTree& t, TreeFormat f, int width);

} // namespace bw
