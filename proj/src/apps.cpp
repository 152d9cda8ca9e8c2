#include "bw/apps.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace bw {

Graph make_graph(int n, const std::vector<std::array<int, 2>>& edges) {
    Graph g{n, {}};
    for (auto e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) throw InputError("vertex out of range");
        if (e[0] == e[1]) throw InputError("self-loop");
        g.edges.push_back(e);
    }
    return g;
}

Arrangement matroid_arrangement(const Mat& mat) {
    return Arrangement(mat, std::vector<int>(mat.cols(), 1));
}

Arrangement rankwidth_arrangement(const Graph& g) {
    FieldSpec f(2);
    Mat m(g.n, 2 * g.n, f);
    for (int i = 0; i < g.n; ++i) m.at(i, 2 * i) = 1;
    for (auto e : g.edges) {
        m.at(e[1], 2 * e[0] + 1) = 1;
        m.at(e[0], 2 * e[1] + 1) = 1;
    }
    return Arrangement(m, std::vector<int>(g.n, 2));
}

Arrangement carving_arrangement(const Graph& g, int k) {
    std::vector<int> deg(g.n, 0);
    for (auto e : g.edges) { ++deg[e[0]]; ++deg[e[1]]; }
    for (int v = 0; v < g.n; ++v)
        if (deg[v] > k)
            throw RejectedAboveK(v, "degree: vertex " + std::to_string(v + 1) + " has degree " +
                                        std::to_string(deg[v]) + " > k");
    FieldSpec f(2);
    const int m = static_cast<int>(g.edges.size());
    std::vector<int> sizes(g.n);
    std::vector<std::vector<int>> inc(g.n);
    for (int j = 0; j < m; ++j) {
        inc[g.edges[j][0]].push_back(j);
        inc[g.edges[j][1]].push_back(j);
    }
    Mat mat(m, 2 * m, f);
    int c = 0;
    for (int v = 0; v < g.n; ++v) {
        sizes[v] = static_cast<int>(inc[v].size());
        for (int j : inc[v]) mat.at(j, c++) = 1;
    }
    return Arrangement(mat, sizes);
}

Arrangement hyperedge_arrangement(const Hypergraph& h) {
    std::vector<int> count(h.n, 0);
    std::vector<std::vector<int>> sets;
    for (auto s : h.edges) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int v : s) ++count[v];
        sets.push_back(s);
    }
    std::vector<int> sizes;
    std::vector<int> rows;
    for (auto& s : sets) {
        int c = 0;
        for (int v : s)
            if (count[v] > 1) { rows.push_back(v); ++c; }
        sizes.push_back(c);
    }
    Mat mat(h.n, static_cast<int>(rows.size()), FieldSpec(2));
    for (int j = 0; j < static_cast<int>(rows.size()); ++j) mat.at(rows[j], j) = 1;
    return Arrangement(mat, sizes);
}

HyperInput hypergraph_arrangement(const Hypergraph& h, int k) {
    HyperInput out;
    std::map<std::vector<int>, int> first;
    std::vector<std::vector<int>> kept;
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) {
        auto s = h.edges[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto [it, fresh] = first.emplace(s, i);
        if (!fresh) {
            if (static_cast<int>(s.size()) > k)
                throw RejectedAboveK(i, "parallel: edges " + std::to_string(it->second + 1) + " and " +
                                            std::to_string(i + 1) + " have size " + std::to_string(s.size()) +
                                            " > k");
            out.duplicates.push_back({i, it->second});
            continue;
        }
        out.edge_of.push_back(i);
        kept.push_back(s);
    }
    const long m = static_cast<long>(kept.size());
    if (k < 31 && m > (1L << (2 * k)) * h.n)
        throw RejectedAboveK(-1, "density: " + std::to_string(m) + " edges exceed 4^k * " + std::to_string(h.n));
    std::vector<int> count(h.n, 0);
    for (auto& s : kept)
        for (int v : s) ++count[v];
    FieldSpec f(2);
    std::vector<int> sizes;
    std::vector<std::vector<int>> cols;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::vector<int> shared;
        for (int v : kept[i])
            if (count[v] > 1) shared.push_back(v);
        if (static_cast<int>(shared.size()) > k)
            throw RejectedAboveK(out.edge_of[i], "part-dimension: edge " + std::to_string(out.edge_of[i] + 1) +
                                                     " shares " + std::to_string(shared.size()) +
                                                     " vertices with other edges, > k");
        sizes.push_back(static_cast<int>(shared.size()));
        cols.push_back(shared);
    }
    int total = 0;
    for (int s : sizes) total += s;
    Mat mat(h.n, total, f);
    int c = 0;
    for (auto& s : cols)
        for (int v : s) mat.at(v, c++) = 1;
    out.arr = Arrangement(mat, sizes);
    return out;
}

SolveResult solve_arrangement(const Arrangement& a, int k, const DpOptions& opt) {
    return solve_arrangement(a.mat(), a.part_sizes(), k, opt);
}

SolveResult solve_rankwidth(const Graph& g, int k, const DpOptions& opt) {
    return solve_arrangement(rankwidth_arrangement(g), 2 * k, opt);
}

SolveResult solve_carving(const Graph& g, int k, const DpOptions& opt) {
    try {
        return solve_arrangement(carving_arrangement(g, k), k, opt);
    } catch (const RejectedAboveK& e) {
        SolveResult r;
        r.outcome = Outcome::Rejected;
        r.reason = e.what();
        r.failed_at = e.part;
        return r;
    }
}

SolveResult solve_hypergraph(const Hypergraph& h, int k, const DpOptions& opt) {
    HyperInput in;
    try {
        in = hypergraph_arrangement(h, k);
    } catch (const RejectedAboveK& e) {
        SolveResult r;
        r.outcome = Outcome::Rejected;
        r.reason = e.what();
        r.failed_at = e.part;
        return r;
    }
    SolveResult r = solve_arrangement(in.arr, k, opt);
    if (r.outcome != Outcome::Found) return r;
    DecTree t = r.tree;
    for (auto& p : t.leaf_part)
        if (p >= 0) p = in.edge_of[p];
    for (auto [dropped, twin] : in.duplicates) {
        // hang the copy next to its twin's leaf
        int leaf = -1;
        for (int v = 0; v < t.n; ++v)
            if (t.leaf_part[v] == twin) leaf = v;
        int e = 0;
        if (t.n > 1)
            for (int i = 0; i < t.edges(); ++i)
                if (t.ends[i][0] == leaf || t.ends[i][1] == leaf) e = i;
        t = t.with_leaf_on_edge(e, dropped);
    }
    t.root = t.n == 1 ? 0 : -1;
    r.tree = std::move(t);
    return r;
}

namespace {

std::istringstream next_line(std::istream& in, const char* what) {
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw InputError(std::string("missing ") + what);
}

template <class T>
T read(std::istream& in, const char* what) {
    T v;
    if (!(in >> v)) throw InputError(std::string("bad ") + what);
    return v;
}

void expect_header(std::istream& in, const std::string& word) {
    std::string w;
    if (!(in >> w) || w != word) throw InputError("expected header '" + word + "'");
}

} // namespace

ArrangementFile parse_arrangement(std::istream& in) {
    auto head = next_line(in, "header");
    expect_header(head, "arrangement");
    auto p = read<long>(head, "field size");
    auto r = read<int>(head, "row count");
    auto m = read<int>(head, "column count");
    auto n = read<int>(head, "part count");
    if (p < 2 || r < 0 || m < 0 || n < 0) throw InputError("negative dimension");
    FieldSpec f;
    try {
        f = FieldSpec(static_cast<std::uint32_t>(p));
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    ArrangementFile out{Mat(r, m, f), {}};
    for (int i = 0; i < r; ++i) {
        auto row = next_line(in, "matrix row");
        for (int j = 0; j < m; ++j) out.mat.at(i, j) = f.reduce(read<long>(row, "matrix entry"));
    }
    auto sz = next_line(in, "part sizes");
    int total = 0;
    for (int i = 0; i < n; ++i) {
        int s = read<int>(sz, "part size");
        if (s < 0) throw InputError("negative part size");
        out.sizes.push_back(s);
        total += s;
    }
    if (total != m) throw InputError("part sizes do not sum to the column count");
    return out;
}

Graph parse_graph(std::istream& in) {
    auto head = next_line(in, "header");
    expect_header(head, "graph");
    int n = read<int>(head, "vertex count");
    int m = read<int>(head, "edge count");
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < m; ++i) {
        auto l = next_line(in, "edge");
        int u = read<int>(l, "edge end"), v = read<int>(l, "edge end");
        edges.push_back({u - 1, v - 1});
    }
    return make_graph(n, edges);
}

Hypergraph parse_hypergraph(std::istream& in) {
    auto head = next_line(in, "header");
    expect_header(head, "hypergraph");
    Hypergraph h;
    h.n = read<int>(head, "vertex count");
    int m = read<int>(head, "edge count");
    for (int i = 0; i < m; ++i) {
        auto l = next_line(in, "hyperedge");
        int s = read<int>(l, "hyperedge size");
        if (s <= 0) throw InputError("empty hyperedge");
        std::vector<int> e;
        for (int j = 0; j < s; ++j) {
            int v = read<int>(l, "hyperedge vertex");
            if (v < 1 || v > h.n) throw InputError("vertex out of range");
            e.push_back(v - 1);
        }
        h.edges.push_back(e);
    }
    return h;
}

DecTree parse_tree(std::istream& in) {
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 2>> leaves;
    int n = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream l(line);
        std::string first;
        if (!(l >> first)) continue;
        if (first == "leaf") {
            int u = read<int>(l, "leaf node"), i = read<int>(l, "leaf part");
            leaves.push_back({u - 1, i - 1});
            n = std::max(n, u);
        } else {
            int u, v;
            try {
                u = std::stoi(first);
            } catch (const std::exception&) {
                throw InputError("bad tree line '" + line + "'");
            }
            v = read<int>(l, "tree edge end");
            edges.push_back({u - 1, v - 1});
            n = std::max({n, u, v});
        }
    }
    DecTree t;
    for (int i = 0; i < n; ++i) t.add_node();
    for (auto e : edges) {
        if (e[0] < 0 || e[1] < 0) throw InputError("tree node out of range");
        t.add_edge(e[0], e[1]);
    }
    for (auto l : leaves) {
        if (l[0] < 0 || l[1] < 0) throw InputError("tree leaf out of range");
        t.leaf_part[l[0]] = l[1];
    }
    if (t.n == 1) t.root = 0;
    if (!t.valid()) throw InputError("not a branch-decomposition tree");
    return t;
}

TreeFormat parse_format(const std::string& s) {
    if (s == "postorder") return TreeFormat::Postorder;
    if (s == "edges") return TreeFormat::Edges;
    if (s == "json") return TreeFormat::Json;
    throw InputError("unknown format '" + s + "'");
}

std::string format_tree(const DecTree& t, TreeFormat f, int width) {
    DecTree rooted = t;
    if (rooted.root < 0) rooted = t.n == 1 ? t : t.rooted_at_first_edge();
    if (rooted.root < 0) rooted.root = 0;
    std::string post = t.n == 0 ? "" : postorder_string(rooted);
    std::ostringstream os;
    switch (f) {
    case TreeFormat::Postorder:
        os << post << '\n';
        break;
    case TreeFormat::Edges:
        for (auto& e : t.ends) os << e[0] + 1 << ' ' << e[1] + 1 << '\n';
        for (int v = 0; v < t.n; ++v)
            if (t.leaf_part[v] >= 0) os << "leaf " << v + 1 << ' ' << t.leaf_part[v] + 1 << '\n';
        break;
    case TreeFormat::Json: {
        nlohmann::json j;
        j["nodes"] = t.n;
        j["width"] = width;
        j["postorder"] = post;
        auto& je = j["edges"] = nlohmann::json::array();
        for (auto& e : t.ends) je.push_back({e[0] + 1, e[1] + 1});
        auto& jl = j["leaves"] = nlohmann::json::array();
        for (int v = 0; v < t.n; ++v)
            if (t.leaf_part[v] >= 0) jl.push_back({v + 1, t.leaf_part[v] + 1});
        os << j.dump(2) << '\n';
        break;
    }
    }
    return os.str();
}

} // namespace bw
