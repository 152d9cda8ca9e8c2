// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "bw/transcript.hpp"
#include "support.hpp"

using namespace bw;
using bwtest::Rng;
using bwtest::uniform;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

Verdict fail(const std::string& why) { return {false, why}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// smallest k with a decomposition found by `solve`, searching upward
int pipeline_min(const std::function<SolveResult(int)>& solve, int limit) {
    for (int k = 0; k <= limit; ++k)
        if (solve(k).outcome == bw::Outcome::Found) return k;
    return -1;
}

// ---------------------------------------------------------------- 1
Verdict oracle_equivalence() {
    Rng rng(1001);
    auto t0 = std::chrono::steady_clock::now();
    int decisions = 0, found = 0;
    for (int it = 0; it < 200; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        auto in = bwtest::random_instance(rng, f, uniform(rng, 3, 6), uniform(rng, 1, 6), 2);
        int bw = brute_branchwidth(in.arr).width;
        for (int k = 0; k <= 3; ++k) {
            auto res = solve_arrangement(in.mat, in.sizes, k);
            bool yes = res.outcome == bw::Outcome::Found;
            ++decisions;
            if (yes != (bw <= k)) {
                std::ostringstream os;
                os << "instance " << it << " k=" << k << ": oracle width " << bw << ", solver says "
                   << (yes ? "yes" : "no");
                return fail(os.str());
            }
            if (yes) {
                ++found;
                if (res.tree.parts().size() != static_cast<std::size_t>(in.arr.n()))
                    return fail("decomposition misses parts at instance " + std::to_string(it));
                int w = in.arr.n() > 1 ? width(res.tree, in.arr).max : 0;
                if (w > k) return fail("decomposition of width " + std::to_string(w) + " > k");
            }
        }
    }
    double s = seconds_since(t0);
    if (s > 600) return fail("took " + std::to_string(s) + " s");
    std::ostringstream os;
    os << decisions << " decisions match, " << found << " decompositions re-verified, " << s << " s";
    return {true, os.str()};
}

// ---------------------------------------------------------------- 2
int cut_rank(const Graph& g, const std::vector<char>& side) {
    std::vector<int> x, y;
    for (int v = 0; v < g.n; ++v) (side[v] ? x : y).push_back(v);
    Mat m(static_cast<int>(x.size()), static_cast<int>(y.size()), FieldSpec(2));
    std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
    for (auto e : g.edges) adj[e[0]][e[1]] = adj[e[1]][e[0]] = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = adj[x[i]][y[j]];
    return rank(m);
}

int brute_rankwidth(const Graph& g) {
    if (g.n <= 1) return 0;
    int best = -1;
    for (TreeIterator it(g.n); !it.done(); it.next()) {
        const DecTree& t = it.tree();
        auto sides = side_parts(t);
        int w = 0;
        for (int e = 0; e < t.edges(); ++e) {
            std::vector<char> side(g.n, 0);
            for (int p : sides[e][0]) side[p] = 1;
            w = std::max(w, cut_rank(g, side));
        }
        if (best < 0 || w < best) best = w;
    }
    return best;
}

Graph graph_from_mask(int n, unsigned mask) {
    std::vector<std::array<int, 2>> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) edges.push_back({u, v});
    return make_graph(n, edges);
}

// isomorphism representatives by minimum relabeled edge mask
std::vector<Graph> graph_representatives(int n) {
    std::set<unsigned> reps;
    const int pairs = n * (n - 1) / 2;
    std::vector<int> perm(n);
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
        for (int i = 0; i < n; ++i) perm[i] = i;
        unsigned best = ~0u;
        do {
            unsigned m2 = 0;
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask >> bit & 1) {
                        int a = std::min(perm[u], perm[v]), b = std::max(perm[u], perm[v]);
                        int idx = a * n - a * (a + 1) / 2 + (b - a - 1);
                        m2 |= 1u << idx;
                    }
            best = std::min(best, m2);
        } while (std::next_permutation(perm.begin(), perm.end()));
        reps.insert(best);
    }
    std::vector<Graph> out;
    for (unsigned m : reps) out.push_back(graph_from_mask(n, m));
    return out;
}

Graph path(int n) {
    std::vector<std::array<int, 2>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, e);
}
Graph cycle(int n) {
    auto g = path(n);
    g.edges.push_back({n - 1, 0});
    return g;
}
Graph complete(int n) {
    std::vector<std::array<int, 2>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.push_back({u, v});
    return make_graph(n, e);
}

Verdict rankwidth() {
    int checked = 0;
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : graph_representatives(n)) {
            int brute = brute_rankwidth(g);
            int pipe = pipeline_min([&](int k) { return solve_rankwidth(g, k); }, 3);
            if (pipe != brute)
                return fail("graph on " + std::to_string(n) + " vertices: pipeline " + std::to_string(pipe) +
                            " vs cut-rank " + std::to_string(brute));
            ++checked;
        }
    auto rw = [](const Graph& g) { return pipeline_min([&](int k) { return solve_rankwidth(g, k); }, 3); };
    int p4 = rw(path(4)), k5 = rw(complete(5)), c5 = rw(cycle(5));
    if (p4 != 1 || k5 != 1 || c5 != 2)
        return fail("P4 " + std::to_string(p4) + ", K5 " + std::to_string(k5) + ", C5 " + std::to_string(c5));
    return {true, std::to_string(checked) + " graph classes agree; P4=1 K5=1 C5=2"};
}

// ---------------------------------------------------------------- 3
Verdict carving() {
    auto cw = [](const Graph& g) { return pipeline_min([&](int k) { return solve_carving(g, k); }, 6); };
    int c4 = cw(cycle(4)), k4 = cw(complete(4));
    if (c4 != 2 || k4 != 4) return fail("C4 " + std::to_string(c4) + ", K4 " + std::to_string(k4));
    auto star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    auto r = solve_carving(star, 2);
    if (r.outcome != bw::Outcome::Rejected || r.failed_at != 0) return fail("K_{1,3} at k=2 not rejected by the degree guard");
    // oracle cross-check
    for (auto& g : {cycle(4), complete(4)}) {
        int o = brute_branchwidth(carving_arrangement(g, 100)).width;
        if (o != cw(g)) return fail("oracle disagrees");
    }
    return {true, "C4=2 K4=4, K_{1,3} rejected at k=2 (" + std::string(r.reason) + ")"};
}

// ---------------------------------------------------------------- 4
Hypergraph distinct_edges(int n, int m) {
    // the first m nonempty vertex subsets in order of size then mask
    std::vector<unsigned> masks;
    for (unsigned s = 1; s < (1u << n); ++s) masks.push_back(s);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    Hypergraph h;
    h.n = n;
    for (int i = 0; i < m; ++i) {
        std::vector<int> e;
        for (int v = 0; v < n; ++v)
            if (masks[i] >> v & 1) e.push_back(v);
        h.edges.push_back(e);
    }
    return h;
}

Verdict hypergraph() {
    Hypergraph tri{3, {{0, 1}, {1, 2}, {0, 2}}};
    int w = pipeline_min([&](int k) { return solve_hypergraph(tri, k); }, 4);
    if (w != 2) return fail("triangle width " + std::to_string(w));
    int cases = 0;
    for (int k = 0; k <= 1; ++k) {
        for (int n = 2; n <= 6; ++n) {
            int most = (1 << n) - 1;
            for (int m = 1; m <= most; ++m) {
                auto h = distinct_edges(n, m);
                bool density = false;
                try {
                    hypergraph_arrangement(h, k);
                } catch (const RejectedAboveK& e) {
                    density = std::string(e.what()).rfind("rejected: density", 0) == 0;
                }
                bool expect = m > (1 << (2 * k)) * n;
                if (density != expect)
                    return fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=" + std::to_string(k));
                ++cases;
            }
        }
    }
    // above the threshold is exactly where the theory says width > k
    return {true, "triangle=2; density test exact on " + std::to_string(cases) + " constructed instances"};
}

// ---------------------------------------------------------------- 5
Verdict typical_sequences() {
    auto t = typical({1, 2, 5, 3, 4, 2, 4, 4});
    if (t != std::vector<int>{1, 5, 2, 4}) return fail("tau(1,2,5,3,4,2,4,4) wrong");
    std::ostringstream os;
    for (int k = 0; k <= 4; ++k) {
        long count = 0;
        int longest = 0;
        std::vector<int> s;
        bool too_long = false;
        std::function<void()> dfs = [&] {
            ++count;
            longest = std::max<int>(longest, static_cast<int>(s.size()));
            if (static_cast<int>(s.size()) > 2 * k + 1) {
                too_long = true;
                return;
            }
            for (int v = 0; v <= k; ++v) {
                s.push_back(v);
                if (typical(s) == s) dfs();
                s.pop_back();
            }
        };
        dfs();
        --count; // the empty sequence
        if (too_long || longest > 2 * k + 1) return fail("typical sequence longer than 2k+1 at k=" + std::to_string(k));
        if (3 * count > 8L * (1L << (2 * k))) return fail("too many typical sequences at k=" + std::to_string(k));
        os << "k=" << k << ":" << count << " ";
    }
    return {true, "tau example ok; counts " + os.str()};
}

// ---------------------------------------------------------------- 6
Verdict namu_laws() {
    Rng rng(606);
    auto t0 = std::chrono::steady_clock::now();
    // each law counts its violations; all laws are checked on every namu
    std::vector<std::pair<std::string, int>> laws = {
        {"tau idempotent", 0},       {"trim width", 0},          {"projection width", 0},
        {"tau ~ trim", 0},           {"order independence", 0},  {"dominating", 0},
        {"trim monotone", 0},        {"projection monotone", 0},
    };
    int degenerate_width = 0, first_bad = -1;
    for (int it = 0; it < 600; ++it) {
        Namu g = bwtest::random_namu(rng);
        std::vector<bool> bad(laws.size(), false);
        Namu tr = trim(g);
        Namu tau = compactify(g);
        bad[0] = canonical(compactify(tau)) != canonical(tau);
        bad[1] = tr.width() != g.width();
        if (bad[1] && tr.n == 1) ++degenerate_width;
        auto& sp = *g.space;
        Subspace bsub = bwtest::random_subspace(rng, sp.field(), sp.ambient(), 3);
        int sub = sp.meet(sp.intern(bsub), g.universe);
        bad[2] = project(g, sub).width() != g.width();
        bad[3] = !tle(tau, tr) || !tle(tr, tau);
        for (unsigned seed = 1; seed <= 3; ++seed) {
            Rng order(seed * 7919 + it);
            if (canonical(compactify(g, &order)) != canonical(tau)) bad[4] = true;
        }
        Namu b = bwtest::random_dominating(rng, g);
        bad[5] = !tle(g, b);
        bad[6] = !tle(trim(g), trim(b));
        bad[7] = !tle(project(g, sub), project(b, sub));
        for (std::size_t i = 0; i < laws.size(); ++i)
            if (bad[i]) {
                ++laws[i].second;
                if (first_bad < 0) first_bad = it;
            }
    }
    double s = seconds_since(t0);
    std::ostringstream os;
    bool ok = s <= 120;
    os << "600 namus, " << s << " s; violations:";
    for (auto& [name, count] : laws) {
        os << " " << name << "=" << count;
        ok = ok && count == 0;
    }
    if (laws[1].second > 0)
        os << " (trim width: " << degenerate_width << " single-node trims, first at namu " << first_bad << ")";
    return {ok, os.str()};
}

// ---------------------------------------------------------------- 7
// Two namus over complementary part sets of one arrangement and one boundary.
std::pair<Namu, Namu> namu_pair(Rng& rng, int max_parts) {
    while (true) {
        int n = uniform(rng, 2, max_parts);
        auto in = bwtest::random_instance(rng, FieldSpec(2), n, uniform(rng, 1, 4), 2, 1);
        auto space = make_space(FieldSpec(2), in.arr.r());
        int cut = uniform(rng, 1, n - 1);
        std::vector<int> x, y;
        for (int i = 0; i < n; ++i) (i < cut ? x : y).push_back(i);
        Subspace b = boundary_of(in.arr, x);
        auto make = [&](const std::vector<int>& parts) {
            DecTree t = bwtest::random_tree(rng, static_cast<int>(parts.size()));
            for (auto& p : t.leaf_part)
                if (p >= 0) p = parts[p];
            return canonical_namu(t, in.arr, b, space);
        };
        Namu a = make(x), c = make(y);
        if (a.valid() && c.valid()) return {a, c};
    }
}

Verdict sum_laws() {
    Rng rng(707);
    long sums = 0;
    for (int it = 0; it < 300; ++it) {
        auto [a, b] = namu_pair(rng, 6);
        std::vector<SumResult> all;
        try {
            all = enumerate_sums(a, b);
        } catch (const ResourceExceeded&) {
            continue;
        }
        for (auto& s : all) {
            ++sums;
            if (s.namu.n != sum_size(a, b)) return fail("host size formula broken");
            int expect = a.n >= 2 && b.n >= 2 ? a.n + b.n + 2 : (a.n == 1 && b.n == 1 ? 2 : a.n + b.n + 1);
            if (s.namu.n != expect) return fail("host size differs from the formula");
            if (a.width() > s.namu.width() || b.width() > s.namu.width()) return fail("operand wider than sum");
        }
    }
    long compat = 0;
    for (int it = 0; it < 400; ++it) {
        auto [a1, a2] = namu_pair(rng, 3);
        if (a1.n > 3 || a2.n > 3) continue;
        Namu b1 = a1, b2 = a2;
        // dominating operands: raised values, or one subdivision while small
        for (Namu* b : {&b1, &b2}) {
            if (b->n < 3 && uniform(rng, 0, 1)) {
                Namu s = bwtest::random_dominating(rng, *b);
                if (s.n <= 3) *b = s;
            }
            for (auto& l : b->lambda) l += uniform(rng, 0, 1);
        }
        if (!tle(a1, b1) || !tle(a2, b2)) return fail("constructed operands not dominating");
        auto lower = enumerate_sums(a1, a2);
        for (auto& s : enumerate_sums(b1, b2)) {
            bool hit = false;
            for (auto& l : lower)
                if (tle(l.namu, s.namu)) { hit = true; break; }
            if (!hit) return fail("sum of dominating operands not covered at pair " + std::to_string(it));
            ++compat;
        }
    }
    return {true, std::to_string(sums) + " sums checked; " + std::to_string(compat) + " compatibility cases"};
}

// ---------------------------------------------------------------- 8
Verdict transcripts() {
    Rng rng(808);
    int nodes = 0;
    for (int it = 0; it < 100; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        auto in = bwtest::random_instance(rng, f, uniform(rng, 2, 8), uniform(rng, 2, 7), 2, 1);
        DecTree t = bwtest::random_tree(rng, in.arr.n()).rooted_at_first_edge();
        auto bases = boundary_bases(t, in.arr, 100);
        auto tr = build_transcript(t, in.arr, bases);
        auto par = t.parents();
        for (int v = 0; v < t.n; ++v) {
            Subspace direct = boundary_of(in.arr, t.parts_below(v));
            if (Subspace::span(tr.basis[v]) != direct || tr.basis[v].cols() != direct.dim())
                return fail("basis differs from the boundary at instance " + std::to_string(it));
            if (v != t.root && multiply(tr.extended[par[v]], tr.transition[v]) != tr.basis[v])
                return fail("transition equation fails at instance " + std::to_string(it));
            ++nodes;
        }
        if (tr.basis[t.root].cols() != 0) return fail("root boundary not empty");
    }
    return {true, std::to_string(nodes) + " nodes over 100 instances"};
}

// ---------------------------------------------------------------- 9
Verdict dimension_identities() {
    Rng rng(909);
    for (int it = 0; it < 1000; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        int r = uniform(rng, 1, 6);
        auto s = [&] { return bwtest::random_subspace(rng, f, r, r); };
        Subspace x1 = s(), x2 = s(), y1 = s(), y2 = s();
        int lhs = subspace_intersect(subspace_sum(x1, x2), subspace_sum(y1, y2)).dim();
        int rhs = subspace_intersect(x1, y1).dim() + subspace_intersect(x2, y2).dim() -
                  subspace_intersect(x1, x2).dim() - subspace_intersect(y1, y2).dim() +
                  subspace_intersect(subspace_sum(x1, y1), subspace_sum(x2, y2)).dim();
        if (lhs != rhs)
            return fail("dimension identity fails at tuple " + std::to_string(it));
    }
    int hyp = 0;
    for (int it = 0; it < 1000; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        int r = uniform(rng, 2, 7);
        // random coordinates split into B, C1, C2 blocks, then mixed by an invertible map
        int b = uniform(rng, 0, r), c1 = uniform(rng, 0, r - b);
        Mat g;
        do g = bwtest::random_mat(rng, f, r, r);
        while (rank(g) < r);
        auto block = [&](int from, int count) {
            Mat m(r, count, f);
            for (int i = 0; i < count; ++i) m.at(from + i, i) = 1;
            return multiply(g, m);
        };
        Subspace bsp = Subspace::span(block(0, b));
        Mat s1 = hcat(block(0, b), block(b, c1)), s2 = hcat(block(0, b), block(b + c1, r - b - c1));
        auto inside = [&](const Mat& span) {
            return Subspace::span(multiply(span, bwtest::random_mat(rng, f, span.cols(), uniform(rng, 0, span.cols()))));
        };
        Subspace v1 = inside(s1), v2 = inside(s2);
        if (subspace_intersect(subspace_sum(v1, bsp), subspace_sum(v2, bsp)) != bsp) continue;
        ++hyp;
        Subspace x = Subspace::span(multiply(v1.basis(), bwtest::random_mat(rng, f, v1.dim(), uniform(rng, 0, 3))));
        Subspace y = Subspace::span(multiply(v2.basis(), bwtest::random_mat(rng, f, v2.dim(), uniform(rng, 0, 3))));
        if (subspace_sum(subspace_intersect(x, bsp), subspace_intersect(y, bsp)) !=
            subspace_intersect(subspace_sum(x, y), bsp))
            return fail("join-key identity fails at tuple " + std::to_string(it));
    }
    if (hyp < 900) return fail("only " + std::to_string(hyp) + " tuples met the hypothesis");
    return {true, "1000 dimension tuples; " + std::to_string(hyp) + " join-key tuples"};
}

// ---------------------------------------------------------------- 10
Verdict fork_split() {
    Rng rng(1010);
    int forks = 0, splits = 0;
    auto same_leaves = [](const DecTree& a, const DecTree& b) { return a.parts() == b.parts(); };
    for (int it = 0; it < 3000 && (forks < 100 || splits < 100); ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        auto in = bwtest::random_instance(rng, f, uniform(rng, 4, 8), uniform(rng, 2, 5), 2, 1);
        DecTree t = bwtest::random_tree(rng, in.arr.n());
        std::vector<int> xs;
        for (int i = 0; i < in.arr.n(); ++i)
            if (uniform(rng, 0, 1)) xs.push_back(i);
        if (xs.empty() || static_cast<int>(xs.size()) == in.arr.n()) continue;
        int w0 = width(t, in.arr).max;
        auto inc = t.incident();
        for (int v = 0; v < t.n; ++v) {
            if (inc[v].size() != 3) continue;
            try {
                DecTree u = fork(t, in.arr, v, xs);
                if (!u.valid() || !same_leaves(t, u)) return fail("fork broke the leaf set");
                if (width(u, in.arr).max > w0) return fail("fork increased the width");
                ++forks;
            } catch (const PreconditionViolated&) {
            }
        }
        for (int e = 0; e < t.edges(); ++e)
            for (int s = 0; s < 2; ++s) {
                try {
                    DecTree u = split(t, in.arr, {t.ends[e][s], t.ends[e][1 - s]}, xs);
                    if (!u.valid() || !same_leaves(t, u)) return fail("split broke the leaf set");
                    if (width(u, in.arr).max > w0) return fail("split increased the width");
                    ++splits;
                } catch (const PreconditionViolated&) {
                }
            }
    }
    if (forks == 0 || splits == 0) return fail("preconditions never met");
    return {true, std::to_string(forks) + " forks, " + std::to_string(splits) + " splits"};
}

// ---------------------------------------------------------------- 11
Verdict fullset_semantics() {
    Rng rng(1111);
    int instances = 0, nodes = 0;
    for (int it = 0; instances < 50 && it < 2000; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        int k = uniform(rng, 1, 2);
        auto raw = bwtest::random_instance(rng, f, uniform(rng, 3, 6), uniform(rng, 2, 5), 2, 1);
        Preprocessed pre;
        try {
            pre = preprocess(raw.mat, raw.sizes, k);
        } catch (const RejectedAboveK&) {
            continue;
        }
        const Arrangement& a = pre.arr;
        if (a.n() < 3) continue;
        DecTree base = bwtest::random_tree(rng, a.n()).rooted_at_first_edge();
        auto tr = build_transcript(base, a, boundary_bases(base, a, 100));
        auto table = run_fullset_dp(a, k, base, tr);
        ++instances;
        auto space = make_space(a.field(), a.r());
        for (int x = 0; x < base.n; ++x) {
            if (base.parts_below(x).size() > 5) continue;
            auto brute = brute_fullset(a, base, x, k, space);
            std::vector<Namu> stored;
            for (auto& e : table.table[x]) stored.push_back(map_namu(e.namu, tr.basis[x], space));
            std::string tag = "instance " + std::to_string(it) + " node " + std::to_string(x) + ": ";
            if (stored.empty() != brute.empty()) return fail(tag + "emptiness differs");
            for (auto& d : brute) {
                bool hit = false;
                for (auto& g : stored)
                    if (tle(g, d)) { hit = true; break; }
                if (!hit) return fail(tag + "a brute-force namu is not covered");
            }
            for (auto& g : stored) {
                bool hit = false;
                for (auto& d : brute)
                    if (tle(d, g)) { hit = true; break; }
                if (!hit) return fail(tag + "a stored namu is not achieved");
            }
            ++nodes;
        }
    }
    if (instances < 50) return fail("only " + std::to_string(instances) + " instances generated");
    return {true, std::to_string(instances) + " instances, " + std::to_string(nodes) + " nodes compared"};
}

// ---------------------------------------------------------------- 12
Verdict preprocessing() {
    Rng rng(1212);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        auto in = bwtest::random_instance(rng, f, uniform(rng, 2, 6), uniform(rng, 1, 6), 3);
        int bw = brute_branchwidth(in.arr).width;
        for (int k = 0; k <= 3; ++k) {
            Preprocessed pre;
            try {
                pre = preprocess(in.mat, in.sizes, k);
            } catch (const RejectedAboveK&) {
                if (bw <= k) return fail("rejected an instance of width <= k");
                ++checked;
                continue;
            }
            const Arrangement& a = pre.arr;
            if (a.r() > a.m() || a.m() > k * in.arr.n()) return fail("size bounds violated");
            for (int i = 0; i < a.n(); ++i) {
                int orig = pre.original_index[i];
                int cols = static_cast<int>(a.part(i).size());
                if (cols > std::min(in.sizes[orig], k)) return fail("part too large after reduction");
                if (a.part_space(i).dim() != cols) return fail("part columns dependent");
                std::vector<int> rest;
                for (int j = 0; j < a.n(); ++j)
                    if (j != i) rest.push_back(j);
                if (!subspace_contains(a.span_of(rest), a.part_space(i))) return fail("part not inside the rest");
            }
            int after = a.n() >= 2 ? brute_branchwidth(a).width : 0;
            if ((after <= k) != (bw <= k)) return fail("decision changed by preprocessing");
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " (instance, k) pairs"};
}

// ---------------------------------------------------------------- 13
Verdict performance() {
    Rng rng(1313);
    const int n = 24;
    FieldSpec f(2);
    // one-dimensional parts along a band, so width 2 is attainable; the
    // second instance is unstructured and decided negatively
    Mat band(n / 2 + 1, n, f);
    for (int j = 0; j < n; ++j) {
        band.at(j / 2, j) = 1;
        band.at(j / 2 + 1, j) = static_cast<elem_t>(uniform(rng, 0, 1));
    }
    Mat dense = bwtest::random_mat(rng, f, 4, n);
    long largest = 0;
    DpOptions opt;
    opt.trace = [&](const std::string& s) {
        auto p = s.find("stored=");
        if (p != std::string::npos) largest = std::max(largest, std::stol(s.substr(p + 7)));
    };
    std::ostringstream os;
    for (const Mat* m : {&band, &dense}) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = solve_arrangement(*m, std::vector<int>(n, 1), 2, opt);
        double s = seconds_since(t0);
        if (s > 120) return fail("took " + std::to_string(s) + " s");
        if (r.outcome == bw::Outcome::Found && width(r.tree, Arrangement(*m, std::vector<int>(n, 1))).max > 2)
            return fail("decomposition wider than 2");
        os << (r.outcome == bw::Outcome::Found ? "found" : "above k") << " in " << s << " s; ";
    }
    if (largest > 5000) return fail("a table held " + std::to_string(largest) + " namus");
    os << "largest table " << largest;
    return {true, os.str()};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"rank-width", rankwidth},
        {"carving-width", carving},
        {"hypergraph branch-width", hypergraph},
        {"typical sequences", typical_sequences},
        {"namu laws", namu_laws},
        {"sum laws", sum_laws},
        {"transcript", transcripts},
        {"dimension identities", dimension_identities},
        {"fork and split", fork_split},
        {"full-set semantics", fullset_semantics},
        {"preprocessing", preprocessing},
        {"performance gate", performance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first
                  << ": " << o.detail << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
