// Random instance generators shared by the unit and acceptance tests.
#pragma once

#include <random>
#include <vector>

#include "bw/apps.hpp"
#include "bw/oracle.hpp"

namespace bwtest {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bw::Mat random_mat(Rng& rng, bw::FieldSpec f, int rows, int cols) {
    bw::Mat m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<bw::elem_t>(uniform(rng, 0, f.p() - 1));
    return m;
}

struct RandomInstance {
    bw::Mat mat;
    std::vector<int> sizes;
    bw::Arrangement arr;
};

inline RandomInstance random_instance(Rng& rng, bw::FieldSpec f, int n, int r, int max_dim, int min_dim = 0) {
    RandomInstance in;
    int m = 0;
    for (int i = 0; i < n; ++i) {
        in.sizes.push_back(uniform(rng, min_dim, max_dim));
        m += in.sizes.back();
    }
    in.mat = random_mat(rng, f, r, m);
    in.arr = bw::Arrangement(in.mat, in.sizes);
    return in;
}

inline bw::Subspace random_subspace(Rng& rng, bw::FieldSpec f, int ambient, int max_dim) {
    return bw::Subspace::span(random_mat(rng, f, ambient, uniform(rng, 0, max_dim)));
}

// Random unrooted decomposition over parts 0..n-1 by random leaf insertion.
inline bw::DecTree random_tree(Rng& rng, int n) {
    if (n == 1) {
        auto t = bw::DecTree::leaf(0);
        t.root = -1;
        return t;
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    bw::DecTree t = bw::DecTree::pair(order[0], order[1]);
    for (int i = 2; i < n; ++i) t = t.with_leaf_on_edge(uniform(rng, 0, t.edges() - 1), order[i]);
    return t;
}

// The namu induced on a connected node subset, as a subtree of g.
inline bw::Namu induced_namu(const bw::Namu& g, const std::vector<char>& keep) {
    bw::Namu h;
    h.space = g.space;
    h.universe = g.universe;
    std::vector<int> id(g.n, -1);
    h.n = 0;
    for (int v = 0; v < g.n; ++v)
        if (keep[v]) id[v] = h.n++;
    for (int e = 0; e < g.edges(); ++e) {
        int u = id[g.ends[e][0]], v = id[g.ends[e][1]];
        if (u < 0 || v < 0) continue;
        h.ends.push_back({u, v});
        h.alpha.push_back(g.alpha[e]);
        h.lambda.push_back(g.lambda[e]);
    }
    return h;
}

// A valid namu over GF(2): the canonical namu of a random decomposition with
// respect to a random subspace of dimension <= max_b, optionally cut down to
// a random subtree and with some edge values raised.
inline bw::Namu random_namu(Rng& rng, bw::FieldSpec f = bw::FieldSpec(2), int max_b = 3, int max_parts = 6) {
    while (true) {
        int n = uniform(rng, 1, max_parts);
        auto in = random_instance(rng, f, n, uniform(rng, 1, 5), 2, 1);
        const int r = in.arr.r();
        auto space = bw::make_space(f, r);
        bw::Subspace b = random_subspace(rng, f, r, max_b);
        bw::DecTree t = random_tree(rng, n);
        bw::Namu g = bw::canonical_namu(t, in.arr, b, space);
        if (g.n > 2 && uniform(rng, 0, 1)) {
            auto inc = g.incident();
            std::vector<char> keep(g.n, 0);
            std::vector<int> frontier{uniform(rng, 0, g.n - 1)};
            keep[frontier[0]] = 1;
            int want = uniform(rng, 1, g.n), have = 1;
            while (have < want && !frontier.empty()) {
                int i = uniform(rng, 0, static_cast<int>(frontier.size()) - 1);
                int v = frontier[i];
                std::vector<int> open;
                for (int e : inc[v])
                    if (!keep[g.other(e, v)]) open.push_back(g.other(e, v));
                if (open.empty()) {
                    frontier.erase(frontier.begin() + i);
                    continue;
                }
                int w = open[uniform(rng, 0, static_cast<int>(open.size()) - 1)];
                keep[w] = 1;
                frontier.push_back(w);
                ++have;
            }
            g = induced_namu(g, keep);
        }
        for (auto& l : g.lambda)
            if (uniform(rng, 0, 3) == 0) l += uniform(rng, 1, 2);
        if (g.valid()) return g;
    }
}

// b with some edges subdivided and some values raised, so that g ⊴ b.
inline bw::Namu random_dominating(Rng& rng, const bw::Namu& g) {
    bw::Namu b = g;
    const int m = b.edges();
    for (int e = 0; e < m; ++e) {
        if (uniform(rng, 0, 2) != 0) continue;
        int w = b.n++;
        int v = b.ends[e][1];
        auto a = b.alpha[e];
        b.ends[e][1] = w;
        b.ends.push_back({w, v});
        b.alpha.push_back(a);
        b.lambda.push_back(b.lambda[e] + uniform(rng, 0, 1));
    }
    for (auto& l : b.lambda)
        if (uniform(rng, 0, 4) == 0) l += 1;
    return b;
}

} // namespace bwtest
