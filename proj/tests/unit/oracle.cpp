#include "doctest.h"

#include <set>

#include "../support.hpp"

using namespace bw;

TEST_CASE("tree enumeration") {
    CHECK(TreeIterator::count(3) == 1);
    CHECK(TreeIterator::count(4) == 3);
    CHECK(TreeIterator::count(6) == 105);
    std::set<std::string> seen;
    long n = 0;
    for (TreeIterator it(4); !it.done(); it.next()) {
        ++n;
        // distinct trees are told apart by their leaf pairings
        auto t = it.tree();
        auto inc = t.incident();
        std::vector<int> partner(4, -1);
        for (int v = 0; v < t.n; ++v) {
            if (t.leaf_part[v] >= 0) continue;
            std::vector<int> ls;
            for (int e : inc[v]) {
                int w = t.other(e, v);
                if (t.leaf_part[w] >= 0) ls.push_back(t.leaf_part[w]);
            }
            if (ls.size() == 2) {
                partner[ls[0]] = ls[1];
                partner[ls[1]] = ls[0];
            }
        }
        seen.insert(std::to_string(partner[0]));
    }
    CHECK(n == 3);
    CHECK(seen.size() == 3);
}

TEST_CASE("brute-force branch-width") {
    FieldSpec f2(2), f3(3);
    CHECK(brute_branchwidth(matroid_arrangement(Mat::identity(4, f2))).width == 0);

    // graphic matroid of K4: one column per edge, incidence vectors over GF(2)
    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    Mat inc(4, 6, f2);
    for (int e = 0; e < 6; ++e) {
        inc.at(k4.edges[e][0], e) = 1;
        inc.at(k4.edges[e][1], e) = 1;
    }
    auto k4r = brute_branchwidth(matroid_arrangement(inc));
    CHECK(k4r.width == 2); // r(X) + r(E - X) - r(E), without the +1 offset
    CHECK(k4r.trees == 105);

    Mat u24 = Mat::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}}, f3);
    CHECK(brute_branchwidth(matroid_arrangement(u24)).width == 2);

    CHECK_THROWS_AS(brute_branchwidth(matroid_arrangement(Mat::identity(9, f2))), TooLarge);
}

TEST_CASE("brute full sets at leaves") {
    FieldSpec f(2);
    Arrangement a(Mat::from_rows({{1, 1, 0}, {0, 1, 1}}, f), {1, 1, 1});
    auto base = DecTree::pair(0, 1).with_leaf_on_edge(0, 2).rooted_at_first_edge();
    auto space = make_space(f, a.r());
    for (int v = 0; v < base.n; ++v) {
        if (base.leaf_part[v] < 0) continue;
        auto fs = brute_fullset(a, base, v, 1, space);
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].n == 1);
        CHECK(space->get(fs[0].universe) == boundary_of(a, {base.leaf_part[v]}));
    }
}
