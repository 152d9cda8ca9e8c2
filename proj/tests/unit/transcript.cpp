#include "doctest.h"

#include "../support.hpp"

using namespace bw;

TEST_CASE("transcript bases") {
    bwtest::Rng rng(41);
    for (int it = 0; it < 30; ++it) {
        int n = bwtest::uniform(rng, 2, 6);
        auto in = bwtest::random_instance(rng, FieldSpec(it % 2 ? 3 : 2), n, 4, 2, 1);
        auto t = bwtest::random_tree(rng, n).rooted_at_first_edge();
        auto bases = boundary_bases(t, in.arr, 64);
        auto tr = build_transcript(t, in.arr, bases);
        CHECK(tr.basis[t.root].cols() == 0);
        auto parents = t.parents();
        for (int v = 0; v < t.n; ++v) {
            CHECK(Subspace::span(tr.basis[v]) == boundary_of(in.arr, t.parts_below(v)));
            if (parents[v] < 0) continue;
            CHECK(multiply(tr.extended[parents[v]], tr.transition[v]) == tr.basis[v]);
        }
    }
}

TEST_CASE("boundary cap") {
    FieldSpec f(2);
    Arrangement a(Mat::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}}, f), {2, 2});
    auto t = DecTree::pair(0, 1).rooted_at_first_edge();
    CHECK_THROWS_AS(boundary_bases(t, a, 1), WidthExceeded);
    CHECK_NOTHROW(boundary_bases(t, a, 2));
}
