#include "doctest.h"

#include "bw/field.hpp"
#include "bw/linalg.hpp"

using namespace bw;

TEST_CASE("field inverses") {
    CHECK(elem_inverse(1, FieldSpec(2)) == 1);
    CHECK(elem_inverse(2, FieldSpec(3)) == 2);
    CHECK(elem_inverse(5, FieldSpec(7)) == 3);
    CHECK_THROWS_AS(elem_inverse(0, FieldSpec(5)), ZeroInverse);
    CHECK_THROWS_AS(FieldSpec(4), NotPrime);
    FieldSpec f(11);
    for (elem_t a = 1; a < 11; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.reduce(-3) == 8);
}

TEST_CASE("rref") {
    FieldSpec f2(2), f3(3);
    auto id = rref(Mat::identity(2, f2));
    CHECK(id.m == Mat::identity(2, f2));
    CHECK(id.pivots == std::vector<int>{0, 1});

    auto r = rref(Mat::from_rows({{1, 2, 0}, {2, 1, 0}}, f3));
    CHECK(r.m == Mat::from_rows({{1, 2, 0}}, f3));
    CHECK(r.pivots == std::vector<int>{0});

    auto z = rref(Mat(3, 3, f2));
    CHECK(z.m.rows() == 0);
    CHECK(z.m.cols() == 3);
    CHECK(z.pivots.empty());
}

TEST_CASE("packed and generic elimination agree over GF(2)") {
    FieldSpec f(2);
    unsigned state = 12345;
    for (int it = 0; it < 50; ++it) {
        Mat m(7, 70, f);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 70; ++j) {
                state = state * 1103515245u + 12345u;
                m.at(i, j) = (state >> 16) & 1u;
            }
        auto a = rref_generic(m), b = rref_gf2_packed(m);
        CHECK(a.m == b.m);
        CHECK(a.pivots == b.pivots);
    }
}

TEST_CASE("null space and solve") {
    FieldSpec f(3);
    Mat a = Mat::from_rows({{1, 1, 0}, {0, 1, 2}}, f);
    Mat ns = null_space(a);
    CHECK(ns.cols() == 1);
    CHECK(multiply(a, ns) == Mat(2, 1, f));
    Mat b = Mat::from_rows({{2}, {1}}, f);
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(multiply(a, *x) == b);
    Mat lean = Mat::from_rows({{1, 0}, {1, 0}}, f);
    CHECK_FALSE(solve(lean, Mat::from_rows({{1}, {0}}, f)));
}

TEST_CASE("subspace lattice") {
    FieldSpec f(2);
    auto e = [&](std::vector<elem_t> v) { return Subspace::from_vectors({v}, static_cast<int>(v.size()), f); };
    Subspace x = Subspace::from_vectors({{1, 1, 0}, {0, 1, 1}}, 3, f);
    Subspace zero = Subspace::zero(3, f);
    CHECK(subspace_contains(x, x));
    CHECK(subspace_contains(x, zero));
    CHECK_FALSE(subspace_contains(e({1, 0}), e({1, 1})));
    CHECK(subspace_sum(x, zero) == x);
    CHECK(subspace_sum(e({1, 0, 0}), e({0, 1, 0})) == Subspace::from_vectors({{1, 0, 0}, {0, 1, 0}}, 3, f));
    CHECK(subspace_intersect(x, x) == x);
    Subspace e12 = Subspace::from_vectors({{1, 0, 0}, {0, 1, 0}}, 3, f);
    Subspace e23 = Subspace::from_vectors({{0, 1, 0}, {0, 0, 1}}, 3, f);
    CHECK(subspace_intersect(e12, e23) == e({0, 1, 0}));
    CHECK_THROWS_AS(subspace_sum(x, Subspace::zero(2, f)), AmbientMismatch);
    // spanning sets in a different order give the same canonical basis
    CHECK(Subspace::from_vectors({{0, 1, 1}, {1, 0, 1}}, 3, f) == x);
}

TEST_CASE("transitions") {
    FieldSpec f(3);
    Mat c = Mat::from_rows({{1, 2}, {0, 1}}, f);
    CHECK(apply_transition(Mat::identity(2, f), c) == c);
    CHECK_THROWS_AS(multiply(c, Mat(3, 1, f)), ShapeMismatch);
}
