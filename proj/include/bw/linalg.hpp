#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bw/field.hpp"

namespace bw {

struct AmbientMismatch : std::invalid_argument {
    AmbientMismatch() : std::invalid_argument("subspaces live in different ambient spaces") {}
};

struct ShapeMismatch : std::invalid_argument {
    explicit ShapeMismatch(const std::string& what) : std::invalid_argument("shape mismatch: " + what) {}
};

// Dense row-major matrix over GF(p).
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, FieldSpec f);

    static Mat identity(int n, FieldSpec f);
    static Mat from_rows(const std::vector<std::vector<elem_t>>& rows, FieldSpec f, int cols = -1);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return f_; }

    elem_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    elem_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::vector<elem_t>& data() const { return a_; }

    Mat transpose() const;
    Mat select_cols(const std::vector<int>& idx) const;
    Mat select_rows(const std::vector<int>& idx) const;
    Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    std::vector<elem_t> column(int j) const;

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    FieldSpec f_{2};
    std::vector<elem_t> a_;
};

Mat hcat(const Mat& a, const Mat& b);
Mat multiply(const Mat& a, const Mat& b);

struct RrefResult {
    Mat m;                   // reduced row echelon form, zero rows removed
    std::vector<int> pivots; // pivot column of each row
};

RrefResult rref(const Mat& m);           // dispatches to the packed path over GF(2)
RrefResult rref_generic(const Mat& m);   // works for every p
RrefResult rref_gf2_packed(const Mat& m);

int rank(const Mat& m);
// Indices of the first maximal independent set of columns (resp. rows), scanning left to right.
std::vector<int> column_basis(const Mat& m);
std::vector<int> row_basis(const Mat& m);
// Columns form a basis of {x : m x = 0}.
Mat null_space(const Mat& m);
// Some X with a X = b, if one exists.
std::optional<Mat> solve(const Mat& a, const Mat& b);

// Coordinates re-expressed through a transition matrix: t * coords.
Mat apply_transition(const Mat& t, const Mat& coords);

// Subspace of F^ambient held by a canonical basis: the basis matrix (ambient x dim)
// is the transpose of the RREF of the spanning vectors, so equal subspaces compare
// equal entry by entry.
class Subspace {
public:
    Subspace() = default;
    static Subspace span(const Mat& columns);
    static Subspace zero(int ambient, FieldSpec f);
    static Subspace full(int ambient, FieldSpec f);
    static Subspace from_vectors(const std::vector<std::vector<elem_t>>& vecs, int ambient, FieldSpec f);

    int ambient_dim() const { return basis_.rows(); }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    const FieldSpec& field() const { return basis_.field(); }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(basis_ == o.basis_); }
    std::size_t hash() const;
    std::string key() const;
    std::string str() const;

private:
    Mat basis_;
};

bool subspace_contains(const Subspace& outer, const Subspace& inner);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
// Image of a subspace under a linear map (map.cols() == s.ambient_dim()).
Subspace subspace_image(const Mat& map, const Subspace& s);

} // namespace bw
