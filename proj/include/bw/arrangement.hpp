#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bw/linalg.hpp"

namespace bw {

struct RejectedAboveK : std::runtime_error {
    RejectedAboveK(int part, const std::string& why)
        : std::runtime_error("rejected: " + why), part(part) {}
    int part; // offending index (0-based), or -1 when not tied to one part
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& w) : std::out_of_range(w) {}
};

// A list of subspaces of F^r given as consecutive column blocks of one matrix.
// The matrix is kept in reduced row echelon form without zero rows, so the pivot
// columns form an identity block and rows can be indexed by those columns.
class Arrangement {
public:
    Arrangement() = default;
    // Row-reduces `mat`; part_sizes must sum to mat.cols().
    Arrangement(const Mat& mat, const std::vector<int>& part_sizes);

    const Mat& mat() const { return mat_; }
    const FieldSpec& field() const { return mat_.field(); }
    int n() const { return static_cast<int>(parts_.size()); }
    int r() const { return mat_.rows(); }
    int m() const { return mat_.cols(); }
    const std::vector<int>& part(int i) const { return parts_.at(i); }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    std::vector<int> part_sizes() const;
    const std::vector<int>& pivots() const { return pivots_; }

    Subspace part_space(int i) const;
    // span of the union of the listed parts
    Subspace span_of(const std::vector<int>& part_ids) const;
    // Sub-arrangement on the listed parts, in the given order.
    Arrangement restrict_to(const std::vector<int>& part_ids) const;

private:
    Mat mat_;
    std::vector<std::vector<int>> parts_;
    std::vector<int> pivots_;
};

struct CutResult {
    int dim = 0;
    Mat basis; // r x dim, columns span the intersection
};

// dim(<V_X> ∩ <V_rest>) via the identity-block rank formula, with an explicit basis.
CutResult cut_dim(const Arrangement& a, const std::vector<int>& subset);
CutResult cut_dim_mask(const Arrangement& a, const std::vector<char>& in_x);

struct Preprocessed {
    Arrangement arr;                 // parts with nonzero dimension only
    std::vector<int> original_index; // part i of arr is part original_index[i] of the input
    std::vector<int> stripped;       // input parts that became zero-dimensional
};

// Row reduction, column reduction (each part replaced by a basis of its
// intersection with the rest), row reduction again. Throws RejectedAboveK.
Preprocessed preprocess(const Mat& mat, const std::vector<int>& part_sizes, int k);

} // namespace bw
