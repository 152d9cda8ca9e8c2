#include "bw/arrangement.hpp"

#include <numeric>

namespace bw {

Arrangement::Arrangement(const Mat& mat, const std::vector<int>& part_sizes) {
    int total = std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
    if (total != mat.cols()) throw ShapeMismatch("part sizes do not cover the columns");
    RrefResult rr = rref(mat);
    mat_ = rr.m;
    pivots_ = rr.pivots;
    int c = 0;
    for (int s : part_sizes) {
        if (s < 0) throw ShapeMismatch("negative part size");
        std::vector<int> cols(s);
        std::iota(cols.begin(), cols.end(), c);
        c += s;
        parts_.push_back(cols);
    }
}

std::vector<int> Arrangement::part_sizes() const {
    std::vector<int> s;
    for (auto& p : parts_) s.push_back(static_cast<int>(p.size()));
    return s;
}

Subspace Arrangement::part_space(int i) const {
    if (i < 0 || i >= n()) throw IndexOutOfRange("part index " + std::to_string(i));
    return Subspace::span(mat_.select_cols(parts_[i]));
}

Subspace Arrangement::span_of(const std::vector<int>& part_ids) const {
    std::vector<int> cols;
    for (int i : part_ids) {
        if (i < 0 || i >= n()) throw IndexOutOfRange("part index " + std::to_string(i));
        cols.insert(cols.end(), parts_[i].begin(), parts_[i].end());
    }
    return Subspace::span(mat_.select_cols(cols));
}

Arrangement Arrangement::restrict_to(const std::vector<int>& part_ids) const {
    std::vector<int> cols, sizes;
    for (int i : part_ids) {
        if (i < 0 || i >= n()) throw IndexOutOfRange("part index " + std::to_string(i));
        cols.insert(cols.end(), parts_[i].begin(), parts_[i].end());
        sizes.push_back(static_cast<int>(parts_[i].size()));
    }
    return Arrangement(mat_.select_cols(cols), sizes);
}

CutResult cut_dim_mask(const Arrangement& a, const std::vector<char>& in_x) {
    if (static_cast<int>(in_x.size()) != a.n()) throw IndexOutOfRange("mask length");
    const Mat& m = a.mat();
    std::vector<char> col_x(m.cols(), 0), is_piv(m.cols(), 0);
    for (int i = 0; i < a.n(); ++i)
        if (in_x[i])
            for (int c : a.part(i)) col_x[c] = 1;
    for (int c : a.pivots()) is_piv[c] = 1;
    // rows are indexed by the pivot columns
    std::vector<int> rows_x, rows_y, x_minus_b, y_minus_b;
    for (std::size_t i = 0; i < a.pivots().size(); ++i)
        (col_x[a.pivots()[i]] ? rows_x : rows_y).push_back(static_cast<int>(i));
    for (int c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        (col_x[c] ? x_minus_b : y_minus_b).push_back(c);
    }
    CutResult res;
    std::vector<int> p = column_basis(m.submatrix(rows_y, x_minus_b));
    std::vector<int> q = column_basis(m.submatrix(rows_x, y_minus_b));
    res.dim = static_cast<int>(p.size() + q.size());
    res.basis = Mat(m.rows(), res.dim, m.field());
    int j = 0;
    for (int t : p) {
        int c = x_minus_b[t];
        for (int r : rows_y) res.basis.at(r, j) = m.at(r, c);
        ++j;
    }
    for (int t : q) {
        int c = y_minus_b[t];
        for (int r : rows_x) res.basis.at(r, j) = m.at(r, c);
        ++j;
    }
    return res;
}

CutResult cut_dim(const Arrangement& a, const std::vector<int>& subset) {
    std::vector<char> mask(a.n(), 0);
    for (int i : subset) {
        if (i < 0 || i >= a.n()) throw IndexOutOfRange("part index " + std::to_string(i));
        mask[i] = 1;
    }
    return cut_dim_mask(a, mask);
}

Preprocessed preprocess(const Mat& mat, const std::vector<int>& part_sizes, int k) {
    Arrangement first(mat, part_sizes);
    std::vector<Mat> blocks;
    for (int i = 0; i < first.n(); ++i) {
        std::vector<char> mask(first.n(), 0);
        mask[i] = 1;
        CutResult c = cut_dim_mask(first, mask);
        if (c.dim > k) throw RejectedAboveK(i, "part " + std::to_string(i + 1) + " meets the rest in dimension " +
                                                   std::to_string(c.dim) + " > k");
        blocks.push_back(c.basis);
    }
    Preprocessed out;
    Mat joined(first.r(), 0, first.field());
    std::vector<int> sizes;
    for (int i = 0; i < first.n(); ++i) {
        if (blocks[i].cols() == 0) {
            out.stripped.push_back(i);
            continue;
        }
        joined = hcat(joined, blocks[i]);
        sizes.push_back(blocks[i].cols());
        out.original_index.push_back(i);
    }
    out.arr = Arrangement(joined, sizes);
    return out;
}

} // namespace bw
