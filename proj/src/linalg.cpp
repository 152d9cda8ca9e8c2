#include "bw/linalg.hpp"

#include <cstdint>
#include <functional>
#include <sstream>

namespace bw {

Mat::Mat(int rows, int cols, FieldSpec f)
    : rows_(rows), cols_(cols), f_(f), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("negative dimension");
}

Mat Mat::identity(int n, FieldSpec f) {
    Mat m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<elem_t>>& rows, FieldSpec f, int cols) {
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    Mat m(static_cast<int>(rows.size()), c, f);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw ShapeMismatch("ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = f.reduce(rows[i][j]);
    }
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_, f_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::select_cols(const std::vector<int>& idx) const {
    Mat m(rows_, static_cast<int>(idx.size()), f_);
    for (int i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return m;
}

Mat Mat::select_rows(const std::vector<int>& idx) const {
    Mat m(static_cast<int>(idx.size()), cols_, f_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < cols_; ++j) m.at(static_cast<int>(i), j) = at(idx[i], j);
    return m;
}

Mat Mat::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Mat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()), f_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = at(rows[i], cols[j]);
    return m;
}

std::vector<elem_t> Mat::column(int j) const {
    std::vector<elem_t> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && a_ == o.a_;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ";" : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("hcat row counts differ");
    if (a.field() != b.field()) throw ShapeMismatch("hcat fields differ");
    Mat m(a.rows(), a.cols() + b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

Mat multiply(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw ShapeMismatch(std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const FieldSpec& f = a.field();
    Mat c(a.rows(), b.cols(), f);
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l) {
            elem_t x = a.at(i, l);
            if (x == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(l, j)) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(l, j)));
        }
    return c;
}

Mat apply_transition(const Mat& t, const Mat& coords) { return multiply(t, coords); }

RrefResult rref_generic(const Mat& in) {
    const FieldSpec& f = in.field();
    Mat m = in;
    int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c)) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        elem_t iv = f.inv(m.at(r, c));
        for (int j = c; j < cols; ++j) m.at(r, j) = f.mul(m.at(r, j), iv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            elem_t factor = m.at(i, c);
            for (int j = c; j < cols; ++j)
                if (m.at(r, j)) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<int> keep(r);
    for (int i = 0; i < r; ++i) keep[i] = i;
    return {m.select_rows(keep), pivots};
}

RrefResult rref_gf2_packed(const Mat& in) {
    int rows = in.rows(), cols = in.cols();
    int words = (cols + 63) / 64;
    std::vector<std::uint64_t> w(static_cast<std::size_t>(rows) * words, 0);
    auto row = [&](int i) { return w.data() + static_cast<std::size_t>(i) * words; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (in.at(i, j) & 1u) row(i)[j / 64] |= std::uint64_t{1} << (j % 64);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        std::uint64_t bit = std::uint64_t{1} << (c % 64);
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (row(i)[c / 64] & bit) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int k = 0; k < words; ++k) std::swap(row(sel)[k], row(r)[k]);
        for (int i = 0; i < rows; ++i)
            if (i != r && (row(i)[c / 64] & bit))
                for (int k = c / 64; k < words; ++k) row(i)[k] ^= row(r)[k];
        pivots.push_back(c);
        ++r;
    }
    Mat out(r, cols, in.field());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = (row(i)[j / 64] >> (j % 64)) & 1u;
    return {out, pivots};
}

RrefResult rref(const Mat& m) { return m.field().is_gf2() ? rref_gf2_packed(m) : rref_generic(m); }

int rank(const Mat& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<int> column_basis(const Mat& m) { return rref(m).pivots; }

std::vector<int> row_basis(const Mat& m) { return rref(m.transpose()).pivots; }

Mat null_space(const Mat& m) {
    RrefResult rr = rref(m);
    const FieldSpec& f = m.field();
    int cols = m.cols();
    std::vector<int> is_pivot(cols, -1);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) is_pivot[rr.pivots[i]] = static_cast<int>(i);
    std::vector<int> free_cols;
    for (int j = 0; j < cols; ++j)
        if (is_pivot[j] < 0) free_cols.push_back(j);
    Mat ns(cols, static_cast<int>(free_cols.size()), f);
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        ns.at(fc, static_cast<int>(t)) = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            ns.at(rr.pivots[i], static_cast<int>(t)) = f.neg(rr.m.at(static_cast<int>(i), fc));
    }
    return ns;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("solve: row counts differ");
    const FieldSpec& f = a.field();
    RrefResult rr = rref_generic(hcat(a, b));
    Mat x(a.cols(), b.cols(), f);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        int pc = rr.pivots[i];
        if (pc >= a.cols()) return std::nullopt; // inconsistent
        for (int j = 0; j < b.cols(); ++j) x.at(pc, j) = rr.m.at(static_cast<int>(i), a.cols() + j);
    }
    return x;
}

Subspace Subspace::span(const Mat& columns) {
    RrefResult rr = rref(columns.transpose());
    Subspace s;
    s.basis_ = rr.m.transpose();
    if (rr.m.rows() == 0) s.basis_ = Mat(columns.rows(), 0, columns.field());
    return s;
}

Subspace Subspace::zero(int ambient, FieldSpec f) { return span(Mat(ambient, 0, f)); }

Subspace Subspace::full(int ambient, FieldSpec f) { return span(Mat::identity(ambient, f)); }

Subspace Subspace::from_vectors(const std::vector<std::vector<elem_t>>& vecs, int ambient, FieldSpec f) {
    Mat m(ambient, static_cast<int>(vecs.size()), f);
    for (std::size_t j = 0; j < vecs.size(); ++j) {
        if (static_cast<int>(vecs[j].size()) != ambient) throw ShapeMismatch("vector length");
        for (int i = 0; i < ambient; ++i) m.at(i, static_cast<int>(j)) = f.reduce(vecs[j][i]);
    }
    return span(m);
}

std::size_t Subspace::hash() const {
    std::size_t h = std::hash<int>()(basis_.rows() * 131 + basis_.cols());
    for (elem_t x : basis_.data()) h = h * 1000003u ^ x;
    return h;
}

std::string Subspace::key() const {
    std::string k;
    k.reserve(basis_.data().size() * 2 + 4);
    k.push_back(static_cast<char>(basis_.rows()));
    k.push_back(static_cast<char>(basis_.cols()));
    for (elem_t x : basis_.data()) {
        k.push_back(static_cast<char>(x & 0xff));
        k.push_back(static_cast<char>((x >> 8) & 0xff));
    }
    return k;
}

std::string Subspace::str() const {
    std::ostringstream os;
    os << "<";
    for (int j = 0; j < dim(); ++j) {
        os << (j ? "," : "");
        for (int i = 0; i < ambient_dim(); ++i) os << basis_.at(i, j);
    }
    os << ">";
    return os.str();
}

static void check_same(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field()) throw AmbientMismatch();
}

bool subspace_contains(const Subspace& outer, const Subspace& inner) {
    check_same(outer, inner);
    if (inner.dim() == 0) return true;
    if (inner.dim() > outer.dim()) return false;
    return rank(hcat(outer.basis(), inner.basis())) == outer.dim();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    check_same(a, b);
    return Subspace::span(hcat(a.basis(), b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    check_same(a, b);
    const FieldSpec& f = a.field();
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim(), f);
    // null space of [A  -B]: pairs (x, y) with A x = B y
    Mat negb = b.basis();
    for (int i = 0; i < negb.rows(); ++i)
        for (int j = 0; j < negb.cols(); ++j) negb.at(i, j) = f.neg(negb.at(i, j));
    Mat ns = null_space(hcat(a.basis(), negb));
    std::vector<int> top(a.dim());
    for (int i = 0; i < a.dim(); ++i) top[i] = i;
    Mat coeffs = ns.select_rows(top);
    return Subspace::span(multiply(a.basis(), coeffs));
}

Subspace subspace_image(const Mat& map, const Subspace& s) {
    if (map.cols() != s.ambient_dim()) throw ShapeMismatch("image: map width differs from ambient");
    return Subspace::span(multiply(map, s.basis()));
}

} // namespace bw
