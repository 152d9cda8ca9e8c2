#include "bw/transcript.hpp"

#include <algorithm>

namespace bw {

namespace {

std::vector<int> pick(const std::vector<int>& from, const std::vector<int>& idx) {
    std::vector<int> r;
    for (int i : idx) r.push_back(from[i]);
    return r;
}

} // namespace

BoundaryBases boundary_bases(const DecTree& t, const Arrangement& a, int cap) {
    const Mat& m = a.mat();
    const int rows = a.r();
    // row i of the matrix belongs to pivot column piv[i]
    const auto& piv = a.pivots();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            if (m.at(i, piv[j]) != (i == j ? 1u : 0u)) throw NotRREF();
    std::vector<int> row_of(a.m(), -1);
    for (int i = 0; i < rows; ++i) row_of[piv[i]] = i;

    BoundaryBases out;
    out.p.resize(t.n);
    out.r.resize(t.n);
    out.q.resize(t.n);
    out.basis.resize(t.n);
    auto par = t.parents();
    std::vector<std::vector<int>> kids(t.n);
    for (int v = 0; v < t.n; ++v)
        if (par[v] >= 0) kids[par[v]].push_back(v);
    for (int v : t.postorder()) {
        std::vector<char> in_ev(a.m(), 0);
        for (int part : t.parts_below(v))
            for (int c : a.part(part)) in_ev[c] = 1;
        std::vector<int> rows_out, rows_in, cols_in_free, cols_out_free;
        for (int i = 0; i < rows; ++i) (in_ev[piv[i]] ? rows_in : rows_out).push_back(i);
        for (int c = 0; c < a.m(); ++c) {
            if (row_of[c] >= 0) continue;
            (in_ev[c] ? cols_in_free : cols_out_free).push_back(c);
        }
        std::vector<int> pcand, rcand; // candidate columns for P, candidate rows for R
        if (kids[v].empty()) {
            pcand = cols_in_free;
            rcand = rows_in;
        } else {
            for (int w : kids[v]) {
                pcand.insert(pcand.end(), out.p[w].begin(), out.p[w].end());
                rcand.insert(rcand.end(), out.r[w].begin(), out.r[w].end());
            }
            std::sort(pcand.begin(), pcand.end());
            std::sort(rcand.begin(), rcand.end());
        }
        auto pv = pick(pcand, column_basis(m.submatrix(rows_out, pcand)));
        auto rv = pick(rcand, row_basis(m.submatrix(rcand, cols_out_free)));
        if (static_cast<int>(pv.size() + rv.size()) > cap) throw WidthExceeded(v);
        auto qv = pick(cols_out_free, column_basis(m.submatrix(rv, cols_out_free)));
        Mat b(rows, static_cast<int>(pv.size() + qv.size()), a.field());
        int col = 0;
        for (int c : pv) {
            for (int i : rows_out) b.at(i, col) = m.at(i, c);
            ++col;
        }
        for (int c : qv) {
            for (int i : rows_in) b.at(i, col) = m.at(i, c);
            ++col;
        }
        out.p[v] = std::move(pv);
        out.r[v] = std::move(rv);
        out.q[v] = std::move(qv);
        out.basis[v] = std::move(b);
    }
    return out;
}

Transcript build_transcript(const DecTree& t, const Arrangement& a, const BoundaryBases& bases) {
    Transcript tr;
    tr.basis = bases.basis;
    tr.extended.resize(t.n);
    tr.transition.resize(t.n);
    auto par = t.parents();
    std::vector<std::vector<int>> kids(t.n);
    for (int v = 0; v < t.n; ++v)
        if (par[v] >= 0) kids[par[v]].push_back(v);
    for (int v = 0; v < t.n; ++v) {
        Mat all = tr.basis[v];
        for (int w : kids[v]) all = hcat(all, tr.basis[w]);
        auto keep = column_basis(all);
        const int d = tr.basis[v].cols();
        for (int i = 0; i < d; ++i)
            if (i >= static_cast<int>(keep.size()) || keep[i] != i) throw ExtensionFailure(v);
        tr.extended[v] = all.select_cols(keep);
        tr.order = std::max(tr.order, tr.extended[v].cols());
        if (all.rows() == 0) tr.extended[v] = Mat(a.r(), 0, a.field());
    }
    for (int v = 0; v < t.n; ++v) {
        if (par[v] < 0) continue;
        auto sol = solve(tr.extended[par[v]], tr.basis[v]);
        if (!sol) throw ExtensionFailure(v);
        tr.transition[v] = *sol;
    }
    return tr;
}

} // namespace bw
