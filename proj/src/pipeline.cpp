#include "bw/pipeline.hpp"

namespace bw {

namespace {

DecTree add_leaf(const DecTree& t, int part) {
    if (t.n == 0) {
        DecTree s = DecTree::leaf(part);
        s.root = -1;
        return s;
    }
    return t.with_leaf_on_edge(0, part);
}

} // namespace

SolveResult solve_arrangement(const Mat& mat, const std::vector<int>& part_sizes, int k, const DpOptions& opt) {
    SolveResult res;
    Preprocessed pre;
    try {
        pre = preprocess(mat, part_sizes, k);
    } catch (const RejectedAboveK& e) {
        // a part meeting the rest in dimension > k already proves width > k
        res.outcome = Outcome::AboveK;
        res.reason = e.what();
        res.failed_at = e.part;
        return res;
    }
    DecTree t;
    if (pre.arr.n() > 0) {
        auto cr = iterative_compression(pre.arr, k, opt);
        if (cr.above_k) {
            res.outcome = Outcome::AboveK;
            res.failed_at = cr.failed_at < 0 ? -1 : pre.original_index[cr.failed_at - 1];
            res.reason = "no decomposition of width <= " + std::to_string(k);
            return res;
        }
        t = cr.tree;
        for (auto& p : t.leaf_part)
            if (p >= 0) p = pre.original_index[p];
    }
    for (int p : pre.stripped) t = add_leaf(t, p);
    if (t.n == 1) t.root = 0;
    res.outcome = Outcome::Found;
    res.tree = std::move(t);
    return res;
}

} // namespace bw
