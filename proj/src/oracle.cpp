#include "bw/oracle.hpp"

#include <set>

namespace bw {

TreeIterator::TreeIterator(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw EmptySubset();
    int extra = std::max<int>(0, static_cast<int>(parts_.size()) - 3);
    choice_.assign(extra, 0);
    rebuild();
}

TreeIterator::TreeIterator(int n) : TreeIterator([n] {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}()) {}

long TreeIterator::count(int n) {
    long c = 1;
    for (int j = 3; j < n; ++j) c *= 2 * j - 3;
    return c;
}

void TreeIterator::rebuild() {
    const int n = static_cast<int>(parts_.size());
    if (n == 1) {
        tree_ = DecTree::leaf(parts_[0]);
        tree_.root = -1;
        return;
    }
    DecTree t = DecTree::pair(parts_[0], parts_[1]);
    for (int i = 2; i < n; ++i) t = t.with_leaf_on_edge(i == 2 ? 0 : choice_[i - 3], parts_[i]);
    tree_ = std::move(t);
}

void TreeIterator::next() {
    // odometer over insertion edges; a tree with j leaves has 2j-3 edges
    for (int i = static_cast<int>(choice_.size()) - 1; i >= 0; --i) {
        int leaves = i + 3;
        if (++choice_[i] < 2 * leaves - 3) {
            rebuild();
            return;
        }
        choice_[i] = 0;
    }
    done_ = true;
}

BruteResult brute_branchwidth(const Arrangement& a, int max_parts) {
    const int n = a.n();
    if (n > max_parts) throw TooLarge(std::to_string(n) + " parts");
    if (n == 0) throw EmptySubset();
    BruteResult best;
    best.width = -1;
    for (TreeIterator it(n); !it.done(); it.next()) {
        ++best.trees;
        int w = n == 1 ? 0 : width(it.tree(), a).max;
        if (best.width < 0 || w < best.width) {
            best.width = w;
            best.witness = it.tree();
        }
    }
    return best;
}

std::vector<Namu> brute_fullset(const Arrangement& a, const DecTree& base, int x, int k, const SpaceRef& space) {
    auto vx = base.parts_below(x);
    if (vx.size() > 5) throw TooLarge(std::to_string(vx.size()) + " parts below the node");
    std::vector<Namu> out;
    std::set<std::string> seen;
    for (TreeIterator it(vx); !it.done(); it.next()) {
        const DecTree& t = it.tree();
        if (t.n > 1 && width(t, a).max > k) continue;
        auto rep = decomposition_predicates(t, a, base, x, k);
        if (!rep.totally_pure || !rep.ksafe) continue;
        Namu tau = compactify(reduced_namu(t, a, base, x, space));
        if (tau.width() > k) continue;
        if (seen.insert(canonical(tau)).second) out.push_back(std::move(tau));
    }
    return out;
}

} // namespace bw
