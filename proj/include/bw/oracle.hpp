#pragma once

#include <stdexcept>
#include <vector>

#include "bw/bdtree.hpp"
#include "bw/namu.hpp"

namespace bw {

struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& w) : std::invalid_argument("instance too large for brute force: " + w) {}
};

// All unrooted binary trees whose leaves carry the given parts, by inserting
// one leaf at a time into every edge of the previous tree.
class TreeIterator {
public:
    explicit TreeIterator(std::vector<int> parts);
    explicit TreeIterator(int n);

    bool done() const { return done_; }
    const DecTree& tree() const { return tree_; }
    void next();

    static long count(int n); // (2n-5)!!

private:
    void rebuild();

    std::vector<int> parts_;
    std::vector<int> choice_;
    DecTree tree_;
    bool done_ = false;
};

struct BruteResult {
    int width = 0;
    DecTree witness;
    long trees = 0;
};

BruteResult brute_branchwidth(const Arrangement& a, int max_parts = 8);

// Compactified reduced namus of every width-<=k, k-safe, totally pure
// decomposition of the parts below x, in the F^r store `space`.
std::vector<Namu> brute_fullset(const Arrangement& a, const DecTree& base, int x, int k, const SpaceRef& space);

} // namespace bw
