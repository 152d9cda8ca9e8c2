#pragma once

#include <string>

#include "bw/fullset.hpp"

namespace bw {

enum class Outcome { Found, AboveK, Rejected };

struct SolveResult {
    Outcome outcome = Outcome::AboveK;
    DecTree tree;       // over the input parts, when found
    std::string reason; // why it was rejected or found above k
    int failed_at = -1;
};

// Preprocess, compress, and reattach the parts that became zero-dimensional.
SolveResult solve_arrangement(const Mat& mat, const std::vector<int>& part_sizes, int k, const DpOptions& opt = {});

} // namespace bw
