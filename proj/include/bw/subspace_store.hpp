#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "bw/linalg.hpp"

namespace bw {

// Interns subspaces of one ambient space F^d and memoizes sums, intersections
// and containment, so that namus can carry plain integer handles.
class SubspaceStore {
public:
    SubspaceStore(FieldSpec f, int ambient);

    const FieldSpec& field() const { return f_; }
    int ambient() const { return d_; }
    int size() const { return static_cast<int>(items_.size()); }

    int intern(const Subspace& s);
    const Subspace& get(int id) const { return items_.at(id); }
    int dim(int id) const { return dims_[id]; }
    int zero() const { return 0; }
    int full() const { return full_; }

    int sum(int a, int b);
    int meet(int a, int b);
    bool leq(int a, int b) { return meet(a, b) == a; }
    int image(const Mat& map, int id, SubspaceStore& target);

private:
    FieldSpec f_;
    int d_;
    int full_ = 0;
    std::vector<Subspace> items_;
    std::vector<int> dims_;
    std::unordered_map<std::string, int> index_;
    std::unordered_map<std::uint64_t, int> sum_memo_, meet_memo_;
};

using SpaceRef = std::shared_ptr<SubspaceStore>;

inline SpaceRef make_space(FieldSpec f, int ambient) { return std::make_shared<SubspaceStore>(f, ambient); }

} // namespace bw
