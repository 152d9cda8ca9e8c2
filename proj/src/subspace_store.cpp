#include "bw/subspace_store.hpp"

#include <algorithm>

namespace bw {

SubspaceStore::SubspaceStore(FieldSpec f, int ambient) : f_(f), d_(ambient) {
    intern(Subspace::zero(ambient, f));
    full_ = intern(Subspace::full(ambient, f));
}

int SubspaceStore::intern(const Subspace& s) {
    if (s.ambient_dim() != d_ || s.field() != f_) throw AmbientMismatch();
    auto [it, fresh] = index_.try_emplace(s.key(), static_cast<int>(items_.size()));
    if (fresh) {
        items_.push_back(s);
        dims_.push_back(s.dim());
    }
    return it->second;
}

static std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

int SubspaceStore::sum(int a, int b) {
    if (a == b || b == 0) return a;
    if (a == 0) return b;
    auto key = pair_key(a, b);
    auto it = sum_memo_.find(key);
    if (it != sum_memo_.end()) return it->second;
    int r = intern(subspace_sum(items_[a], items_[b]));
    sum_memo_.emplace(key, r);
    return r;
}

int SubspaceStore::meet(int a, int b) {
    if (a == b) return a;
    if (a == 0 || b == 0) return 0;
    if (a == full_) return b;
    if (b == full_) return a;
    auto key = pair_key(a, b);
    auto it = meet_memo_.find(key);
    if (it != meet_memo_.end()) return it->second;
    int r = intern(subspace_intersect(items_[a], items_[b]));
    meet_memo_.emplace(key, r);
    return r;
}

int SubspaceStore::image(const Mat& map, int id, SubspaceStore& target) {
    return target.intern(subspace_image(map, items_.at(id)));
}

} // namespace bw
