#include <algorithm>
#include <map>

#include "bw/namu.hpp"

namespace bw {

namespace {

// A maximal path between two nodes of degree other than 2.
struct Chain {
    int start = -1, end = -1;
    std::vector<int> edges;    // in order from start
    std::vector<int> near;     // near[i]: index s with ends[edges[i]][s] closer to start
    std::vector<int> interior; // degree-2 nodes between consecutive edges
    int reverse = -1;
};

struct Skeleton {
    std::vector<Chain> chains;
    std::map<std::pair<int, int>, int> by_start; // (start node, first edge) -> chain
    std::vector<int> leaves;
};

Skeleton skeleton(const Namu& g) {
    Skeleton sk;
    auto inc = g.incident();
    for (int s = 0; s < g.n; ++s) {
        if (inc[s].size() == 2) continue;
        if (inc[s].size() == 1) sk.leaves.push_back(s);
        for (int e : inc[s]) {
            Chain c;
            c.start = s;
            int cur = s, ce = e;
            while (true) {
                c.edges.push_back(ce);
                c.near.push_back(g.side_of(ce, cur));
                int nxt = g.other(ce, cur);
                if (inc[nxt].size() != 2) { c.end = nxt; break; }
                c.interior.push_back(nxt);
                ce = inc[nxt][0] == ce ? inc[nxt][1] : inc[nxt][0];
                cur = nxt;
            }
            sk.by_start[{s, e}] = static_cast<int>(sk.chains.size());
            sk.chains.push_back(std::move(c));
        }
    }
    for (auto& c : sk.chains) c.reverse = sk.by_start.at({c.end, c.edges.back()});
    return sk;
}

struct Matcher {
    const Namu& a;
    const Namu& b;
    Skeleton sa, sb;
    std::vector<std::vector<int>> inca, incb;
    std::map<std::pair<int, int>, int> memo;     // -1 no, 0/1 = chosen pairing
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> grid_path;

    Matcher(const Namu& x, const Namu& y) : a(x), b(y), sa(skeleton(x)), sb(skeleton(y)), inca(x.incident()), incb(y.incident()) {}

    bool cell(const Chain& ca, int i, const Chain& cb, int j) const {
        int f = ca.edges[i], g = cb.edges[j];
        int sf = ca.near[i], sg = cb.near[j];
        return a.alpha[f][sf] == b.alpha[g][sg] && a.alpha[f][1 - sf] == b.alpha[g][1 - sg] &&
               a.lambda[f] <= b.lambda[g];
    }

    bool grid(int ia, int ib) {
        const Chain& ca = sa.chains[ia];
        const Chain& cb = sb.chains[ib];
        const int na = static_cast<int>(ca.edges.size()), nb = static_cast<int>(cb.edges.size());
        std::vector<std::vector<int>> from(na, std::vector<int>(nb, -2)); // -2 unreachable, -1 origin
        if (!cell(ca, 0, cb, 0)) return false;
        from[0][0] = -1;
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) {
                if (from[i][j] != -2 || (i == 0 && j == 0)) continue;
                if (!cell(ca, i, cb, j)) continue;
                // prefer diagonal, then advancing a, then b
                if (i > 0 && j > 0 && from[i - 1][j - 1] != -2) from[i][j] = 2;
                else if (i > 0 && from[i - 1][j] != -2) from[i][j] = 0;
                else if (j > 0 && from[i][j - 1] != -2) from[i][j] = 1;
            }
        if (from[na - 1][nb - 1] == -2) return false;
        std::vector<std::pair<int, int>> path;
        int i = na - 1, j = nb - 1;
        while (true) {
            path.push_back({i, j});
            int d = from[i][j];
            if (d == -1) break;
            if (d == 2) { --i; --j; }
            else if (d == 0) --i;
            else --j;
        }
        std::reverse(path.begin(), path.end());
        grid_path[{ia, ib}] = std::move(path);
        return true;
    }

    std::vector<int> out_chains(const Skeleton& s, const std::vector<std::vector<int>>& inc, int node, int skip_edge) {
        std::vector<int> r;
        for (int e : inc[node])
            if (e != skip_edge) r.push_back(s.by_start.at({node, e}));
        return r;
    }

    bool match(int ia, int ib) {
        auto key = std::make_pair(ia, ib);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second >= 0;
        memo[key] = -1;
        const Chain& ca = sa.chains[ia];
        const Chain& cb = sb.chains[ib];
        if (inca[ca.end].size() != incb[cb.end].size()) return false;
        if (!grid(ia, ib)) return false;
        if (inca[ca.end].size() == 1) {
            memo[key] = 0;
            return true;
        }
        auto oa = out_chains(sa, inca, ca.end, ca.edges.back());
        auto ob = out_chains(sb, incb, cb.end, cb.edges.back());
        if (match(oa[0], ob[0]) && match(oa[1], ob[1])) memo[key] = 0;
        else if (match(oa[0], ob[1]) && match(oa[1], ob[0])) memo[key] = 1;
        return memo[key] >= 0;
    }

    void build(int ia, int ib, int host_start, HostMap& h) {
        const Chain& ca = sa.chains[ia];
        const Chain& cb = sb.chains[ib];
        const auto& path = grid_path.at({ia, ib});
        int prev = host_start;
        for (std::size_t m = 0; m < path.size(); ++m) {
            auto [i, j] = path[m];
            int next;
            if (m + 1 == path.size()) {
                next = h.n++;
                h.branch.push_back({ca.end, cb.end});
            } else {
                auto [ni, nj] = path[m + 1];
                next = h.n++;
                h.branch.push_back({ni > i ? ca.interior[i] : -1, nj > j ? cb.interior[j] : -1});
            }
            h.ends.push_back({prev, next});
            h.image.push_back({EdgeImage{ca.edges[i], ca.near[i]}, EdgeImage{cb.edges[j], cb.near[j]}});
            prev = next;
        }
        if (inca[ca.end].size() == 3) {
            auto oa = out_chains(sa, inca, ca.end, ca.edges.back());
            auto ob = out_chains(sb, incb, cb.end, cb.edges.back());
            if (memo.at({ia, ib}) == 1) std::swap(ob[0], ob[1]);
            build(oa[0], ob[0], prev, h);
            build(oa[1], ob[1], prev, h);
        }
    }
};

} // namespace

std::optional<HostMap> tle_certificate(const Namu& a, const Namu& b) {
    if (a.space != b.space) throw AmbientMismatch();
    if (a.universe != b.universe) return std::nullopt;
    if (a.n == 1 || b.n == 1) {
        if (a.n != b.n) return std::nullopt;
        HostMap h;
        h.n = 1;
        h.branch = {{0, 0}};
        return h;
    }
    Matcher mt(a, b);
    if (mt.sa.leaves.size() != mt.sb.leaves.size() || mt.sa.chains.size() != mt.sb.chains.size())
        return std::nullopt;
    int leaf = mt.sa.leaves.front();
    int ia = mt.sa.by_start.at({leaf, mt.inca[leaf][0]});
    for (int lb : mt.sb.leaves) {
        int ib = mt.sb.by_start.at({lb, mt.incb[lb][0]});
        if (!mt.match(ia, ib)) continue;
        HostMap h;
        h.n = 1;
        h.branch.push_back({leaf, lb});
        mt.build(ia, ib, 0, h);
        return h;
    }
    return std::nullopt;
}

bool tle(const Namu& a, const Namu& b) { return tle_certificate(a, b).has_value(); }

} // namespace bw
