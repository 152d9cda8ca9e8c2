#include "bw/namu.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace bw {

std::vector<int> typical(const std::vector<int>& s) {
    std::vector<int> a = s;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> d;
        for (int x : a)
            if (d.empty() || d.back() != x) d.push_back(x);
        if (d.size() != a.size()) changed = true;
        a = std::move(d);
        const int n = static_cast<int>(a.size());
        for (int i = 0; i < n && !changed; ++i) {
            for (int j = n - 1; j >= i + 2 && !changed; --j) {
                int lo = std::min(a[i], a[j]), hi = std::max(a[i], a[j]);
                bool inside = true;
                for (int t = i + 1; t < j && inside; ++t) inside = a[t] >= lo && a[t] <= hi;
                if (inside) {
                    a.erase(a.begin() + i + 1, a.begin() + j);
                    changed = true;
                }
            }
        }
    }
    return a;
}

Namu Namu::single(SpaceRef space, int universe) {
    Namu g;
    g.space = std::move(space);
    g.universe = universe;
    g.n = 1;
    return g;
}

int Namu::width() const {
    int w = 0;
    for (int l : lambda) w = std::max(w, l);
    return w;
}

std::vector<std::vector<int>> Namu::incident() const {
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < edges(); ++e) {
        inc[ends[e][0]].push_back(e);
        inc[ends[e][1]].push_back(e);
    }
    return inc;
}

bool Namu::valid() const {
    if (!space || n < 1 || edges() != n - 1) return false;
    if (alpha.size() != ends.size() || lambda.size() != ends.size()) return false;
    auto inc = incident();
    for (auto& l : inc)
        if (l.size() > 3) return false;
    // connected
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int e : inc[v]) {
            int w = other(e, v);
            if (!seen[w]) { seen[w] = 1; ++cnt; st.push_back(w); }
        }
    }
    if (cnt != n) return false;
    for (int e = 0; e < edges(); ++e) {
        for (int s = 0; s < 2; ++s)
            if (!space->leq(alpha[e][s], universe)) return false;
        if (lambda[e] < space->dim(space->meet(alpha[e][0], alpha[e][1]))) return false;
    }
    // two-edge paths v0 e1 v1 e2 v2: alpha(v0,e1) within alpha(v1,e2)
    for (int v1 = 0; v1 < n; ++v1)
        for (int e1 : inc[v1])
            for (int e2 : inc[v1]) {
                if (e1 == e2) continue;
                int v0 = other(e1, v1);
                if (!space->leq(at(v0, e1), at(v1, e2))) return false;
            }
    return true;
}

std::string Namu::str() const {
    std::ostringstream os;
    os << "namu n=" << n << " U=" << space->get(universe).str() << "\n";
    for (int e = 0; e < edges(); ++e) {
        os << "  " << ends[e][0] << "-" << ends[e][1] << " lambda=" << lambda[e] << " a0="
           << space->get(alpha[e][0]).str() << " a1=" << space->get(alpha[e][1]).str() << "\n";
    }
    return os.str();
}

bool operator==(const Namu& a, const Namu& b) {
    return a.space == b.space && a.universe == b.universe && a.n == b.n && a.ends == b.ends &&
           a.alpha == b.alpha && a.lambda == b.lambda;
}

static std::vector<int> tree_centers(int n, const std::vector<std::vector<int>>& inc,
                                     const std::vector<std::array<int, 2>>& ends) {
    if (n <= 2) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    std::vector<int> deg(n);
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(inc[v].size());
        if (deg[v] <= 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer)
            for (int e : inc[v]) {
                int w = ends[e][0] == v ? ends[e][1] : ends[e][0];
                if (--deg[w] == 1) next.push_back(w);
            }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::string canonical(const Namu& g) {
    auto inc = g.incident();
    std::function<std::string(int, int)> rooted = [&](int v, int pe) {
        std::vector<std::string> kids;
        for (int e : inc[v]) {
            if (e == pe) continue;
            int c = g.other(e, v);
            std::string s = "[" + std::to_string(g.at(v, e)) + "," + std::to_string(g.at(c, e)) + "," +
                            std::to_string(g.lambda[e]) + "]" + rooted(c, e);
            kids.push_back(std::move(s));
        }
        std::sort(kids.begin(), kids.end());
        std::string out = "(";
        for (auto& k : kids) out += k;
        out += ")";
        return out;
    };
    std::string best;
    for (int c : tree_centers(g.n, inc, g.ends)) {
        std::string s = rooted(c, -1);
        if (best.empty() || s < best) best = std::move(s);
    }
    return "U" + std::to_string(g.universe) + best;
}

bool model_side_contains(const HostMap& h, int which, int v, int e) {
    std::vector<std::vector<int>> inc(h.n);
    for (int f = 0; f < static_cast<int>(h.ends.size()); ++f) {
        inc[h.ends[f][0]].push_back(f);
        inc[h.ends[f][1]].push_back(f);
    }
    std::vector<int> st{v};
    std::vector<char> seen(h.n, 0);
    seen[v] = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        if (h.branch[x][which] >= 0) return true;
        for (int f : inc[x]) {
            if (f == e) continue;
            int y = h.ends[f][0] == x ? h.ends[f][1] : h.ends[f][0];
            if (!seen[y]) { seen[y] = 1; st.push_back(y); }
        }
    }
    return false;
}

int model_alpha(const HostMap& h, int which, const Namu& pattern, int v, int e) {
    const EdgeImage& im = h.image[e][which];
    if (im.edge >= 0) {
        int s = h.ends[e][0] == v ? im.side : 1 - im.side;
        return pattern.alpha[im.edge][s];
    }
    return model_side_contains(h, which, v, e) ? pattern.universe : pattern.space->zero();
}

bool is_degenerate(const Namu& g, int e) { return g.alpha[e][0] == g.alpha[e][1]; }

int guarded_end(const Namu& g, int e) {
    auto& sp = *g.space;
    int a0 = g.alpha[e][0], a1 = g.alpha[e][1];
    if (a0 == a1) return -1;
    if (sp.leq(a0, a1)) return 0;
    if (sp.leq(a1, a0)) return 1;
    return -1;
}

// nodes on the side of ends[e][s] in T - e
static std::vector<int> side_nodes(const Namu& g, const std::vector<std::vector<int>>& inc, int e, int s) {
    std::vector<int> out;
    std::vector<char> seen(g.n, 0);
    int start = g.ends[e][s];
    std::vector<int> st{start};
    seen[start] = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        out.push_back(x);
        for (int f : inc[x]) {
            if (f == e) continue;
            int y = g.other(f, x);
            if (!seen[y]) { seen[y] = 1; st.push_back(y); }
        }
    }
    return out;
}

std::vector<char> blocked_nodes(const Namu& g) {
    auto inc = g.incident();
    std::vector<char> blocked(g.n, 0);
    for (int e = 0; e < g.edges(); ++e) {
        int s = guarded_end(g, e);
        if (s < 0) continue;
        for (int w : side_nodes(g, inc, e, s))
            if (w != g.ends[e][s]) blocked[w] = 1;
    }
    for (int y = 0; y < g.n; ++y) {
        if (inc[y].size() != 3) continue;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int exy = inc[y][i], eyz = inc[y][j];
                if (is_degenerate(g, exy) || is_degenerate(g, eyz)) continue;
                if (guarded_end(g, exy) >= 0 || guarded_end(g, eyz) >= 0) continue;
                int x = g.other(exy, y), z = g.other(eyz, y);
                if (g.at(x, exy) != g.at(y, eyz) || g.at(z, eyz) != g.at(y, exy)) continue;
                int third = inc[y][3 - i - j];
                int ts = g.side_of(third, g.other(third, y));
                for (int w : side_nodes(g, inc, third, ts)) blocked[w] = 1;
            }
    }
    return blocked;
}

TrimResult trim_with_map(const Namu& g) {
    TrimResult r;
    r.node_map.assign(g.n, -1);
    r.edge_map.assign(g.edges(), -1);
    for (int e = 0; e < g.edges(); ++e)
        if (is_degenerate(g, e)) { r.degenerate_edge = e; break; }
    if (r.degenerate_edge >= 0) {
        r.namu = Namu::single(g.space, g.universe);
        return r;
    }
    auto blocked = blocked_nodes(g);
    Namu t;
    t.space = g.space;
    t.universe = g.universe;
    t.n = 0;
    for (int v = 0; v < g.n; ++v)
        if (!blocked[v]) r.node_map[v] = t.n++;
    if (t.n == 0) throw std::logic_error("trim removed every node");
    for (int e = 0; e < g.edges(); ++e) {
        int a = r.node_map[g.ends[e][0]], b = r.node_map[g.ends[e][1]];
        if (a < 0 || b < 0) continue;
        r.edge_map[e] = t.edges();
        t.ends.push_back({a, b});
        t.alpha.push_back(g.alpha[e]);
        t.lambda.push_back(g.lambda[e]);
    }
    r.namu = std::move(t);
    return r;
}

Namu trim(const Namu& g) { return trim_with_map(g).namu; }

std::vector<CompressPath> compress_candidates(const Namu& g) {
    auto inc = g.incident();
    std::vector<CompressPath> out;
    for (int v0 = 0; v0 < g.n; ++v0)
        for (int e1 : inc[v0]) {
            CompressPath p;
            p.nodes = {v0};
            int cur = v0, ce = e1;
            while (true) {
                int nxt = g.other(ce, cur);
                if (std::find(p.nodes.begin(), p.nodes.end(), nxt) != p.nodes.end()) break;
                p.edges.push_back(ce);
                p.nodes.push_back(nxt);
                const int len = static_cast<int>(p.edges.size());
                if (len >= 2) {
                    // alpha constant along consecutive edges
                    int a = p.edges[len - 2], b = p.edges[len - 1];
                    int vm = p.nodes[len - 1];
                    bool ok = g.at(p.nodes[len - 2], a) == g.at(vm, b) && g.at(vm, a) == g.at(nxt, b);
                    if (!ok) break;
                    if (len == 2) {
                        if (g.lambda[p.edges[0]] == g.lambda[p.edges[1]]) out.push_back(p);
                    } else {
                        int lo = g.lambda[p.edges.front()], hi = g.lambda[p.edges.back()];
                        bool sand = true;
                        for (int j = 1; j + 1 < len && sand; ++j)
                            sand = lo <= g.lambda[p.edges[j]] && g.lambda[p.edges[j]] <= hi;
                        if (sand) out.push_back(p);
                    }
                }
                if (inc[nxt].size() != 2) break;
                int ne = inc[nxt][0] == ce ? inc[nxt][1] : inc[nxt][0];
                cur = nxt;
                ce = ne;
            }
        }
    return out;
}

static Namu contract_edges(const Namu& g, const std::vector<int>& gone) {
    std::vector<int> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<char> drop(g.edges(), 0);
    for (int e : gone) {
        drop[e] = 1;
        int a = find(g.ends[e][0]), b = find(g.ends[e][1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> id(g.n, -1);
    Namu t;
    t.space = g.space;
    t.universe = g.universe;
    t.n = 0;
    for (int v = 0; v < g.n; ++v)
        if (find(v) == v) id[v] = t.n++;
    for (int e = 0; e < g.edges(); ++e) {
        if (drop[e]) continue;
        t.ends.push_back({id[find(g.ends[e][0])], id[find(g.ends[e][1])]});
        t.alpha.push_back(g.alpha[e]);
        t.lambda.push_back(g.lambda[e]);
    }
    return t;
}

Namu compress(const Namu& g, const CompressPath& p) {
    if (p.edges.size() == 2) return contract_edges(g, {p.edges[0]});
    return contract_edges(g, std::vector<int>(p.edges.begin() + 1, p.edges.end() - 1));
}

Namu compress_fixpoint(const Namu& g, std::mt19937* shuffle) {
    Namu cur = g;
    while (true) {
        auto c = compress_candidates(cur);
        if (c.empty()) return cur;
        std::size_t pick = 0;
        if (shuffle) pick = std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(*shuffle);
        cur = compress(cur, c[pick]);
    }
}

Namu compactify(const Namu& g, std::mt19937* shuffle) { return compress_fixpoint(trim(g), shuffle); }

Namu project(const Namu& g, int sub) {
    Namu t = g;
    auto& sp = *g.space;
    t.universe = sp.meet(g.universe, sub);
    for (auto& a : t.alpha)
        for (int& x : a) x = sp.meet(x, sub);
    return t;
}

Namu map_namu(const Namu& g, const Mat& map, const SpaceRef& target) {
    std::unordered_map<int, int> memo;
    auto img = [&](int id) {
        auto it = memo.find(id);
        if (it != memo.end()) return it->second;
        int r = g.space->image(map, id, *target);
        memo.emplace(id, r);
        return r;
    };
    Namu t = g;
    t.space = target;
    t.universe = img(g.universe);
    for (auto& a : t.alpha)
        for (int& x : a) x = img(x);
    return t;
}

std::optional<KsafeAnchor> ksafe_anchor(const Namu& g, const TrimResult& t, int k) {
    auto& sp = *g.space;
    const int du = sp.dim(g.universe);
    auto inc = g.incident();
    auto passes = [&](int v, int e) { return g.lambda[e] + du - sp.dim(g.at(v, e)) <= k; };
    if (t.degenerate_edge < 0) {
        for (int e = 0; e < g.edges(); ++e) {
            if (t.edge_map[e] >= 0) continue;
            for (int s = 0; s < 2; ++s) {
                auto side = side_nodes(g, inc, e, s);
                bool kept = std::any_of(side.begin(), side.end(), [&](int w) { return t.node_map[w] >= 0; });
                if (kept && !passes(g.ends[e][s], e)) return std::nullopt;
            }
        }
        return KsafeAnchor{};
    }
    for (int e = 0; e < g.edges(); ++e) {
        if (!is_degenerate(g, e)) continue;
        for (int s = 0; s < 2; ++s) {
            int u = g.ends[e][s];
            // distances from u decide which end of each edge faces u
            std::vector<int> dist(g.n, -1);
            std::vector<int> q{u};
            dist[u] = 0;
            for (std::size_t i = 0; i < q.size(); ++i)
                for (int f : inc[q[i]]) {
                    int y = g.other(f, q[i]);
                    if (dist[y] < 0) { dist[y] = dist[q[i]] + 1; q.push_back(y); }
                }
            bool ok = true;
            for (int f = 0; f < g.edges() && ok; ++f) {
                int near = dist[g.ends[f][0]] < dist[g.ends[f][1]] ? g.ends[f][0] : g.ends[f][1];
                ok = passes(near, f);
            }
            if (ok) return KsafeAnchor{e, u};
        }
    }
    return std::nullopt;
}

bool ksafe_extension_check(const Namu& g, const Namu& base, int k) {
    if (base.space != g.space) throw AmbientMismatch();
    auto t = trim_with_map(g);
    if (canonical(t.namu) != canonical(base)) throw NotTrimOf();
    return ksafe_anchor(g, t, k).has_value();
}

} // namespace bw
