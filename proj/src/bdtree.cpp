#include "bw/bdtree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bw {

DecTree DecTree::leaf(int part) {
    DecTree t;
    t.add_node(part);
    t.root = 0;
    return t;
}

DecTree DecTree::pair(int p, int q) {
    DecTree t;
    t.add_node(p);
    t.add_node(q);
    t.add_edge(0, 1);
    return t;
}

std::vector<std::vector<int>> DecTree::incident() const {
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < edges(); ++e) {
        inc[ends[e][0]].push_back(e);
        inc[ends[e][1]].push_back(e);
    }
    return inc;
}

int DecTree::add_node(int part) {
    leaf_part.push_back(part);
    return n++;
}

void DecTree::add_edge(int u, int v) { ends.push_back({u, v}); }

std::vector<int> DecTree::leaves() const {
    std::vector<int> r;
    for (int v = 0; v < n; ++v)
        if (leaf_part[v] >= 0) r.push_back(v);
    return r;
}

std::vector<int> DecTree::parts() const {
    std::vector<int> r;
    for (int p : leaf_part)
        if (p >= 0) r.push_back(p);
    std::sort(r.begin(), r.end());
    return r;
}

bool DecTree::valid() const {
    if (n < 1 || edges() != n - 1 || static_cast<int>(leaf_part.size()) != n) return false;
    auto inc = incident();
    std::set<int> seen_parts;
    for (int v = 0; v < n; ++v) {
        int d = static_cast<int>(inc[v].size());
        if (n == 1) return leaf_part[0] >= 0;
        if (d == 1) {
            if (leaf_part[v] < 0 || !seen_parts.insert(leaf_part[v]).second) return false;
        } else {
            if (leaf_part[v] >= 0) return false;
            if (d == 2 && v != root) return false;
            if (d > 3 || d == 0) return false;
        }
    }
    if (root >= 0 && n > 1 && inc[root].size() != 2) return false;
    std::vector<char> vis(n, 0);
    std::vector<int> st{0};
    vis[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int e : inc[v]) {
            int w = other(e, v);
            if (!vis[w]) { vis[w] = 1; ++cnt; st.push_back(w); }
        }
    }
    return cnt == n;
}

std::vector<int> DecTree::parents() const {
    if (root < 0) throw Unrooted();
    auto inc = incident();
    std::vector<int> par(n, -1);
    std::vector<int> st{root};
    std::vector<char> vis(n, 0);
    vis[root] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int e : inc[v]) {
            int w = other(e, v);
            if (!vis[w]) { vis[w] = 1; par[w] = v; st.push_back(w); }
        }
    }
    return par;
}

std::vector<int> DecTree::children(int v) const {
    auto par = parents();
    std::vector<int> r;
    for (int e = 0; e < edges(); ++e) {
        int w = -1;
        if (ends[e][0] == v) w = ends[e][1];
        else if (ends[e][1] == v) w = ends[e][0];
        if (w >= 0 && par[v] != w) r.push_back(w);
    }
    return r;
}

std::vector<int> DecTree::postorder() const {
    auto par = parents();
    std::vector<std::vector<int>> kids(n);
    for (int e = 0; e < edges(); ++e) {
        int a = ends[e][0], b = ends[e][1];
        if (par[b] == a) kids[a].push_back(b);
        else kids[b].push_back(a);
    }
    std::vector<int> order;
    std::function<void(int)> go = [&](int v) {
        for (int c : kids[v]) go(c);
        order.push_back(v);
    };
    go(root);
    return order;
}

std::vector<int> DecTree::parts_below(int v) const {
    auto par = parents();
    std::vector<int> r;
    for (int w = 0; w < n; ++w) {
        if (leaf_part[w] < 0) continue;
        int x = w;
        while (x >= 0 && x != v) x = par[x];
        if (x == v) r.push_back(leaf_part[w]);
    }
    std::sort(r.begin(), r.end());
    return r;
}

DecTree DecTree::rooted_at_first_edge() const {
    if (root >= 0) return *this;
    DecTree t = *this;
    if (n == 1) {
        t.root = 0;
        return t;
    }
    int best = 0;
    auto key = [&](int e) { return std::make_pair(std::min(ends[e][0], ends[e][1]), std::max(ends[e][0], ends[e][1])); };
    for (int e = 1; e < edges(); ++e)
        if (key(e) < key(best)) best = e;
    int a = ends[best][0], b = ends[best][1];
    int r = t.add_node(-1);
    t.ends[best] = {a, r};
    t.add_edge(r, b);
    t.root = r;
    return t;
}

DecTree DecTree::unrooted() const {
    DecTree t = *this;
    if (root < 0) return t;
    t.root = -1;
    auto inc = incident();
    if (n <= 2 || inc[root].size() != 2) return t;
    int e1 = inc[root][0], e2 = inc[root][1];
    int a = other(e1, root), b = other(e2, root);
    DecTree s;
    std::vector<int> id(n, -1);
    for (int v = 0; v < n; ++v)
        if (v != root) id[v] = s.add_node(leaf_part[v]);
    for (int e = 0; e < edges(); ++e)
        if (e != e1 && e != e2) s.add_edge(id[ends[e][0]], id[ends[e][1]]);
    s.add_edge(id[a], id[b]);
    return s;
}

DecTree DecTree::with_leaf_on_edge(int e, int part) const {
    DecTree t = *this;
    if (n == 1) {
        // a single leaf becomes a two-leaf tree
        int w = t.add_node(part);
        t.add_edge(0, w);
        t.root = -1;
        return t;
    }
    int a = ends[e][0], b = ends[e][1];
    int mid = t.add_node(-1);
    int leafn = t.add_node(part);
    t.ends[e] = {a, mid};
    t.add_edge(mid, b);
    t.add_edge(mid, leafn);
    return t;
}

std::vector<std::array<std::vector<int>, 2>> side_parts(const DecTree& t) {
    auto inc = t.incident();
    std::vector<std::array<std::vector<int>, 2>> out(t.edges());
    // memoized over directed edges
    std::map<std::pair<int, int>, std::vector<int>> memo;
    std::function<const std::vector<int>&(int, int)> side = [&](int e, int v) -> const std::vector<int>& {
        auto key = std::make_pair(e, v);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<int> r;
        if (t.leaf_part[v] >= 0) r.push_back(t.leaf_part[v]);
        for (int f : inc[v])
            if (f != e) {
                const auto& s = side(f, t.other(f, v));
                r.insert(r.end(), s.begin(), s.end());
            }
        std::sort(r.begin(), r.end());
        return memo.emplace(key, std::move(r)).first->second;
    };
    for (int e = 0; e < t.edges(); ++e)
        for (int s = 0; s < 2; ++s) out[e][s] = side(e, t.ends[e][s]);
    return out;
}

static void check_labels(const DecTree& t, const Arrangement& a) {
    auto p = t.parts();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] >= a.n()) throw LabelMismatch("part " + std::to_string(p[i]) + " out of range");
        if (i > 0 && p[i] == p[i - 1]) throw LabelMismatch("part " + std::to_string(p[i]) + " repeated");
    }
}

WidthReport width(const DecTree& t, const Arrangement& a) {
    check_labels(t, a);
    WidthReport w;
    auto sp = side_parts(t);
    const bool all = static_cast<int>(t.parts().size()) == a.n();
    for (int e = 0; e < t.edges(); ++e) {
        int d;
        if (all) {
            d = cut_dim(a, sp[e][0]).dim;
        } else {
            d = subspace_intersect(a.span_of(sp[e][0]), a.span_of(sp[e][1])).dim();
        }
        w.per_edge.push_back(d);
        w.max = std::max(w.max, d);
    }
    return w;
}

// Minimal subtree spanning the leaves whose parts satisfy `keep`, with
// degree-2 nodes smoothed except `root_hint` (kept as root when it survives
// with degree 2). Nodes are restricted to `allowed` when given.
static InducedTree minimal_subtree(const DecTree& t, const std::function<bool(int)>& keep,
                                   const std::vector<char>* allowed, int anchor) {
    auto inc = t.incident();
    std::vector<char> in(t.n, 0);
    // a node is kept when it lies on a path between two kept leaves
    std::vector<int> chosen;
    for (int v = 0; v < t.n; ++v)
        if (t.leaf_part[v] >= 0 && (!allowed || (*allowed)[v]) && keep(t.leaf_part[v])) chosen.push_back(v);
    if (chosen.empty()) throw EmptySubset();
    // count chosen leaves per component of directed edges via DFS from chosen[0]
    std::vector<int> par(t.n, -1), order;
    std::vector<char> vis(t.n, 0);
    std::vector<int> st{chosen[0]};
    vis[chosen[0]] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        order.push_back(v);
        for (int e : inc[v]) {
            int w = t.other(e, v);
            if (vis[w] || (allowed && !(*allowed)[w])) continue;
            vis[w] = 1;
            par[w] = v;
            st.push_back(w);
        }
    }
    std::vector<int> cnt(t.n, 0);
    for (int v : chosen) cnt[v] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (par[*it] >= 0) cnt[par[*it]] += cnt[*it];
    // rooted at a chosen leaf, the subtree is every node with a chosen leaf below it
    for (int v : order)
        if (cnt[v] > 0) in[v] = 1;
    // root of the result: the node of the subtree closest to anchor
    int root = -1;
    if (anchor >= 0) {
        std::vector<int> dist(t.n, -1), q{anchor};
        dist[anchor] = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int e : inc[q[i]]) {
                int w = t.other(e, q[i]);
                if (dist[w] < 0) { dist[w] = dist[q[i]] + 1; q.push_back(w); }
            }
        for (int v = 0; v < t.n; ++v)
            if (in[v] && (root < 0 || dist[v] < dist[root])) root = v;
    }
    // smooth degree-2 nodes
    std::vector<int> deg(t.n, 0);
    for (int e = 0; e < t.edges(); ++e)
        if (in[t.ends[e][0]] && in[t.ends[e][1]]) { ++deg[t.ends[e][0]]; ++deg[t.ends[e][1]]; }
    InducedTree r;
    std::vector<int> id(t.n, -1);
    for (int v = 0; v < t.n; ++v)
        if (in[v] && (deg[v] != 2 || v == root)) {
            id[v] = r.tree.add_node(t.leaf_part[v]);
            r.phi.push_back(v);
        }
    // walk from each kept node through smoothed chains
    for (int v = 0; v < t.n; ++v) {
        if (id[v] < 0) continue;
        for (int e : inc[v]) {
            int prev = v, w = t.other(e, v);
            if (!in[w]) continue;
            while (id[w] < 0) {
                int nxt = -1;
                for (int f : inc[w]) {
                    int y = t.other(f, w);
                    if (y != prev && in[y]) nxt = y;
                }
                prev = w;
                w = nxt;
            }
            if (v < w) r.tree.add_edge(id[v], id[w]);
            else if (v == w) continue;
        }
    }
    if (root >= 0 && id[root] >= 0 && deg[root] == 2) r.tree.root = id[root];
    else if (r.tree.n == 1) r.tree.root = 0;
    return r;
}

InducedTree induced(const DecTree& t, const std::vector<int>& subset) {
    if (subset.empty()) throw EmptySubset();
    std::set<int> s(subset.begin(), subset.end());
    auto have = t.parts();
    for (int p : s)
        if (!std::binary_search(have.begin(), have.end(), p)) throw ScopeMismatch();
    auto r = minimal_subtree(t, [&](int p) { return s.count(p) > 0; }, nullptr, -1);
    r.tree.root = r.tree.n == 1 ? 0 : -1;
    return r;
}

Subspace boundary_of(const Arrangement& a, const std::vector<int>& part_set) {
    auto c = cut_dim(a, part_set);
    if (c.dim == 0) return Subspace::zero(a.r(), a.field());
    return Subspace::span(c.basis);
}

namespace {

// spans of part sets, interned in a store over F^r
struct SpanCache {
    const Arrangement& a;
    SpaceRef sp;
    std::map<std::vector<int>, int> memo;
    int span(const std::vector<int>& parts) {
        auto it = memo.find(parts);
        if (it != memo.end()) return it->second;
        int id = parts.empty() ? sp->zero() : sp->intern(a.span_of(parts));
        memo.emplace(parts, id);
        return id;
    }
};

std::vector<int> meet_sets(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
std::vector<int> minus_sets(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}
bool cuts(const std::array<std::vector<int>, 2>& sides, const std::vector<int>& s) {
    return !meet_sets(sides[0], s).empty() && !meet_sets(sides[1], s).empty();
}

// Everything about one scope V_x that does not depend on the base tree.
struct ScopeFacts {
    std::vector<int> vx, v0;
    int bx = 0;
    std::vector<std::array<int, 2>> ax; // B_x ∩ span(L_x towards ends[e][s])
    std::vector<std::array<char, 2>> lx_nonempty, mixed, guards, improper_guard;
    std::vector<char> deg_edge, cuts_vx;
    std::vector<BlockingPath> paths;
    std::vector<char> blocked_node;
};

ScopeFacts scope_facts(const DecTree& t, const std::vector<std::array<std::vector<int>, 2>>& P,
                       SpanCache& sc, const std::vector<int>& vx, int bx) {
    auto& sp = *sc.sp;
    ScopeFacts f;
    f.vx = vx;
    f.v0 = t.parts();
    f.bx = bx;
    const int m = t.edges();
    auto inc = t.incident();
    auto rest = minus_sets(f.v0, vx);
    f.ax.resize(m);
    f.lx_nonempty.resize(m);
    f.mixed.resize(m);
    f.guards.assign(m, {0, 0});
    f.improper_guard.assign(m, {0, 0});
    f.deg_edge.assign(m, 0);
    f.cuts_vx.assign(m, 0);
    for (int e = 0; e < m; ++e) {
        for (int s = 0; s < 2; ++s) {
            auto lx = meet_sets(P[e][s], vx);
            f.lx_nonempty[e][s] = !lx.empty();
            f.ax[e][s] = sp.meet(sc.span(lx), bx);
            f.mixed[e][s] = !lx.empty() && !meet_sets(P[e][s], rest).empty();
        }
        f.deg_edge[e] = f.ax[e][0] == f.ax[e][1];
        f.cuts_vx[e] = cuts(P[e], vx);
        for (int s = 0; s < 2; ++s)
            f.guards[e][s] = !f.deg_edge[e] && sp.leq(f.ax[e][s], f.ax[e][1 - s]);
    }
    auto lx_from = [&](int v, int e) { // L_x(T, v, other(e,v)) nonempty
        int w = t.other(e, v);
        return f.lx_nonempty[e][t.ends[e][0] == w ? 0 : 1] != 0;
    };
    auto side_of = [&](int e, int v) { return t.ends[e][0] == v ? 0 : 1; };
    f.blocked_node.assign(t.n, 0);
    std::function<void(int, int, std::vector<char>&)> mark_side = [&](int v, int skip, std::vector<char>& out) {
        // marks every node reachable from v without using edge `skip`
        std::vector<int> st{v};
        std::vector<char> vis(t.n, 0);
        vis[v] = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            out[x] = 1;
            for (int g : inc[x]) {
                if (g == skip) continue;
                int y = t.other(g, x);
                if (!vis[y]) { vis[y] = 1; st.push_back(y); }
            }
        }
    };
    for (int e = 0; e < m; ++e)
        for (int s = 0; s < 2; ++s) {
            if (!f.guards[e][s]) continue;
            int v = t.ends[e][s];
            std::vector<int> others;
            for (int g : inc[v])
                if (g != e) others.push_back(g);
            bool two = others.size() == 2 && lx_from(v, others[0]) && lx_from(v, others[1]);
            f.improper_guard[e][s] = two && f.mixed[e][s];
            if (two) {
                std::vector<char> mark(t.n, 0);
                mark_side(v, e, mark);
                for (int w = 0; w < t.n; ++w)
                    if (mark[w] && w != v) f.blocked_node[w] = 1;
            }
        }
    for (int v = 0; v < t.n; ++v) {
        const auto& l = inc[v];
        for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = i + 1; j < l.size(); ++j) {
                int e1 = l[i], e2 = l[j];
                if (f.deg_edge[e1] || f.deg_edge[e2]) continue;
                if (f.guards[e1][0] || f.guards[e1][1] || f.guards[e2][0] || f.guards[e2][1]) continue;
                int u = t.other(e1, v), w = t.other(e2, v);
                int sv1 = side_of(e1, v), su = 1 - sv1, sv2 = side_of(e2, v), sw = 1 - sv2;
                if (f.ax[e1][sv1] != f.ax[e2][sw] || f.ax[e2][sv2] != f.ax[e1][su]) continue;
                BlockingPath p{u, v, w, false};
                if (l.size() == 3) {
                    int e3 = l[3 - i - j];
                    int tn = t.other(e3, v);
                    p.improper = f.mixed[e3][side_of(e3, tn)] && lx_from(v, e1) && lx_from(v, e2) && lx_from(v, e3);
                    std::vector<char> mark(t.n, 0);
                    mark_side(tn, e3, mark);
                    for (int z = 0; z < t.n; ++z)
                        if (mark[z]) f.blocked_node[z] = 1;
                }
                f.paths.push_back(p);
            }
    }
    return f;
}

struct BaseContext {
    const DecTree& t;
    const Arrangement& a;
    const DecTree& base;
    std::vector<std::array<std::vector<int>, 2>> P;
    SpanCache sc;
    std::vector<int> v0;
    std::vector<int> par;
    std::map<int, ScopeFacts> facts;
    std::map<int, std::vector<char>> improper;
    std::map<int, bool> degen;

    BaseContext(const DecTree& t_, const Arrangement& a_, const DecTree& b_, SpaceRef sp)
        : t(t_), a(a_), base(b_), P(side_parts(t_)), sc{a_, std::move(sp), {}}, v0(t_.parts()), par(b_.parents()) {}

    bool strictly_below(int y, int x) const {
        for (int z = par[y]; z >= 0; z = par[z])
            if (z == x) return true;
        return false;
    }
    bool in_scope(int x) { return subset_of(base.parts_below(x), v0); }

    ScopeFacts& at(int x) {
        auto it = facts.find(x);
        if (it != facts.end()) return it->second;
        auto vx = base.parts_below(x);
        int bx = sc.sp->intern(boundary_of(a, vx));
        return facts.emplace(x, scope_facts(t, P, sc, vx, bx)).first->second;
    }

    bool degenerate(int x) {
        auto it = degen.find(x);
        if (it != degen.end()) return it->second;
        auto& f = at(x);
        std::vector<int> lower;
        for (int y = 0; y < base.n; ++y)
            if (strictly_below(y, x) && degenerate(y)) lower.push_back(y);
        std::vector<char> imp(t.edges(), 0);
        bool any = false;
        for (int e = 0; e < t.edges(); ++e) {
            if (!f.deg_edge[e] || !f.cuts_vx[e]) continue;
            bool ok = true;
            for (int y : lower)
                if (cuts(P[e], at(y).vx)) { ok = false; break; }
            imp[e] = ok;
            any = any || ok;
        }
        improper[x] = imp;
        degen[x] = any;
        return any;
    }

    bool disjoint(int x) {
        auto& f = at(x);
        if (f.vx == v0) return true;
        degenerate(x);
        const auto& imp = improper[x];
        auto inc = t.incident();
        for (int e = 0; e < t.edges(); ++e)
            for (int s = 0; s < 2; ++s) {
                if (P[e][s] != f.vx) continue;
                int v = t.ends[e][s];
                for (int g : inc[v])
                    if (imp[g]) return true;
            }
        return false;
    }

    bool pure(int x) {
        if (degenerate(x)) return disjoint(x);
        auto& f = at(x);
        for (auto& p : f.paths)
            if (p.improper) return false;
        for (auto& g : f.improper_guard)
            if (g[0] || g[1]) return false;
        return true;
    }
};

} // namespace

Namu canonical_namu(const DecTree& t, const Arrangement& a, const Subspace& b, const SpaceRef& space) {
    check_labels(t, a);
    if (b.ambient_dim() != a.r()) throw AmbientMismatch();
    auto& sp = *space;
    int bid = sp.intern(b);
    SpanCache sc{a, space, {}};
    auto P = side_parts(t);
    Namu g;
    g.space = space;
    g.n = t.n;
    g.ends = t.ends;
    g.universe = sp.meet(bid, sc.span(t.parts()));
    for (int e = 0; e < t.edges(); ++e) {
        int s0 = sc.span(P[e][0]), s1 = sc.span(P[e][1]);
        g.alpha.push_back({sp.meet(bid, s0), sp.meet(bid, s1)});
        g.lambda.push_back(sp.dim(sp.meet(s0, s1)));
    }
    return g;
}

Namu canonical_namu(const DecTree& t, const Arrangement& a, const Subspace& b) {
    return canonical_namu(t, a, b, make_space(a.field(), a.r()));
}

PredicateReport decomposition_predicates(const DecTree& t, const Arrangement& a, const DecTree& base, int x, int k) {
    check_labels(t, a);
    BaseContext ctx(t, a, base, make_space(a.field(), a.r()));
    if (!ctx.in_scope(x)) throw ScopeMismatch();
    auto& sp = *ctx.sc.sp;
    PredicateReport r;
    auto& f = ctx.at(x);
    r.vx = f.vx;
    r.boundary = sp.get(f.bx);
    r.degenerate = ctx.degenerate(x);
    r.degenerate_edge = f.deg_edge;
    r.improper_degenerate = ctx.improper[x];
    r.cuts_vx = f.cuts_vx;
    r.mixed = f.mixed;
    r.guards = f.guards;
    r.improper_guard = f.improper_guard;
    r.blocking_paths = f.paths;
    r.blocked_node = f.blocked_node;
    r.disjoint = ctx.disjoint(x);
    r.pure = ctx.pure(x);
    r.totally_pure = true;
    for (int y = 0; y < base.n && r.totally_pure; ++y)
        if (ctx.in_scope(y)) r.totally_pure = ctx.pure(y);
    const int m = t.edges();
    r.crossing.assign(m, 0);
    for (int e = 0; e < m; ++e) r.crossing[e] = f.mixed[e][0] && f.mixed[e][1];
    // protection
    std::vector<int> degenerate_scopes;
    for (int z = 0; z < base.n; ++z)
        if ((z == x || ctx.strictly_below(z, x)) && ctx.degenerate(z)) degenerate_scopes.push_back(z);
    r.protect.assign(m, {0, 0});
    r.protected_node.assign(t.n, 0);
    for (int e = 0; e < m; ++e) {
        bool eblocked = f.blocked_node[t.ends[e][0]] || f.blocked_node[t.ends[e][1]];
        for (int s = 0; s < 2; ++s) {
            bool p = eblocked && f.guards[e][s];
            for (int z : degenerate_scopes) {
                if (p) break;
                const auto& vz = ctx.at(z).vx;
                p = cuts(ctx.P[e], vz) && subset_of(ctx.P[e][s], vz);
            }
            r.protect[e][s] = p;
            if (p) r.protected_node[t.ends[e][s]] = 1;
        }
    }
    if (k >= 0) {
        const int dbx = sp.dim(f.bx);
        auto passes = [&](int e, int s) {
            int near = ctx.sc.span(ctx.P[e][s]), far = ctx.sc.span(ctx.P[e][1 - s]);
            int w = sp.dim(sp.meet(near, far));
            return w + dbx - sp.dim(sp.meet(f.bx, far)) <= k;
        };
        if (f.vx.size() == f.v0.size() && ctx.degenerate(x)) {
            // Every orientation is protected here. Only those pointing away from
            // the kept node matter, and that node must sit on an improper
            // degenerate edge, so try each such edge as the anchor.
            auto inc = t.incident();
            r.ksafe = false;
            for (int a = 0; a < m && !r.ksafe; ++a) {
                if (!ctx.improper[x][a]) continue;
                std::vector<int> dist(t.n, -1);
                std::vector<int> queue{t.ends[a][0], t.ends[a][1]};
                dist[queue[0]] = dist[queue[1]] = 0;
                for (std::size_t i = 0; i < queue.size(); ++i)
                    for (int g : inc[queue[i]]) {
                        int y = t.other(g, queue[i]);
                        if (dist[y] < 0) { dist[y] = dist[queue[i]] + 1; queue.push_back(y); }
                    }
                bool ok = passes(a, 0) && passes(a, 1);
                for (int e = 0; e < m && ok; ++e)
                    if (e != a) ok = passes(e, dist[t.ends[e][0]] > dist[t.ends[e][1]] ? 0 : 1);
                r.ksafe = ok;
            }
        } else {
            for (int e = 0; e < m && r.ksafe; ++e)
                for (int s = 0; s < 2; ++s)
                    if (r.protect[e][s] && !passes(e, s)) r.ksafe = false;
        }
    }
    return r;
}

Namu reduced_namu(const DecTree& t, const Arrangement& a, const DecTree& base, int x, const SpaceRef& space) {
    auto rep = decomposition_predicates(t, a, base, x);
    Namu full = canonical_namu(t, a, rep.boundary, space);
    if (rep.degenerate) return Namu::single(space, full.universe);
    Namu g;
    g.space = space;
    g.universe = full.universe;
    g.n = 0;
    std::vector<int> id(t.n, -1);
    for (int v = 0; v < t.n; ++v)
        if (!rep.protected_node[v]) id[v] = g.n++;
    if (g.n == 0) throw std::logic_error("reduced namu lost every node");
    for (int e = 0; e < t.edges(); ++e) {
        int u = id[t.ends[e][0]], v = id[t.ends[e][1]];
        if (u < 0 || v < 0) continue;
        g.ends.push_back({u, v});
        g.alpha.push_back(full.alpha[e]);
        g.lambda.push_back(full.lambda[e]);
    }
    return g;
}

namespace {

// Copy of an induced subtree into `out`; returns the id of its root in `out`.
int graft(DecTree& out, const InducedTree& sub) {
    std::vector<int> id(sub.tree.n);
    for (int v = 0; v < sub.tree.n; ++v) id[v] = out.add_node(sub.tree.leaf_part[v]);
    for (auto& e : sub.tree.ends) out.add_edge(id[e[0]], id[e[1]]);
    int r = sub.tree.root >= 0 ? sub.tree.root : 0;
    return id[r];
}

struct LocalScope {
    std::vector<std::array<std::vector<int>, 2>> P;
    SpanCache sc;
    ScopeFacts f;
};

LocalScope local_scope(const DecTree& t, const Arrangement& a, std::vector<int> x_parts) {
    std::sort(x_parts.begin(), x_parts.end());
    auto v0 = t.parts();
    if (x_parts.empty() || !subset_of(x_parts, v0)) throw ScopeMismatch();
    LocalScope ls{side_parts(t), SpanCache{a, make_space(a.field(), a.r()), {}}, {}};
    int bx = ls.sc.sp->intern(boundary_of(a, x_parts));
    ls.f = scope_facts(t, ls.P, ls.sc, x_parts, bx);
    return ls;
}

// minimal subtree on the side of `anchor_node` away from `cut_edge`, restricted
// to leaves with parts inside (or outside) x
InducedTree hanging(const DecTree& t, int cut_edge, int anchor_node, const std::vector<int>& xs, bool inside) {
    auto inc = t.incident();
    std::vector<char> allowed(t.n, 0);
    std::vector<int> st{anchor_node};
    allowed[anchor_node] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int e : inc[v]) {
            if (e == cut_edge) continue;
            int w = t.other(e, v);
            if (!allowed[w]) { allowed[w] = 1; st.push_back(w); }
        }
    }
    return minimal_subtree(
        t, [&](int p) { return std::binary_search(xs.begin(), xs.end(), p) == inside; }, &allowed, anchor_node);
}

} // namespace

DecTree fork(const DecTree& t, const Arrangement& a, int v, const std::vector<int>& x_parts) {
    if (t.root >= 0 && t.n > 1) throw PreconditionViolated("fork expects an unrooted tree");
    check_labels(t, a);
    auto ls = local_scope(t, a, x_parts);
    const auto& f = ls.f;
    auto inc = t.incident();
    if (v < 0 || v >= t.n || inc[v].size() != 3) throw PreconditionViolated("fork node must have degree 3");
    const BlockingPath* bp = nullptr;
    for (auto& p : f.paths)
        if (p.v == v && p.improper) bp = &p;
    if (!bp) throw PreconditionViolated("no improper blocking path centered at the node");
    auto edge_to = [&](int y) {
        for (int e : inc[v])
            if (t.other(e, v) == y) return e;
        return -1;
    };
    auto lam_x = [&](int e) {
        auto& sp = *ls.sc.sp;
        auto l0 = meet_sets(ls.P[e][0], f.vx), l1 = meet_sets(ls.P[e][1], f.vx);
        return sp.dim(sp.meet(ls.sc.span(l0), ls.sc.span(l1)));
    };
    int v1 = bp->u, v2 = bp->w;
    if (lam_x(edge_to(v1)) < lam_x(edge_to(v2))) std::swap(v1, v2);
    int e3 = -1;
    for (int e : inc[v])
        if (t.other(e, v) != v1 && t.other(e, v) != v2) e3 = e;
    int v3 = t.other(e3, v);
    auto sub_x = hanging(t, e3, v3, f.vx, true);
    auto sub_y = hanging(t, e3, v3, f.vx, false);
    // keep everything outside the v3 side
    std::vector<char> drop(t.n, 0);
    {
        std::vector<int> st{v3};
        drop[v3] = 1;
        while (!st.empty()) {
            int y = st.back();
            st.pop_back();
            for (int e : inc[y]) {
                if (e == e3) continue;
                int w = t.other(e, y);
                if (!drop[w]) { drop[w] = 1; st.push_back(w); }
            }
        }
    }
    DecTree out;
    std::vector<int> id(t.n, -1);
    for (int y = 0; y < t.n; ++y)
        if (!drop[y]) id[y] = out.add_node(t.leaf_part[y]);
    int e2 = edge_to(v2);
    for (int e = 0; e < t.edges(); ++e) {
        if (drop[t.ends[e][0]] || drop[t.ends[e][1]] || e == e2) continue;
        out.add_edge(id[t.ends[e][0]], id[t.ends[e][1]]);
    }
    int vp = out.add_node(-1);
    out.add_edge(id[v], vp);
    out.add_edge(vp, id[v2]);
    int rx = graft(out, sub_x), ry = graft(out, sub_y);
    out.add_edge(id[v], rx);
    out.add_edge(vp, ry);
    return out;
}

DecTree split(const DecTree& t, const Arrangement& a, std::array<int, 2> edge, const std::vector<int>& x_parts) {
    if (t.root >= 0 && t.n > 1) throw PreconditionViolated("split expects an unrooted tree");
    check_labels(t, a);
    auto ls = local_scope(t, a, x_parts);
    const auto& f = ls.f;
    int u = edge[0], v = edge[1];
    int e = -1;
    for (int g = 0; g < t.edges(); ++g)
        if ((t.ends[g][0] == u && t.ends[g][1] == v) || (t.ends[g][0] == v && t.ends[g][1] == u)) e = g;
    if (e < 0) throw PreconditionViolated("not an edge");
    int sv = t.ends[e][0] == v ? 0 : 1;
    if (!f.mixed[e][sv]) throw PreconditionViolated("(u,v) is not mixed");
    bool improper_deg = f.deg_edge[e] && f.cuts_vx[e];
    if (!f.improper_guard[e][sv] && !improper_deg)
        throw PreconditionViolated("edge neither guards v improperly nor is improper degenerate");
    auto sub_x = hanging(t, e, v, f.vx, true);
    auto sub_y = hanging(t, e, v, f.vx, false);
    auto inc = t.incident();
    std::vector<char> drop(t.n, 0);
    {
        std::vector<int> st;
        for (int g : inc[v])
            if (g != e) { int w = t.other(g, v); drop[w] = 1; st.push_back(w); }
        while (!st.empty()) {
            int y = st.back();
            st.pop_back();
            for (int g : inc[y]) {
                int w = t.other(g, y);
                if (w != v && !drop[w]) { drop[w] = 1; st.push_back(w); }
            }
        }
    }
    DecTree out;
    std::vector<int> id(t.n, -1);
    for (int y = 0; y < t.n; ++y)
        if (!drop[y]) id[y] = out.add_node(y == v ? -1 : t.leaf_part[y]);
    for (int g = 0; g < t.edges(); ++g)
        if (!drop[t.ends[g][0]] && !drop[t.ends[g][1]]) out.add_edge(id[t.ends[g][0]], id[t.ends[g][1]]);
    int rx = graft(out, sub_x), ry = graft(out, sub_y);
    out.add_edge(id[v], rx);
    out.add_edge(id[v], ry);
    return out;
}

std::string postorder_string(const DecTree& t) {
    if (t.root < 0) throw Unrooted();
    std::ostringstream os;
    bool first = true;
    for (int v : t.postorder()) {
        if (!first) os << ' ';
        first = false;
        if (t.leaf_part[v] >= 0) os << t.leaf_part[v] + 1;
        else os << '*';
    }
    return os.str();
}

} // namespace bw
