#include "bw/fullset.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace bw {

const char* stage_name(StageKind k) {
    switch (k) {
    case StageKind::Leaf: return "leaf";
    case StageKind::Join: return "join";
    case StageKind::Shrink: return "shrink";
    case StageKind::Trim: return "trim";
    case StageKind::Compare: return "compare";
    }
    return "?";
}

CompositionTree composition_tree(const DecTree& base) {
    CompositionTree c;
    c.compare_of.assign(base.n, -1);
    auto par = base.parents();
    for (int x : base.postorder()) {
        auto kids = base.children(x);
        if (kids.empty()) {
            c.compare_of[x] = static_cast<int>(c.nodes.size());
            c.nodes.push_back({StageKind::Leaf, x, -1, {}});
            continue;
        }
        int prev = -1;
        for (StageKind k : {StageKind::Join, StageKind::Shrink, StageKind::Trim, StageKind::Compare}) {
            int id = static_cast<int>(c.nodes.size());
            CompositionTree::Node nd{k, x, -1, {}};
            if (k == StageKind::Join) {
                for (int w : kids) {
                    nd.children.push_back(c.compare_of[w]);
                    c.nodes[c.compare_of[w]].parent = id;
                }
            } else {
                nd.children.push_back(prev);
                c.nodes[prev].parent = id;
            }
            c.nodes.push_back(nd);
            prev = id;
        }
        c.compare_of[x] = prev;
    }
    c.root = c.compare_of[base.root];
    return c;
}

namespace {

// inserts into a ⊴-antichain of minimal elements; false when dominated
bool antichain_insert(std::vector<Entry>& t, std::vector<std::string>& keys, Entry&& e) {
    std::string key = canonical(e.namu);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (keys[i] == key || tle(t[i].namu, e.namu)) return false;
    std::size_t w = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (tle(e.namu, t[i].namu)) continue;
        if (w != i) {
            t[w] = std::move(t[i]);
            keys[w] = std::move(keys[i]);
        }
        ++w;
    }
    t.resize(w);
    keys.resize(w);
    t.push_back(std::move(e));
    keys.push_back(std::move(key));
    return true;
}

} // namespace

FullSetTable run_fullset_dp(const Arrangement& a, int k, const DecTree& base, const Transcript& tr,
                            const DpOptions& opt) {
    FullSetTable fs;
    fs.table.resize(base.n);
    fs.space.resize(base.n);
    fs.counts.resize(base.n);
    fs.comp = composition_tree(base);
    fs.root = base.root;
    const FieldSpec f = a.field();
    auto emit = [&](const std::string& s) {
        if (opt.trace) opt.trace(s);
    };
    for (int x : base.postorder()) {
        const int d = tr.basis[x].cols();
        fs.space[x] = make_space(f, d);
        auto kids = base.children(x);
        auto& cnt = fs.counts[x];
        if (kids.empty()) {
            Entry e;
            e.namu = Namu::single(fs.space[x], fs.space[x]->full());
            e.leaf_part = base.leaf_part[x];
            fs.table[x].push_back(std::move(e));
            cnt.stored = 1;
            cnt.max_nodes = 1;
            std::ostringstream os;
            os << "node " << x << " leaf part=" << base.leaf_part[x] + 1 << " dim=" << d << " stored=1";
            emit(os.str());
            continue;
        }
        if (kids.size() != 2) throw EvidenceCorrupt("base node with one child");
        const int dext = tr.extended[x].cols();
        auto ext = make_space(f, dext);
        Mat sel(dext, d, f);
        for (int i = 0; i < d; ++i) sel.at(i, i) = 1;
        const int boundary = ext->intern(Subspace::span(sel));
        Mat shrink(d, dext, f);
        for (int i = 0; i < d; ++i) shrink.at(i, i) = 1;
        std::vector<Namu> lifted[2];
        for (int i = 0; i < 2; ++i)
            for (auto& e : fs.table[kids[i]]) lifted[i].push_back(map_namu(e.namu, tr.transition[kids[i]], ext));
        std::unordered_set<std::string> seen;
        std::vector<std::string> keys;
        auto& out = fs.table[x];
        for (std::size_t i1 = 0; i1 < lifted[0].size(); ++i1)
            for (std::size_t i2 = 0; i2 < lifted[1].size(); ++i2) {
                std::vector<SumResult> sums;
                try {
                    sums = enumerate_sums(lifted[0][i1], lifted[1][i2], opt.cap, k);
                } catch (const ResourceExceeded& ex) {
                    throw ResourceExceeded(std::string(ex.what()) + " at base node " + std::to_string(x));
                }
                for (auto& s : sums) {
                    ++cnt.sums;
                    Namu pre = map_namu(project(s.namu, boundary), shrink, fs.space[x]);
                    if (!seen.insert(canonical(pre)).second) continue;
                    ++cnt.shrunk;
                    TrimResult tres = trim_with_map(pre);
                    auto anchor = ksafe_anchor(pre, tres, k);
                    if (!anchor) continue;
                    ++cnt.trimmed;
                    Namu tau = compress_fixpoint(tres.namu);
                    auto cert = tle_certificate(tres.namu, tau);
                    if (!cert) throw EvidenceCorrupt("trim does not compare below its compactification");
                    Entry e;
                    e.namu = std::move(tau);
                    e.left = static_cast<int>(i1);
                    e.right = static_cast<int>(i2);
                    e.pair = std::move(s.model);
                    e.pre_trim = std::move(pre);
                    e.trimmed = std::move(tres);
                    e.anchor = *anchor;
                    e.align = std::move(*cert);
                    antichain_insert(out, keys, std::move(e));
                }
            }
        cnt.stored = static_cast<long>(out.size());
        for (auto& e : out) cnt.max_nodes = std::max<long>(cnt.max_nodes, e.namu.n);
        std::ostringstream os;
        os << "node " << x << " dim=" << d << " ext=" << dext;
        emit(os.str() + " join sums=" + std::to_string(cnt.sums));
        emit(os.str() + " shrink distinct=" + std::to_string(cnt.shrunk));
        emit(os.str() + " trim ksafe=" + std::to_string(cnt.trimmed));
        emit(os.str() + " compare stored=" + std::to_string(cnt.stored) + " max_nodes=" + std::to_string(cnt.max_nodes));
    }
    return fs;
}

namespace {

struct Forest {
    struct Node {
        int leaf = -1, a = -1, b = -1;
    };
    std::vector<Node> v;
    int leaf(int p) {
        v.push_back({p, -1, -1});
        return static_cast<int>(v.size()) - 1;
    }
    int node(int a, int b) {
        v.push_back({-1, a, b});
        return static_cast<int>(v.size()) - 1;
    }
};

// Hidden subtrees attached to the nodes and along the edges of a namu tree.
struct Labeling {
    std::vector<int> label;
    std::vector<std::vector<int>> kids;
    std::vector<std::array<std::vector<int>, 2>> seq;
    void resize(int n, int m) {
        label.assign(n, -1);
        kids.assign(n, {});
        seq.assign(m, {});
    }
};

int degree(const Namu& g, int v) {
    int d = 0;
    for (auto& e : g.ends) d += (e[0] == v) + (e[1] == v);
    return d;
}

struct Replay {
    const FullSetTable& fs;
    const DecTree& base;
    Forest forest;

    Labeling witness(int x, int idx) {
        const Entry& en = fs.table.at(x).at(idx);
        Labeling z;
        if (en.leaf_part >= 0) {
            z.resize(1, 0);
            z.label[0] = en.leaf_part;
            return z;
        }
        auto kids = base.children(x);
        Labeling z1 = witness(kids[0], en.left);
        Labeling z2 = witness(kids[1], en.right);
        const Namu& g1 = fs.table[kids[0]][en.left].namu;
        const Namu& g2 = fs.table[kids[1]][en.right].namu;
        Labeling zj = join(en.pair, g1, g2, z1, z2);
        Labeling zt = trim(en.pre_trim, en.trimmed, en.anchor, zj);
        return compare(en.align, en.trimmed.namu, en.namu, zt);
    }

    Labeling join(const HostMap& h, const Namu& g1, const Namu& g2, const Labeling& z1, const Labeling& z2) {
        Labeling z;
        z.resize(h.n, static_cast<int>(h.ends.size()));
        const Namu* g[2] = {&g1, &g2};
        const Labeling* zs[2] = {&z1, &z2};
        std::vector<int> deg(h.n, 0);
        for (auto& e : h.ends) { ++deg[e[0]]; ++deg[e[1]]; }
        for (int v = 0; v < h.n; ++v)
            for (int i = 0; i < 2; ++i) {
                int p = h.branch[v][i];
                if (p < 0 || degree(*g[i], p) > 2) continue;
                if (deg[v] > 2 && !zs[i]->kids[p].empty()) throw EvidenceCorrupt("hidden subtree on a full node");
                if (zs[i]->label[p] >= 0) z.label[v] = zs[i]->label[p];
                auto& kk = zs[i]->kids[p];
                z.kids[v].insert(z.kids[v].end(), kk.begin(), kk.end());
            }
        for (int e = 0; e < static_cast<int>(h.ends.size()); ++e)
            for (int s = 0; s < 2; ++s) {
                int v = h.ends[e][s];
                for (int i = 0; i < 2; ++i) {
                    int p = h.branch[v][i], f = h.image[e][i].edge;
                    if (p < 0 || f < 0) continue;
                    const auto& pe = g[i]->ends[f];
                    if (pe[0] != p && pe[1] != p) throw EvidenceCorrupt("model edge misses its branch node");
                    const auto& sq = zs[i]->seq[f][pe[0] == p ? 0 : 1];
                    z.seq[e][s].insert(z.seq[e][s].end(), sq.begin(), sq.end());
                }
            }
        return z;
    }

    int fold_chain(const std::vector<int>& list, int tail) {
        for (int i = static_cast<int>(list.size()) - 1; i >= 0; --i) tail = forest.node(list[i], tail);
        return tail;
    }

    // everything beyond v through edge e, as one hanging subtree
    int build(const Namu& g, const std::vector<std::vector<int>>& inc, const Labeling& z, int v, int e) {
        int w = g.other(e, v);
        std::vector<int> list = z.seq[e][g.side_of(e, v)];
        const auto& back = z.seq[e][g.side_of(e, w)];
        list.insert(list.end(), back.rbegin(), back.rend());
        return fold_chain(list, rest(g, inc, z, w, e));
    }

    int rest(const Namu& g, const std::vector<std::vector<int>>& inc, const Labeling& z, int w, int skip) {
        std::vector<int> parts;
        if (inc[w].size() <= 2) parts = z.kids[w];
        for (int f : inc[w])
            if (f != skip) parts.push_back(build(g, inc, z, w, f));
        if (z.label[w] >= 0) {
            if (!parts.empty()) throw EvidenceCorrupt("labeled node with hidden subtrees");
            return forest.leaf(z.label[w]);
        }
        if (parts.size() == 1) return parts[0];
        if (parts.size() == 2) return forest.node(parts[0], parts[1]);
        throw EvidenceCorrupt("removed region does not close into a binary tree");
    }

    void normalize(int& label, std::vector<int>& kids, int deg) {
        const int need = 3 - std::max(deg, 1);
        if (kids.empty() || static_cast<int>(kids.size()) == need) {
            if (label >= 0 && !kids.empty()) throw EvidenceCorrupt("labeled node with hidden subtrees");
            return;
        }
        if (kids.size() == 1 && need == 2 && label < 0) {
            const auto nd = forest.v[kids[0]];
            if (nd.leaf >= 0) {
                label = nd.leaf;
                kids.clear();
            } else {
                kids = {nd.a, nd.b};
            }
            return;
        }
        throw EvidenceCorrupt("hidden subtree count does not fit the node degree");
    }

    Labeling trim(const Namu& g, const TrimResult& t, const KsafeAnchor& anchor, const Labeling& z) {
        auto inc = g.incident();
        const Namu& tn = t.namu;
        Labeling out;
        out.resize(tn.n, tn.edges());
        if (t.degenerate_edge >= 0) {
            int e = anchor.edge;
            if (e < 0) throw EvidenceCorrupt("degenerate trim without anchor");
            int u = anchor.node, v = g.other(e, u);
            std::vector<int> la(z.seq[e][g.side_of(e, u)].rbegin(), z.seq[e][g.side_of(e, u)].rend());
            std::vector<int> lb(z.seq[e][g.side_of(e, v)].rbegin(), z.seq[e][g.side_of(e, v)].rend());
            int sa = fold_chain(la, rest(g, inc, z, u, e));
            int sb = fold_chain(lb, rest(g, inc, z, v, e));
            out.kids[0] = {sa, sb};
            return out;
        }
        for (int e = 0; e < g.edges(); ++e)
            if (t.edge_map[e] >= 0) out.seq[t.edge_map[e]] = z.seq[e];
        auto tinc = tn.incident();
        for (int v = 0; v < g.n; ++v) {
            int nv = t.node_map[v];
            if (nv < 0) continue;
            std::vector<int> kids;
            if (inc[v].size() <= 2) kids = z.kids[v];
            for (int e : inc[v])
                if (t.edge_map[e] < 0) kids.push_back(build(g, inc, z, v, e));
            int label = z.label[v];
            normalize(label, kids, static_cast<int>(tinc[nv].size()));
            out.label[nv] = label;
            out.kids[nv] = std::move(kids);
        }
        return out;
    }

    Labeling compare(const HostMap& h, const Namu& from, const Namu& to, const Labeling& z) {
        Labeling out;
        out.resize(to.n, to.edges());
        auto finc = from.incident();
        std::vector<int> host_of(to.n, -1);
        for (int hv = 0; hv < h.n; ++hv) {
            int c = h.branch[hv][1];
            if (c < 0) continue;
            host_of[c] = hv;
            int p = h.branch[hv][0];
            if (p >= 0 && finc[p].size() <= 2) {
                out.label[c] = z.label[p];
                out.kids[c] = z.kids[p];
            }
        }
        std::vector<std::vector<int>> hinc(h.n);
        for (int e = 0; e < static_cast<int>(h.ends.size()); ++e) {
            hinc[h.ends[e][0]].push_back(e);
            hinc[h.ends[e][1]].push_back(e);
        }
        auto star = [&](int hv, int e) -> std::vector<int> {
            int p = h.branch[hv][0], f = h.image[e][0].edge;
            if (p < 0 || f < 0) return {};
            const auto& fe = from.ends[f];
            if (fe[0] != p && fe[1] != p) throw EvidenceCorrupt("alignment edge misses its branch node");
            return z.seq[f][fe[0] == p ? 0 : 1];
        };
        for (int g = 0; g < to.edges(); ++g) {
            int cur = host_of[to.ends[g][0]], target = host_of[to.ends[g][1]];
            int prev_edge = -1;
            auto& sq = out.seq[g][0];
            while (cur != target) {
                int step = -1;
                for (int e : hinc[cur])
                    if (e != prev_edge && h.image[e][1].edge == g) step = e;
                if (step < 0) throw EvidenceCorrupt("alignment path broken");
                int nxt = h.ends[step][0] == cur ? h.ends[step][1] : h.ends[step][0];
                auto a = star(cur, step);
                auto b = star(nxt, step);
                sq.insert(sq.end(), a.begin(), a.end());
                sq.insert(sq.end(), b.rbegin(), b.rend());
                if (nxt != target) {
                    int p = h.branch[nxt][0];
                    if (p >= 0) sq.insert(sq.end(), z.kids[p].begin(), z.kids[p].end());
                }
                prev_edge = step;
                cur = nxt;
            }
        }
        return out;
    }

    DecTree materialize(const Namu& g, const Labeling& z) {
        DecTree t;
        for (int v = 0; v < g.n; ++v) t.add_node(z.label[v]);
        std::function<int(int)> attach = [&](int s) {
            const auto nd = forest.v[s];
            if (nd.leaf >= 0) return t.add_node(nd.leaf);
            int me = t.add_node(-1);
            int a = attach(nd.a), b = attach(nd.b);
            t.add_edge(me, a);
            t.add_edge(me, b);
            return me;
        };
        for (int v = 0; v < g.n; ++v)
            for (int s : z.kids[v]) t.add_edge(v, attach(s));
        for (int e = 0; e < g.edges(); ++e) {
            int prev = g.ends[e][0];
            for (int s : z.seq[e][0]) {
                int mid = t.add_node(-1);
                t.add_edge(prev, mid);
                t.add_edge(mid, attach(s));
                prev = mid;
            }
            const auto& back = z.seq[e][1];
            for (auto it = back.rbegin(); it != back.rend(); ++it) {
                int mid = t.add_node(-1);
                t.add_edge(prev, mid);
                t.add_edge(mid, attach(*it));
                prev = mid;
            }
            t.add_edge(prev, g.ends[e][1]);
        }
        int keep = g.n == 1 ? 0 : -1;
        // smooth degree-2 nodes other than the root
        while (true) {
            auto inc = t.incident();
            int victim = -1;
            for (int v = 0; v < t.n; ++v)
                if (v != keep && inc[v].size() == 2 && t.leaf_part[v] < 0) { victim = v; break; }
            if (victim < 0) break;
            int a = t.other(inc[victim][0], victim), b = t.other(inc[victim][1], victim);
            DecTree s;
            std::vector<int> id(t.n, -1);
            for (int v = 0; v < t.n; ++v)
                if (v != victim) id[v] = s.add_node(t.leaf_part[v]);
            for (int e = 0; e < t.edges(); ++e)
                if (t.ends[e][0] != victim && t.ends[e][1] != victim) s.add_edge(id[t.ends[e][0]], id[t.ends[e][1]]);
            s.add_edge(id[a], id[b]);
            if (keep >= 0) keep = id[keep];
            t = std::move(s);
        }
        if (keep >= 0) t.root = keep;
        return t;
    }
};

} // namespace

DecTree witness_decomposition(const FullSetTable& table, const DecTree& base, int x, int idx) {
    Replay r{table, base, {}};
    Labeling z = r.witness(x, idx);
    DecTree t = r.materialize(table.table[x][idx].namu, z);
    if (!t.valid()) throw EvidenceCorrupt("replayed tree is not a decomposition");
    return t;
}

DecTree backtrack_decomposition(const FullSetTable& table, const DecTree& base, int root_choice) {
    if (table.table[table.root].empty()) throw EvidenceCorrupt("root table is empty");
    return witness_decomposition(table, base, table.root, root_choice);
}

CompressionResult iterative_compression(const Arrangement& a, int k, const DpOptions& opt) {
    CompressionResult res;
    const int n = a.n();
    if (n == 0) throw std::invalid_argument("arrangement has no parts");
    if (n == 1) {
        res.tree = DecTree::leaf(0);
        res.tree.root = -1;
        return res;
    }
    DecTree cur = DecTree::pair(0, 1);
    {
        std::vector<int> ids{0, 1};
        auto sub = a.restrict_to(ids);
        if (width(cur, sub).max > k) {
            res.above_k = true;
            res.failed_at = 2;
            return res;
        }
    }
    for (int i = 3; i <= n; ++i) {
        std::vector<int> ids(i);
        for (int j = 0; j < i; ++j) ids[j] = j;
        auto sub = a.restrict_to(ids);
        DecTree grown = cur.with_leaf_on_edge(0, i - 1);
        DecTree rooted = grown.rooted_at_first_edge();
        auto bases = boundary_bases(rooted, sub, 2 * k);
        auto tr = build_transcript(rooted, sub, bases);
        if (opt.trace) opt.trace("step parts=" + std::to_string(i) + " order=" + std::to_string(tr.order));
        auto fs = run_fullset_dp(sub, k, rooted, tr, opt);
        if (!fs.accepted()) {
            res.above_k = true;
            res.failed_at = i;
            return res;
        }
        DecTree found = backtrack_decomposition(fs, rooted).unrooted();
        if (width(found, sub).max > k) throw EvidenceCorrupt("replayed decomposition exceeds the width bound");
        cur = std::move(found);
    }
    res.tree = cur;
    return res;
}

} // namespace bw
