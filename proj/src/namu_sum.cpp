#include <functional>
#include <unordered_set>

#include "bw/namu.hpp"

namespace bw {

int sum_size(const Namu& a, const Namu& b) {
    if (a.n >= 2 && b.n >= 2) return a.n + b.n + 2;
    if (a.n == 1 && b.n == 1) return 2;
    return a.n + b.n + 1;
}

Namu sum_by_model(const Namu& a, const Namu& b, const HostMap& h) {
    if (a.space != b.space) throw AmbientMismatch();
    auto& sp = *a.space;
    const int m = static_cast<int>(h.ends.size());
    std::vector<std::vector<int>> inc(h.n);
    for (int e = 0; e < m; ++e) {
        inc[h.ends[e][0]].push_back(e);
        inc[h.ends[e][1]].push_back(e);
    }
    // contains[e][s][i]: side of ends[e][s] holds a branch node of model i
    std::vector<std::array<std::array<char, 2>, 2>> contains(m);
    for (int e = 0; e < m; ++e)
        for (int s = 0; s < 2; ++s) {
            std::array<char, 2> c{0, 0};
            std::vector<int> st{h.ends[e][s]};
            std::vector<char> seen(h.n, 0);
            seen[st[0]] = 1;
            while (!st.empty()) {
                int x = st.back();
                st.pop_back();
                for (int i = 0; i < 2; ++i)
                    if (h.branch[x][i] >= 0) c[i] = 1;
                for (int f : inc[x]) {
                    if (f == e) continue;
                    int y = h.ends[f][0] == x ? h.ends[f][1] : h.ends[f][0];
                    if (!seen[y]) { seen[y] = 1; st.push_back(y); }
                }
            }
            contains[e][s] = c;
        }
    const Namu* pat[2] = {&a, &b};
    auto malpha = [&](int i, int e, int s) {
        const EdgeImage& im = h.image[e][i];
        if (im.edge >= 0) return pat[i]->alpha[im.edge][s == 0 ? im.side : 1 - im.side];
        return contains[e][s][i] ? pat[i]->universe : sp.zero();
    };
    Namu g;
    g.space = a.space;
    g.universe = sp.sum(a.universe, b.universe);
    g.n = h.n;
    g.ends = h.ends;
    const int common = sp.dim(sp.meet(a.universe, b.universe));
    for (int e = 0; e < m; ++e) {
        std::array<int, 2> al{};
        int lam = common;
        for (int i = 0; i < 2; ++i)
            if (h.image[e][i].edge >= 0) lam += pat[i]->lambda[h.image[e][i].edge];
        for (int s = 0; s < 2; ++s) {
            int x = malpha(0, e, s), y = malpha(1, e, s);
            al[s] = sp.sum(x, y);
            lam -= sp.dim(sp.meet(x, y));
        }
        g.alpha.push_back(al);
        g.lambda.push_back(lam);
    }
    return g;
}

namespace {

struct Frontier {
    int f1, q1, f2, q2, host;
};

struct Enumerator {
    const Namu* pat[2];
    std::vector<std::vector<int>> inc[2];
    int lambda_cap;
    std::unordered_set<std::string> seen;
    std::vector<SumResult> out;

    int add_node(HostMap& h, int b0, int b1) {
        h.branch.push_back({b0, b1});
        return h.n++;
    }
    void add_edge(HostMap& h, int u, int v, EdgeImage i0, EdgeImage i1) {
        h.ends.push_back({u, v});
        h.image.push_back({i0, i1});
    }
    EdgeImage toward(int which, int f, int far) const {
        // pattern end on the near (host ends[0]) side is the one that is not `far`
        return EdgeImage{f, 1 - pat[which]->side_of(f, far)};
    }
    // hang a verbatim copy of pattern `which` behind edge f, entered from its end
    // other than `far`
    void copy_side(HostMap& h, int which, int host, int f, int far) {
        int w = add_node(h, which == 0 ? far : -1, which == 1 ? far : -1);
        EdgeImage none;
        if (which == 0) add_edge(h, host, w, toward(0, f, far), none);
        else add_edge(h, host, w, none, toward(1, f, far));
        for (int e : inc[which][far])
            if (e != f) copy_side(h, which, w, e, pat[which]->other(e, far));
    }

    void emit(const HostMap& h) {
        Namu g = sum_by_model(*pat[0], *pat[1], h);
        if (lambda_cap >= 0 && g.width() > lambda_cap) return;
        if (!seen.insert(canonical(g)).second) return;
        out.push_back({std::move(g), h});
    }

    void run(HostMap h, std::vector<Frontier> stack) {
        if (stack.empty()) {
            emit(h);
            return;
        }
        Frontier fr = stack.back();
        stack.pop_back();
        EdgeImage i1 = toward(0, fr.f1, fr.q1), i2 = toward(1, fr.f2, fr.q2);
        const auto& out1 = inc[0][fr.q1];
        const auto& out2 = inc[1][fr.q2];
        auto others = [](const std::vector<int>& l, int skip) {
            std::vector<int> r;
            for (int e : l)
                if (e != skip) r.push_back(e);
            return r;
        };
        auto o1 = others(out1, fr.f1), o2 = others(out2, fr.f2);
        { // the two models part ways inside both edges
            HostMap g = h;
            int w = add_node(g, -1, -1);
            add_edge(g, fr.host, w, i1, i2);
            copy_side(g, 0, w, fr.f1, fr.q1);
            copy_side(g, 1, w, fr.f2, fr.q2);
            run(std::move(g), stack);
        }
        // a node of the first pattern inside the second pattern's edge
        for (int choice = 0; choice < static_cast<int>(o1.size()); ++choice) {
            HostMap g = h;
            int w = add_node(g, fr.q1, -1);
            add_edge(g, fr.host, w, i1, i2);
            auto st = stack;
            int cont = o1[choice];
            if (o1.size() == 2) {
                int side = o1[1 - choice];
                copy_side(g, 0, w, side, pat[0]->other(side, fr.q1));
            }
            st.push_back({cont, pat[0]->other(cont, fr.q1), fr.f2, fr.q2, w});
            run(std::move(g), std::move(st));
        }
        for (int choice = 0; choice < static_cast<int>(o2.size()); ++choice) {
            HostMap g = h;
            int w = add_node(g, -1, fr.q2);
            add_edge(g, fr.host, w, i1, i2);
            auto st = stack;
            int cont = o2[choice];
            if (o2.size() == 2) {
                int side = o2[1 - choice];
                copy_side(g, 1, w, side, pat[1]->other(side, fr.q2));
            }
            st.push_back({fr.f1, fr.q1, cont, pat[1]->other(cont, fr.q2), w});
            run(std::move(g), std::move(st));
        }
        if (o1.size() == 2 && o2.size() == 2) {
            for (int flip = 0; flip < 2; ++flip) {
                HostMap g = h;
                int w = add_node(g, fr.q1, fr.q2);
                add_edge(g, fr.host, w, i1, i2);
                auto st = stack;
                for (int t = 0; t < 2; ++t) {
                    int e1 = o1[t], e2 = o2[flip ? 1 - t : t];
                    st.push_back({e1, pat[0]->other(e1, fr.q1), e2, pat[1]->other(e2, fr.q2), w});
                }
                run(std::move(g), std::move(st));
            }
        }
    }

    void overlapping() {
        for (int f = 0; f < pat[0]->edges(); ++f)
            for (int sf = 0; sf < 2; ++sf)
                for (int g = 0; g < pat[1]->edges(); ++g)
                    for (int sg = 0; sg < 2; ++sg) {
                        int p1 = pat[0]->ends[f][sf], q1 = pat[0]->ends[f][1 - sf];
                        int p2 = pat[1]->ends[g][sg], q2 = pat[1]->ends[g][1 - sg];
                        HostMap h;
                        int d = add_node(h, -1, -1);
                        copy_side(h, 0, d, f, p1);
                        copy_side(h, 1, d, g, p2);
                        run(std::move(h), {{f, q1, g, q2, d}});
                    }
    }

    // the model subtrees meet in no edge: one host edge joins them
    void disjoint() {
        const int n1 = pat[0]->n, n2 = pat[1]->n;
        std::vector<int> e1 = n1 == 1 ? std::vector<int>{-1} : std::vector<int>{};
        std::vector<int> e2 = n2 == 1 ? std::vector<int>{-1} : std::vector<int>{};
        for (int f = 0; f < pat[0]->edges(); ++f) e1.push_back(f);
        for (int g = 0; g < pat[1]->edges(); ++g) e2.push_back(g);
        for (int f : e1)
            for (int g : e2) {
                HostMap h;
                int hooks[2];
                int sel[2] = {f, g};
                for (int which = 0; which < 2; ++which) {
                    if (sel[which] < 0) {
                        hooks[which] = add_node(h, which == 0 ? 0 : -1, which == 1 ? 0 : -1);
                    } else {
                        int s = sel[which];
                        hooks[which] = add_node(h, -1, -1);
                        copy_side(h, which, hooks[which], s, pat[which]->ends[s][0]);
                        copy_side(h, which, hooks[which], s, pat[which]->ends[s][1]);
                    }
                }
                add_edge(h, hooks[0], hooks[1], EdgeImage{}, EdgeImage{});
                emit(h);
            }
    }
};

} // namespace

std::vector<SumResult> enumerate_sums(const Namu& a, const Namu& b, int cap, int lambda_cap) {
    if (a.space != b.space) throw AmbientMismatch();
    int size = sum_size(a, b);
    if (size > cap)
        throw ResourceExceeded("sum host tree needs " + std::to_string(size) + " nodes, cap is " + std::to_string(cap));
    Enumerator en;
    en.pat[0] = &a;
    en.pat[1] = &b;
    en.inc[0] = a.incident();
    en.inc[1] = b.incident();
    en.lambda_cap = lambda_cap;
    en.disjoint();
    if (a.n >= 2 && b.n >= 2) en.overlapping();
    return std::move(en.out);
}

} // namespace bw
