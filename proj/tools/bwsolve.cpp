// Command-line front end: solve, brute-force, or verify branch-decompositions.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bw/apps.hpp"
#include "bw/oracle.hpp"

namespace {

enum Exit { kFound = 0, kAboveK = 10, kRejected = 11, kResource = 12, kInput = 2, kInternal = 1 };

struct Common {
    std::optional<int> k;
    std::string input, output, format = "postorder", as = "carving", tree;
    bool trace = false;
    int cap = 64;
};

void add_common(CLI::App* sub, Common& c, bool k_required) {
    auto* opt = sub->add_option("--k", c.k, "width bound");
    if (k_required) opt->required();
    sub->add_option("--input", c.input, "input file")->required();
    sub->add_option("--output", c.output, "output file (default stdout)");
    sub->add_option("--format", c.format, "postorder|edges|json")->check(CLI::IsMember({"postorder", "edges", "json"}));
    sub->add_flag("--trace", c.trace, "per-node table statistics on stderr");
    sub->add_option("--cap", c.cap, "largest host tree considered in a sum");
}

std::string header_of(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bw::InputError("cannot open " + path);
    std::string w;
    in >> w;
    return w;
}

template <class F>
auto with_file(const std::string& path, F&& f) {
    std::ifstream in(path);
    if (!in) throw bw::InputError("cannot open " + path);
    return f(in);
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw bw::InputError("cannot write " + c.output);
    out << text;
}

// Loads any input as an arrangement; graph files are read per `as`.
// Returns the factor dividing arrangement widths (2 for rank-width).
int load_any(const Common& c, bw::Arrangement& a) {
    std::string h = header_of(c.input);
    if (h == "arrangement") {
        auto f = with_file(c.input, bw::parse_arrangement);
        a = bw::Arrangement(f.mat, f.sizes);
        return 1;
    }
    if (h == "hypergraph") {
        a = bw::hyperedge_arrangement(with_file(c.input, bw::parse_hypergraph));
        return 1;
    }
    if (h == "graph") {
        auto g = with_file(c.input, bw::parse_graph);
        if (c.as == "rankwidth") {
            a = bw::rankwidth_arrangement(g);
            return 2;
        }
        if (c.as != "carving") throw bw::InputError("--as must be rankwidth or carving");
        a = bw::carving_arrangement(g, static_cast<int>(2 * g.edges.size()));
        return 1;
    }
    throw bw::InputError("unknown header '" + h + "'");
}

int report(const Common& c, const bw::SolveResult& r, int factor, const bw::Arrangement& a) {
    if (r.outcome == bw::Outcome::Rejected) {
        std::cerr << r.reason << '\n';
        return kRejected;
    }
    if (r.outcome == bw::Outcome::AboveK) {
        std::cerr << "width exceeds k=" << *c.k << ": " << r.reason << '\n';
        return kAboveK;
    }
    int w = r.tree.n > 1 ? bw::width(r.tree, a).max / factor : 0;
    emit(c, bw::format_tree(r.tree, bw::parse_format(c.format), w));
    std::cerr << "width " << w << '\n';
    return kFound;
}

int run_solver(const std::string& name, const Common& c) {
    bw::DpOptions opt;
    opt.cap = c.cap;
    if (c.trace) opt.trace = [](const std::string& s) { std::cerr << "trace: " << s << '\n'; };
    const int k = *c.k;
    if (k < 0) throw bw::InputError("k must be nonnegative");
    if (name == "matroid") {
        auto f = with_file(c.input, bw::parse_arrangement);
        bw::Arrangement a(f.mat, f.sizes);
        return report(c, bw::solve_arrangement(f.mat, f.sizes, k, opt), 1, a);
    }
    if (name == "rankwidth") {
        auto g = with_file(c.input, bw::parse_graph);
        return report(c, bw::solve_rankwidth(g, k, opt), 2, bw::rankwidth_arrangement(g));
    }
    if (name == "carving") {
        auto g = with_file(c.input, bw::parse_graph);
        auto r = bw::solve_carving(g, k, opt);
        bw::Arrangement a;
        if (r.outcome == bw::Outcome::Found) a = bw::carving_arrangement(g, static_cast<int>(2 * g.edges.size()));
        return report(c, r, 1, a);
    }
    auto h = with_file(c.input, bw::parse_hypergraph);
    auto r = bw::solve_hypergraph(h, k, opt);
    bw::Arrangement a;
    if (r.outcome == bw::Outcome::Found) a = bw::hyperedge_arrangement(h);
    return report(c, r, 1, a);
}

int run_oracle(const Common& c) {
    bw::Arrangement a;
    int factor = load_any(c, a);
    auto b = bw::brute_branchwidth(a);
    int w = b.width / factor;
    emit(c, bw::format_tree(b.witness, bw::parse_format(c.format), w));
    std::cerr << "width " << w << " over " << b.trees << " trees\n";
    return c.k && w > *c.k ? kAboveK : kFound;
}

int run_verify(const Common& c) {
    bw::Arrangement a;
    int factor = load_any(c, a);
    auto t = with_file(c.tree, bw::parse_tree);
    if (t.parts().size() != static_cast<std::size_t>(a.n())) throw bw::InputError("tree leaves do not match the input");
    int w = t.n > 1 ? bw::width(t, a).max / factor : 0;
    std::ostringstream os;
    os << "width " << w << '\n';
    emit(c, os.str());
    return c.k && w > *c.k ? kAboveK : kFound;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branch-width of subspace arrangements over prime fields"};
    app.require_subcommand(1);
    Common c;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const char* name : {"matroid", "rankwidth", "carving", "hyperbw"}) {
        auto* s = app.add_subcommand(name, std::string("decide width <= k (") + name + ")");
        add_common(s, c, true);
        subs.emplace_back(name, s);
    }
    auto* oracle = app.add_subcommand("oracle", "exhaustive branch-width of a small input");
    add_common(oracle, c, false);
    oracle->add_option("--as", c.as, "graph files: rankwidth|carving");
    auto* verify = app.add_subcommand("verify", "recompute the width of a decomposition");
    add_common(verify, c, false);
    verify->add_option("--tree", c.tree, "decomposition in edges format")->required();
    verify->add_option("--as", c.as, "graph files: rankwidth|carving");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInput;
    }
    try {
        if (oracle->parsed()) return run_oracle(c);
        if (verify->parsed()) return run_verify(c);
        for (auto& [name, s] : subs)
            if (s->parsed()) return run_solver(name, c);
    } catch (const bw::InputError& e) {
        std::cerr << e.what() << '\n';
        return kInput;
    } catch (const bw::TooLarge& e) {
        std::cerr << e.what() << '\n';
        return kResource;
    } catch (const bw::ResourceExceeded& e) {
        std::cerr << e.what() << '\n';
        return kResource;
    } catch (const bw::NotPrime& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInput;
}
