#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tokspec/bounds.hpp"
#include "tokspec/graph.hpp"
#include "tokspec/report.hpp"
#include "tokspec/spectra.hpp"
#include "tokspec/token.hpp"

using namespace tokspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitRefused = 2;

// Configuration or size problems the run refuses to start with.
struct Refusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string family;
    std::string edge_list;
    std::string k;
    std::optional<std::size_t> cap;
    std::string out;
};

struct KRange {
    int lo = 1;
    int hi = 1;
};

KRange parse_k(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw Refusal("--k expects K or A..B, got '" + text + "'");
        return v;
    };
    KRange r;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        r.lo = parse_int(text.substr(0, dots));
        r.hi = parse_int(text.substr(dots + 2));
    } else {
        r.lo = r.hi = parse_int(text);
    }
    if (r.lo > r.hi) throw Refusal("--k range " + text + " is empty");
    return r;
}

std::size_t vertex_cap(const Input& in) {
    if (in.cap) return *in.cap;
    if (const char* env = std::getenv("TOKEN_SPECTRA_CAP")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw Refusal(std::string("TOKEN_SPECTRA_CAP='") + env + "' is not a vertex count");
    }
    return kDefaultVertexCap;
}

// (id, graph) from --family or --edge-list.
std::pair<std::string, Graph> load_graph(const Input& in) {
    if (in.family.empty() == in.edge_list.empty()) throw Refusal("give exactly one of --family or --edge-list");
    try {
        if (!in.family.empty()) return {in.family, parse_family(in.family)};
        return {in.edge_list, read_edge_list_file(in.edge_list)};
    } catch (const GraphError& e) {
        throw Refusal(e.what());
    }
}

void check_size(const Graph& g, int k, std::size_t cap, std::size_t dense_cap, bool dense) {
    const int n = g.order();
    if (k < 1 || k > n) throw Refusal("k=" + std::to_string(k) + " outside 1..n (n=" + std::to_string(n) + ")");
    const std::uint64_t count = binomial(n, k);
    const std::string name = "C(" + std::to_string(n) + "," + std::to_string(k) + ")=" + std::to_string(count);
    if (count > cap) throw Refusal("F_" + std::to_string(k) + " has " + name + " vertices, above the vertex cap " + std::to_string(cap));
    if (dense && count > dense_cap)
        throw Refusal("F_" + std::to_string(k) + " has " + name + " vertices, above the dense eigensolver cap " +
                      std::to_string(dense_cap));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Refusal("cannot write " + path);
    f << text;
}

std::string format_value(double x) {
    if (std::abs(x) < 1e-12) x = 0.0;
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

void add_input_options(CLI::App* cmd, Input& in) {
    cmd->add_option("--family", in.family, "graph family spec, e.g. cycle:7 or hamming:2,3");
    cmd->add_option("--edge-list", in.edge_list, "edge list file: 'n m' header then m pairs");
    cmd->add_option("--cap", in.cap, "token-graph vertex cap (default 20000 or TOKEN_SPECTRA_CAP)");
    cmd->add_option("--out", in.out, "output path (default stdout)");
}

int run_build(const Input& in, const std::string& map_path) {
    auto [id, g] = load_graph(in);
    if (in.k.empty()) throw Refusal("build needs --k");
    const KRange k = parse_k(in.k);
    if (k.lo != k.hi) throw Refusal("build takes a single k");
    check_size(g, k.lo, vertex_cap(in), 0, false);
    const TokenGraph t = token_graph(g, k.lo, vertex_cap(in));

    std::ostringstream edges;
    write_edge_list(edges, t.graph);
    emit(in.out, edges.str());

    std::string map_file = map_path;
    if (map_file.empty() && !in.out.empty() && in.out != "-") map_file = in.out + ".map";
    if (!map_file.empty()) {
        std::ostringstream map;
        map << "# vertex rank subset\n";
        for (std::size_t r = 0; r < t.index.count(); ++r) {
            map << r + 1 << ' ' << r << " {";
            const auto s = t.index.unrank(r);
            for (std::size_t i = 0; i < s.size(); ++i) map << (i ? "," : "") << s[i];
            map << "}\n";
        }
        emit(map_file, map.str());
    }
    return kExitOk;
}

int run_spectrum(const Input& in, bool extremal, std::size_t dense_cap, const std::string& vectors_path) {
    auto [id, g] = load_graph(in);
    if (in.k.empty()) throw Refusal("spectrum needs --k");
    const KRange k = parse_k(in.k);
    if (k.lo != k.hi) throw Refusal("spectrum takes a single k");
    check_size(g, k.lo, vertex_cap(in), dense_cap, !extremal);
    const TokenGraph t = token_graph(g, k.lo, vertex_cap(in));

    std::ostringstream os;
    if (extremal) {
        const std::size_t order = t.graph.order();
        if (order < 2) throw Refusal("extremal eigenvalues need at least two token vertices");
        const auto e = extremal_eigenvalues(t.graph);
        os << 1 << ',' << format_value(e.algebraic_connectivity) << '\n';
        os << order - 1 << ',' << format_value(e.largest) << '\n';
        emit(in.out, os.str());
        return kExitOk;
    }
    const Spectrum s = laplacian_spectrum(t.graph, dense_cap);
    for (std::size_t j = 0; j < s.size(); ++j) os << j << ',' << format_value(s.value(j)) << '\n';
    emit(in.out, os.str());

    if (!vectors_path.empty()) {
        std::ostringstream vs;
        vs << std::setprecision(17);
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) vs << (j ? "," : "") << s.vector(j)[i];
            vs << '\n';
        }
        emit(vectors_path, vs.str());
    }
    return kExitOk;
}

int run_verify(const Input& in, bool fixtures, const std::string& format, const VerifyOptions& options) {
    std::vector<Fixture> graphs;
    if (fixtures) {
        if (!in.family.empty() || !in.edge_list.empty()) throw Refusal("--fixtures replaces --family/--edge-list");
        graphs = fixture_set();
    } else {
        auto [id, g] = load_graph(in);
        graphs.push_back({id, std::move(g)});
    }
    const bool explicit_k = !in.k.empty();
    const KRange given = explicit_k ? parse_k(in.k) : KRange{};
    const std::size_t cap = vertex_cap(in);

    std::vector<KRange> ranges;
    for (const auto& f : graphs) {
        const int n = f.graph.order();
        const KRange k = explicit_k ? given : KRange{1, std::max(1, n / 2)};
        // Every level up to k is decomposed, so the largest C(n,h) must fit.
        for (int h = 1; h <= k.hi; ++h) check_size(f.graph, h, cap, options.limits.dense_cap, true);
        if (k.lo < 1) throw Refusal("k=" + std::to_string(k.lo) + " outside 1..n");
        ranges.push_back(k);
    }

    VerifyOptions opts = options;
    opts.limits.vertex_cap = cap;
    Report report;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        verify_graph(graphs[i].id, graphs[i].graph, ranges[i].lo, ranges[i].hi, opts, report);

    if (format == "csv")
        emit(in.out, to_csv(report));
    else if (format == "text")
        emit(in.out, to_text(report));
    else
        emit(in.out, to_json(report));
    return report.has_failure() ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Token graphs, their Laplacian spectra, and eigenvalue bound checks"};
    app.require_subcommand(1);

    Input in;
    std::string map_path;
    auto* build = app.add_subcommand("build", "write the token graph F_k(G) as an edge list with a rank map");
    add_input_options(build, in);
    build->add_option("--k", in.k, "number of tokens")->required();
    build->add_option("--map", map_path, "rank map path (default <out>.map)");

    bool extremal = false;
    std::size_t dense_cap = kDefaultDenseCap;
    std::string vectors_path;
    auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum of F_k(G) as index,eigenvalue lines");
    add_input_options(spectrum, in);
    spectrum->add_option("--k", in.k, "number of tokens")->required();
    spectrum->add_flag("--extremal", extremal, "only lambda_2 and lambda_N, by iteration; no dense cap");
    spectrum->add_option("--dense-cap", dense_cap, "largest order decomposed densely")->capture_default_str();
    spectrum->add_option("--vectors", vectors_path, "also write eigenvectors as a dense CSV matrix (column j = eigenvalue j)");

    bool fixtures = false;
    std::string format = "json";
    VerifyOptions options;
    auto* verify = app.add_subcommand("verify", "run every check on F_k(G) and report pass / vacuous / FAIL");
    add_input_options(verify, in);
    verify->add_option("--k", in.k, "K or A..B (default 1..floor(n/2))");
    verify->add_flag("--fixtures", fixtures, "run the built-in fixture set");
    verify->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    verify->add_option("--tol", options.bound_tol, "bound margin tolerance")->capture_default_str();
    verify->add_option("--equality-tol", options.equality_tol, "tolerance for algebraic connectivity equalities")
        ->capture_default_str();
    verify->add_option("--match-tol", options.limits.match_tol, "eigenvalue matching tolerance")->capture_default_str();
    verify->add_option("--identity-tol", options.identity_tol, "relative tolerance for Rayleigh identities")
        ->capture_default_str();
    verify->add_option("--random-vectors", options.random_vectors, "random vectors per (G, k)")->capture_default_str();
    verify->add_option("--seed", options.seed, "random vector seed")->capture_default_str();
    verify->add_option("--dense-cap", options.limits.dense_cap, "largest order decomposed densely")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitRefused;
    }

    try {
        if (*build) return run_build(in, map_path);
        if (*spectrum) return run_spectrum(in, extremal, dense_cap, vectors_path);
        return run_verify(in, fixtures, format, options);
    } catch (const Refusal& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefused;
    }
}
