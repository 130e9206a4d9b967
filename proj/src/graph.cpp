#include "tokspec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace tokspec {

namespace {

std::string pair_text(int u, int v) {
    std::ostringstream os;
    os << '(' << u << ',' << v << ')';
    return os.str();
}

Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    return make_graph(n, std::span<const std::pair<int, int>>(edges));
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_interval(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

bool Graph::adjacent(int u, int v) const {
    if (u < 1 || u > order() || v < 1 || v > order()) return false;
    const auto& nb = adj_[u - 1];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph make_graph(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 1) throw GraphError("graph must have at least one vertex, got n=" + std::to_string(n));
    Graph g;
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw GraphError("edge " + pair_text(u, v) + " has an endpoint outside 1.." + std::to_string(n));
        if (u == v) throw GraphError("edge " + pair_text(u, v) + " is a self-loop");
        g.edges_.push_back(Edge{std::min(u, v), std::max(u, v)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.adj_.assign(n, {});
    g.degree_.assign(n, 0);
    for (const auto& e : g.edges_) {
        g.adj_[e.u - 1].push_back(e.v);
        g.adj_[e.v - 1].push_back(e.u);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(g.adj_[v].begin(), g.adj_[v].end());
        g.degree_[v] = static_cast<int>(g.adj_[v].size());
    }
    return g;
}

Graph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    return make_graph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

Graph path_graph(int n) {
    if (n < 1) throw GraphError("path needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
    return from_edges(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw GraphError("cycle needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
    e.emplace_back(n, 1);
    return from_edges(n, e);
}

Graph complete_graph(int n) {
    if (n < 1) throw GraphError("complete graph needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) e.emplace_back(u, v);
    return from_edges(n, e);
}

Graph hamming_graph(int d, int q) {
    if (d < 1 || q < 2) throw GraphError("hamming needs d >= 1 and q >= 2");
    long long count = 1;
    for (int i = 0; i < d; ++i) {
        count *= q;
        if (count > 1'000'000) throw GraphError("hamming graph too large");
    }
    const int n = static_cast<int>(count);
    std::vector<std::pair<int, int>> e;
    // Neighbours of w: change one digit to a larger value, so each edge is emitted once.
    for (int w = 0; w < n; ++w) {
        int place = 1;
        for (int i = 0; i < d; ++i, place *= q) {
            const int digit = (w / place) % q;
            for (int other = digit + 1; other < q; ++other) e.emplace_back(w + 1, w + (other - digit) * place + 1);
        }
    }
    return from_edges(n, e);
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(1 + i, 1 + (i + 1) % 5);
        e.emplace_back(6 + i, 6 + (i + 2) % 5);
        e.emplace_back(1 + i, 6 + i);
    }
    return from_edges(10, e);
}

Graph star_graph(int leaves) {
    if (leaves < 1) throw GraphError("star needs at least one leaf");
    std::vector<std::pair<int, int>> e;
    for (int v = 2; v <= leaves + 1; ++v) e.emplace_back(1, v);
    return from_edges(leaves + 1, e);
}

Graph random_connected_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw GraphError("random graph needs n >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw GraphError("random graph needs 0 < p <= 1");
    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<std::pair<int, int>> e;
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (unit_interval(rng) < p) e.emplace_back(u, v);
        Graph g = from_edges(n, e);
        if (is_connected(g)) return g;
    }
}

Graph family(FamilyName name, std::span<const int> params) {
    auto need = [&](std::size_t count, const char* what) {
        if (params.size() != count) throw GraphError(std::string(what));
    };
    switch (name) {
        case FamilyName::path:
            need(1, "path takes one parameter: n");
            return path_graph(params[0]);
        case FamilyName::cycle:
            need(1, "cycle takes one parameter: n");
            return cycle_graph(params[0]);
        case FamilyName::complete:
            need(1, "complete takes one parameter: n");
            return complete_graph(params[0]);
        case FamilyName::hamming:
            need(2, "hamming takes two parameters: d,q");
            return hamming_graph(params[0], params[1]);
        case FamilyName::petersen:
            need(0, "petersen takes no parameters");
            return petersen_graph();
        case FamilyName::star:
            need(1, "star takes one parameter: number of leaves");
            return star_graph(params[0]);
        case FamilyName::random:
            need(2, "random takes two parameters: n,seed");
            if (params[1] < 0) throw GraphError("random seed must be non-negative");
            return random_connected_graph(params[0], 0.5, static_cast<std::uint64_t>(params[1]));
    }
    throw GraphError("unknown family");
}

Graph parse_family(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    static constexpr std::pair<std::string_view, FamilyName> names[] = {
        {"path", FamilyName::path},         {"cycle", FamilyName::cycle}, {"complete", FamilyName::complete},
        {"hamming", FamilyName::hamming},   {"petersen", FamilyName::petersen},
        {"star", FamilyName::star},         {"random", FamilyName::random},
    };
    const auto* it = std::find_if(std::begin(names), std::end(names), [&](const auto& p) { return p.first == name; });
    if (it == std::end(names))
        throw GraphError("family spec '" + std::string(spec) +
                         "': expected name:params with name one of path, cycle, complete, hamming, petersen, star, random");

    std::vector<int> params;
    if (colon != std::string_view::npos) {
        std::string_view rest = spec.substr(colon + 1);
        for (;;) {
            const auto comma = rest.find(',');
            const std::string_view tok = rest.substr(0, comma);
            int value = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
                throw GraphError("family spec '" + std::string(spec) + "': params must be comma-separated integers, got '" +
                                 std::string(tok) + "'");
            params.push_back(value);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    return family(it->second, params);
}

VertexDeletion delete_vertices(const Graph& g, std::span<const int> removed) {
    const int n = g.order();
    std::vector<char> gone(n, 0);
    for (int v : removed) {
        if (v < 1 || v > n) throw GraphError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
        gone[v - 1] = 1;
    }
    VertexDeletion out;
    out.old_to_new.assign(n, 0);
    for (int v = 1; v <= n; ++v) {
        if (gone[v - 1]) continue;
        out.new_to_old.push_back(v);
        out.old_to_new[v - 1] = static_cast<int>(out.new_to_old.size());
    }
    if (out.new_to_old.empty()) throw GraphError("deleting every vertex leaves an empty graph");

    std::vector<std::pair<int, int>> e;
    for (const auto& edge : g.edges()) {
        const int a = out.old_to_new[edge.u - 1];
        const int b = out.old_to_new[edge.v - 1];
        if (a && b) e.emplace_back(a, b);
    }
    out.graph = from_edges(static_cast<int>(out.new_to_old.size()), e);
    return out;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
    const int n1 = g1.order();
    const int n2 = g2.order();
    auto id = [n2](int a, int b) { return (a - 1) * n2 + b; };
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<std::size_t>(n1) * g2.size() + static_cast<std::size_t>(n2) * g1.size());
    for (int a = 1; a <= n1; ++a)
        for (const auto& edge : g2.edges()) e.emplace_back(id(a, edge.u), id(a, edge.v));
    for (int b = 1; b <= n2; ++b)
        for (const auto& edge : g1.edges()) e.emplace_back(id(edge.u, b), id(edge.v, b));
    return from_edges(n1 * n2, e);
}

int component_count(const Graph& g) {
    const int n = g.order();
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    int components = 0;
    for (int s = 1; s <= n; ++s) {
        if (seen[s - 1]) continue;
        ++components;
        seen[s - 1] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!seen[w - 1]) {
                    seen[w - 1] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

int max_degree(const Graph& g) {
    const auto& d = g.degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

int min_degree(const Graph& g) {
    const auto& d = g.degrees();
    return d.empty() ? 0 : *std::min_element(d.begin(), d.end());
}

Graph read_edge_list(std::istream& in) {
    std::vector<long long> numbers;
    std::string line;
    int line_no = 0;
    std::vector<int> number_line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            long long value = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw GraphError("edge list line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
            numbers.push_back(value);
            number_line.push_back(line_no);
        }
    }
    if (numbers.size() < 2) throw GraphError("edge list: missing 'n m' header");
    const long long n = numbers[0];
    const long long m = numbers[1];
    if (n < 1 || n > 1'000'000) throw GraphError("edge list: invalid vertex count " + std::to_string(n));
    if (m < 0) throw GraphError("edge list: invalid edge count " + std::to_string(m));
    if (numbers.size() != static_cast<std::size_t>(2 + 2 * m))
        throw GraphError("edge list: header announces " + std::to_string(m) + " edges but " +
                         std::to_string((numbers.size() - 2) / 2) + " pairs (" + std::to_string(numbers.size() - 2) +
                         " numbers) follow");
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        const long long u = numbers[2 + 2 * i];
        const long long v = numbers[3 + 2 * i];
        const std::string where = "edge list line " + std::to_string(number_line[2 + 2 * i]) + ": edge (" +
                                  std::to_string(u) + ',' + std::to_string(v) + ')';
        if (u < 1 || u > n || v < 1 || v > n)
            throw GraphError(where + " has an endpoint outside 1.." + std::to_string(n));
        if (u == v) throw GraphError(where + " is a self-loop");
        e.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return from_edges(static_cast<int>(n), e);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open edge list '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace tokspec
