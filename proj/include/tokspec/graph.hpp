#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tokspec {

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Undirected edge with u < v, both 1-based.
struct Edge {
    int u = 0;
    int v = 0;
    auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on vertices 1..n. Immutable once built.
class Graph {
public:
    Graph() = default;

    int order() const { return static_cast<int>(degree_.size()); }
    std::size_t size() const { return edges_.size(); }

    // Sorted ascending, each edge stored once with u < v.
    const std::vector<Edge>& edges() const { return edges_; }

    // Sorted 1-based neighbours of vertex v (1-based).
    const std::vector<int>& neighbors(int v) const { return adj_.at(v - 1); }

    int degree(int v) const { return degree_.at(v - 1); }

    // degrees()[i] is the degree of vertex i + 1.
    const std::vector<int>& degrees() const { return degree_; }

    bool adjacent(int u, int v) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.edges_ == b.edges_ && a.degree_ == b.degree_; }

private:
    friend Graph make_graph(int n, std::span<const std::pair<int, int>> edges);

    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> degree_;
};

// Deduplicates undirected pairs. Throws GraphError naming the offending pair
// on self-loops or out-of-range endpoints.
Graph make_graph(int n, std::span<const std::pair<int, int>> edges);
Graph make_graph(int n, std::initializer_list<std::pair<int, int>> edges);

enum class FamilyName { path, cycle, complete, hamming, petersen, star, random };

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
// Vertices are the d-tuples over [q] in mixed-radix order, first coordinate most significant.
Graph hamming_graph(int d, int q);
// Outer 5-cycle 1..5, inner pentagram 6..10, spokes i ~ i+5.
Graph petersen_graph();
// K_{1,leaves} with centre 1.
Graph star_graph(int leaves);
// G(n, p) resampled until connected. Bit-reproducible for a given seed.
Graph random_connected_graph(int n, double p, std::uint64_t seed);

Graph family(FamilyName name, std::span<const int> params);

// Parses "name:p1,p2,...", e.g. "cycle:7", "hamming:2,3", "petersen".
// random takes "random:n,seed" with edge probability 1/2.
Graph parse_family(std::string_view spec);

struct VertexDeletion {
    Graph graph;
    // new_to_old[i] is the original label of new vertex i + 1.
    std::vector<int> new_to_old;
    // old_to_new[v - 1] is the new label of v, or 0 if v was deleted.
    std::vector<int> old_to_new;
};

// G - U, survivors relabelled 1..n-|U| in their original order.
VertexDeletion delete_vertices(const Graph& g, std::span<const int> removed);

// Vertex (u1, u2) maps to (u1 - 1) * n2 + u2.
Graph cartesian_product(const Graph& g1, const Graph& g2);

bool is_connected(const Graph& g);
int component_count(const Graph& g);
int max_degree(const Graph& g);
int min_degree(const Graph& g);

// Edge-list text: "n m" header then m lines "u v". Blank lines and '#'
// comments are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace tokspec
