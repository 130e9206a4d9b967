#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tokspec/graph.hpp"

namespace tokspec {

class TokenError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Token graphs with more vertices than this are refused unless the caller
// raises the cap.
inline constexpr std::size_t kDefaultVertexCap = 20'000;

// C(n, k); zero outside 0 <= k <= n. Throws TokenError on 64-bit overflow.
std::uint64_t binomial(int n, int k);

// Sorted 1-based vertex labels.
using Subset = std::vector<int>;

// Colexicographic rank/unrank of the k-subsets of [n]:
//   rank({x_1 < ... < x_k}) = sum_i C(x_i - 1, i).
// Subsets are also kept as bitmasks (bit x-1 for vertex x), so n <= 63.
class KSubsetIndex {
public:
    KSubsetIndex(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t count() const { return masks_.size(); }

    std::size_t rank(std::span<const int> subset) const;
    std::size_t rank_mask(std::uint64_t mask) const;
    Subset unrank(std::size_t r) const;

    std::uint64_t mask(std::size_t r) const { return masks_.at(r); }
    const std::vector<std::uint64_t>& masks() const { return masks_; }

private:
    int n_;
    int k_;
    std::vector<std::vector<std::uint64_t>> choose_;  // choose_[a][b] = C(a, b)
    std::vector<std::uint64_t> masks_;
};

std::uint64_t subset_mask(std::span<const int> subset, int n);
Subset mask_subset(std::uint64_t mask);

struct TokenGraph {
    Graph base;
    int k = 0;
    KSubsetIndex index{1, 1};
    // Vertex r + 1 of graph is the subset of rank r.
    Graph graph;
};

// F_k(G): k-subsets adjacent iff their symmetric difference is an edge of G.
TokenGraph token_graph(const Graph& g, int k, std::size_t vertex_cap = kDefaultVertexCap);

// sum_{x in X} d_x - sum over ordered pairs (x, y) in X of a_xy.
int token_degree(const Graph& g, std::span<const int> subset);

// Ranks of the k-subsets containing U, ascending. Requires |U| <= k - 1.
std::vector<std::size_t> token_subset_vertices(const TokenGraph& t, std::span<const int> fixed);

// The subgraph H_U of F_k(G) induced by S_U together with the map X -> X \ U
// onto F_{k-|U|}(G - U).
struct InducedTokenSubgraph {
    std::vector<int> fixed;             // U, sorted
    std::vector<std::size_t> members;   // S_U ranks in F_k(G), ascending
    Graph subgraph;                     // vertex i + 1 is members[i]
    VertexDeletion remainder;           // G - U with its relabelling
    TokenGraph reduced;                 // F_{k-|U|}(G - U)
    std::vector<std::size_t> to_reduced;  // members[i] maps to rank to_reduced[i] of reduced
    bool isomorphic = false;            // to_reduced is a verified edge-preserving bijection
};

InducedTokenSubgraph induced_token_subgraph(const TokenGraph& t, std::span<const int> fixed);

}  // namespace tokspec
