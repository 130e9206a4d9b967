#include "tokspec/token.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace tokspec {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            throw TokenError("C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
        result = result * factor / static_cast<std::uint64_t>(i);
    }
    return result;
}

std::uint64_t subset_mask(std::span<const int> subset, int n) {
    std::uint64_t mask = 0;
    for (int x : subset) {
        if (x < 1 || x > n) throw TokenError("element " + std::to_string(x) + " outside 1.." + std::to_string(n));
        const std::uint64_t bit = std::uint64_t{1} << (x - 1);
        if (mask & bit) throw TokenError("element " + std::to_string(x) + " repeated in subset");
        mask |= bit;
    }
    return mask;
}

Subset mask_subset(std::uint64_t mask) {
    Subset out;
    while (mask) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

KSubsetIndex::KSubsetIndex(int n, int k) : n_(n), k_(k) {
    if (n < 1 || n > 63) throw TokenError("subset index needs 1 <= n <= 63, got n=" + std::to_string(n));
    if (k < 0 || k > n)
        throw TokenError("subset size k=" + std::to_string(k) + " outside 0.." + std::to_string(n));

    choose_.assign(n + 1, std::vector<std::uint64_t>(k + 2, 0));
    for (int a = 0; a <= n; ++a) {
        choose_[a][0] = 1;
        for (int b = 1; b <= std::min(a, k + 1); ++b)
            choose_[a][b] = choose_[a - 1][b - 1] + (b <= a - 1 ? choose_[a - 1][b] : 0);
    }

    const std::uint64_t total = binomial(n, k);
    masks_.reserve(total);
    // Ascending k-bit masks (Gosper's hack) are exactly colex order.
    std::uint64_t m = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
    for (std::uint64_t i = 0; i < total; ++i) {
        masks_.push_back(m);
        if (m == 0) break;
        const std::uint64_t c = m & (~m + 1);
        const std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

std::size_t KSubsetIndex::rank_mask(std::uint64_t mask) const {
    if (std::popcount(mask) != k_)
        throw TokenError("subset has " + std::to_string(std::popcount(mask)) + " elements, expected " +
                         std::to_string(k_));
    if (n_ < 64 && (mask >> n_) != 0) throw TokenError("subset has an element above " + std::to_string(n_));
    std::size_t r = 0;
    int i = 1;
    while (mask) {
        const int x = std::countr_zero(mask);  // element x + 1, contributes C(x, i)
        r += choose_[x][i];
        ++i;
        mask &= mask - 1;
    }
    return r;
}

std::size_t KSubsetIndex::rank(std::span<const int> subset) const {
    if (static_cast<int>(subset.size()) != k_)
        throw TokenError("subset has " + std::to_string(subset.size()) + " elements, expected " + std::to_string(k_));
    return rank_mask(subset_mask(subset, n_));
}

Subset KSubsetIndex::unrank(std::size_t r) const {
    if (r >= masks_.size())
        throw TokenError("rank " + std::to_string(r) + " outside 0.." + std::to_string(masks_.size()) + "-1");
    // Largest c with C(c, i) <= remaining gives the i-th smallest element c + 1.
    Subset out(k_);
    std::uint64_t rem = r;
    int c = n_ - 1;
    for (int i = k_; i >= 1; --i) {
        while (choose_[c][i] > rem) --c;
        out[i - 1] = c + 1;
        rem -= choose_[c][i];
        --c;
    }
    return out;
}

TokenGraph token_graph(const Graph& g, int k, std::size_t vertex_cap) {
    const int n = g.order();
    if (k < 1 || k > n) throw TokenError("token count k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
    const std::uint64_t vertices = binomial(n, k);
    if (vertices > vertex_cap)
        throw TokenError("F_" + std::to_string(k) + " has C(" + std::to_string(n) + "," + std::to_string(k) +
                         ")=" + std::to_string(vertices) + " vertices, above the cap of " + std::to_string(vertex_cap));

    TokenGraph t{g, k, KSubsetIndex(n, k), {}};
    const KSubsetIndex rest(n, k - 1);

    // Each token edge {W+x, W+y} arises from exactly one edge {x,y} and one
    // (k-1)-subset W avoiding both endpoints.
    std::vector<std::pair<int, int>> edges;
    edges.reserve(binomial(n - 2, k - 1) * g.size());
    for (const auto& e : g.edges()) {
        const std::uint64_t bx = std::uint64_t{1} << (e.u - 1);
        const std::uint64_t by = std::uint64_t{1} << (e.v - 1);
        for (std::uint64_t w : rest.masks()) {
            if (w & (bx | by)) continue;
            const auto a = t.index.rank_mask(w | bx);
            const auto b = t.index.rank_mask(w | by);
            edges.emplace_back(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
        }
    }
    t.graph = make_graph(static_cast<int>(vertices), std::span<const std::pair<int, int>>(edges));
    return t;
}

int token_degree(const Graph& g, std::span<const int> subset) {
    subset_mask(subset, g.order());  // validates range and distinctness
    int degree = 0;
    for (int x : subset) degree += g.degree(x);
    for (int x : subset)
        for (int y : subset)
            if (x != y && g.adjacent(x, y)) --degree;
    return degree;
}

namespace {

void require_fixed_size(const TokenGraph& t, std::span<const int> fixed) {
    if (static_cast<int>(fixed.size()) >= t.k)
        throw TokenError("fixed set has " + std::to_string(fixed.size()) + " elements; needs at most k-1=" +
                         std::to_string(t.k - 1));
}

}  // namespace

std::vector<std::size_t> token_subset_vertices(const TokenGraph& t, std::span<const int> fixed) {
    require_fixed_size(t, fixed);
    const std::uint64_t u = subset_mask(fixed, t.index.n());
    std::vector<std::size_t> out;
    out.reserve(binomial(t.index.n() - static_cast<int>(fixed.size()), t.k - static_cast<int>(fixed.size())));
    const auto& masks = t.index.masks();
    for (std::size_t r = 0; r < masks.size(); ++r)
        if ((masks[r] & u) == u) out.push_back(r);
    return out;
}

InducedTokenSubgraph induced_token_subgraph(const TokenGraph& t, std::span<const int> fixed) {
    require_fixed_size(t, fixed);
    InducedTokenSubgraph h;
    h.fixed.assign(fixed.begin(), fixed.end());
    std::sort(h.fixed.begin(), h.fixed.end());
    const std::uint64_t u = subset_mask(h.fixed, t.index.n());
    h.members = token_subset_vertices(t, h.fixed);

    // Induced subgraph on S_U, vertices numbered by position in members.
    std::vector<int> position(t.index.count(), 0);
    for (std::size_t i = 0; i < h.members.size(); ++i) position[h.members[i]] = static_cast<int>(i) + 1;
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : t.graph.edges()) {
        const int a = position[e.u - 1];
        const int b = position[e.v - 1];
        if (a && b) edges.emplace_back(a, b);
    }
    h.subgraph = make_graph(static_cast<int>(h.members.size()), std::span<const std::pair<int, int>>(edges));

    h.remainder = delete_vertices(t.base, h.fixed);
    const int reduced_k = t.k - static_cast<int>(h.fixed.size());
    h.reduced = token_graph(h.remainder.graph, reduced_k, std::numeric_limits<std::size_t>::max());

    h.to_reduced.resize(h.members.size());
    std::vector<int> image_to_member(h.reduced.index.count(), 0);
    bool bijective = h.members.size() == h.reduced.index.count();
    for (std::size_t i = 0; i < h.members.size() && bijective; ++i) {
        Subset relabelled;
        for (int x : mask_subset(t.index.mask(h.members[i]) & ~u)) relabelled.push_back(h.remainder.old_to_new[x - 1]);
        const std::size_t r = h.reduced.index.rank(relabelled);
        h.to_reduced[i] = r;
        if (image_to_member[r]) bijective = false;
        image_to_member[r] = static_cast<int>(i) + 1;
    }

    bool preserves = bijective && h.subgraph.size() == h.reduced.graph.size();
    if (preserves) {
        for (const auto& e : h.subgraph.edges()) {
            const int a = static_cast<int>(h.to_reduced[e.u - 1]) + 1;
            const int b = static_cast<int>(h.to_reduced[e.v - 1]) + 1;
            if (!h.reduced.graph.adjacent(a, b)) {
                preserves = false;
                break;
            }
        }
    }
    h.isomorphic = preserves;
    return h;
}

}  // namespace tokspec
