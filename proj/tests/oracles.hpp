#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library beyond reading a Graph's edge list.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "tokspec/graph.hpp"

namespace oracle {

using Set = std::vector<int>;

inline std::uint64_t choose(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (int a = 0; a <= n; ++a) {
        c[a][0] = 1;
        for (int b = 1; b <= a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
    }
    return c[n][k];
}

// All k-subsets of [n] in lexicographic order.
inline std::vector<Set> subsets(int n, int k) {
    std::vector<Set> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        Set s;
        for (int i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i + 1);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Colex order: compare from the largest element down.
inline bool colex_less(const Set& a, const Set& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline std::vector<Set> colex_subsets(int n, int k) {
    auto s = subsets(n, k);
    std::sort(s.begin(), s.end(), colex_less);
    return s;
}

inline Set symmetric_difference(const Set& a, const Set& b) {
    Set out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_edge(const tokspec::Graph& g, int u, int v) {
    for (const auto& e : g.edges())
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
    return false;
}

// Edges of F_k(G) as pairs of colex positions, by comparing every pair of subsets.
inline std::set<std::pair<std::size_t, std::size_t>> token_edges(const tokspec::Graph& g, int k) {
    const auto s = colex_subsets(g.order(), k);
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const auto d = symmetric_difference(s[i], s[j]);
            if (d.size() == 2 && is_edge(g, d[0], d[1])) out.insert({i, j});
        }
    return out;
}

using Dense = std::vector<std::vector<double>>;

inline Dense laplacian(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges) {
    Dense l(n, std::vector<double>(n, 0.0));
    for (auto [a, b] : edges) {
        l[a][a] += 1;
        l[b][b] += 1;
        l[a][b] -= 1;
        l[b][a] -= 1;
    }
    return l;
}

inline Dense laplacian(const tokspec::Graph& g) {
    std::set<std::pair<std::size_t, std::size_t>> e;
    for (const auto& x : g.edges()) e.insert({static_cast<std::size_t>(x.u - 1), static_cast<std::size_t>(x.v - 1)});
    return laplacian(g.order(), e);
}

inline std::vector<double> times(const Dense& m, const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline double quadratic_form(const Dense& m, const std::vector<double>& v) {
    const auto mv = times(m, v);
    double q = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) q += v[i] * mv[i];
    return q;
}

inline double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

// Closed-form Laplacian spectra, ascending.
inline std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<double> cycle_spectrum(int n) {
    std::vector<double> v;
    for (int j = 0; j < n; ++j) v.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * j / n));
    return sorted(v);
}

inline std::vector<double> path_spectrum(int n) {
    std::vector<double> v;
    for (int j = 0; j < n; ++j) v.push_back(2.0 - 2.0 * std::cos(std::numbers::pi * j / n));
    return sorted(v);
}

// J(n,k): eigenvalue j(n+1-j) with multiplicity C(n,j) - C(n,j-1), j = 0..min(k, n-k).
inline std::vector<double> johnson_spectrum(int n, int k) {
    std::vector<double> v;
    for (int j = 0; j <= std::min(k, n - k); ++j) {
        const std::uint64_t mult = choose(n, j) - (j ? choose(n, j - 1) : 0);
        for (std::uint64_t m = 0; m < mult; ++m) v.push_back(static_cast<double>(j) * (n + 1 - j));
    }
    return sorted(v);
}

// H(d,q): eigenvalue q i with multiplicity C(d,i)(q-1)^i.
inline std::vector<double> hamming_spectrum(int d, int q) {
    std::vector<double> v;
    for (int i = 0; i <= d; ++i) {
        std::uint64_t mult = choose(d, i);
        for (int r = 0; r < i; ++r) mult *= q - 1;
        for (std::uint64_t m = 0; m < mult; ++m) v.push_back(static_cast<double>(q) * i);
    }
    return sorted(v);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = a.size() == b.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
