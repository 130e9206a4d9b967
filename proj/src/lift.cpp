#include "tokspec/lift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace tokspec {

BinomialMatrix::BinomialMatrix(int n, int k, int h) : rows_(n, k), cols_(n, h) {
    if (h > k) throw std::invalid_argument("inclusion matrix needs h <= k");
}

template <class Visit>
void BinomialMatrix::for_each_entry(Visit&& visit) const {
    const int k = rows_.k();
    const int h = cols_.k();
    if (k == 0 || h == 0) {
        for (std::size_t r = 0; r < rows_.count(); ++r) visit(r, std::size_t{0});
        return;
    }
    // Positions within a row's element list that form each h-subset.
    const KSubsetIndex picks(k, h);
    int elements[64];
    for (std::size_t r = 0; r < rows_.count(); ++r) {
        std::uint64_t m = rows_.mask(r);
        for (int i = 0; m; ++i, m &= m - 1) elements[i] = std::countr_zero(m);
        for (std::uint64_t pick : picks.masks()) {
            std::uint64_t sub = 0;
            for (std::uint64_t p = pick; p; p &= p - 1) sub |= std::uint64_t{1} << elements[std::countr_zero(p)];
            visit(r, cols_.rank_mask(sub));
        }
    }
}

bool BinomialMatrix::entry(std::size_t row, std::size_t col) const {
    const std::uint64_t x = rows_.mask(row);
    const std::uint64_t y = cols_.mask(col);
    return (x & y) == y;
}

std::vector<double> BinomialMatrix::transpose_times(std::span<const double> v) const {
    if (v.size() != rows())
        throw std::invalid_argument("B'v: vector has length " + std::to_string(v.size()) + ", expected " +
                                    std::to_string(rows()));
    std::vector<double> out(cols(), 0.0);
    for_each_entry([&](std::size_t r, std::size_t c) { out[c] += v[r]; });
    return out;
}

std::vector<double> BinomialMatrix::times(std::span<const double> u) const {
    if (u.size() != cols())
        throw std::invalid_argument("Bu: vector has length " + std::to_string(u.size()) + ", expected " +
                                    std::to_string(cols()));
    std::vector<double> out(rows(), 0.0);
    for_each_entry([&](std::size_t r, std::size_t c) { out[r] += u[c]; });
    return out;
}

std::vector<std::size_t> BinomialMatrix::row_sums() const {
    std::vector<std::size_t> out(rows(), 0);
    for_each_entry([&](std::size_t r, std::size_t) { ++out[r]; });
    return out;
}

std::vector<std::size_t> BinomialMatrix::column_sums() const {
    std::vector<std::size_t> out(cols(), 0);
    for_each_entry([&](std::size_t, std::size_t c) { ++out[c]; });
    return out;
}

std::vector<double> project(const BinomialMatrix& b, std::span<const double> v) { return b.transpose_times(v); }

std::vector<double> restrict(std::span<const double> v, std::span<const std::size_t> ranks) {
    std::vector<double> out;
    out.reserve(ranks.size());
    for (std::size_t r : ranks) {
        if (r >= v.size()) throw std::out_of_range("restrict: rank " + std::to_string(r) + " outside the vector");
        out.push_back(v[r]);
    }
    return out;
}

std::vector<double> restrict(std::span<const double> v, const InducedTokenSubgraph& h) {
    std::vector<double> out(h.members.size(), 0.0);
    for (std::size_t i = 0; i < h.members.size(); ++i) {
        if (h.members[i] >= v.size()) throw std::out_of_range("restrict: vector shorter than the token graph");
        out[h.to_reduced[i]] = v[h.members[i]];
    }
    return out;
}

SpectralMatch spectral_inclusion_check(std::span<const double> small, std::span<const double> large, double tol) {
    SpectralMatch m;
    if (small.size() > large.size()) {
        m.failed_index = small.empty() ? 0 : small.size() - 1;
        m.failed_value = small.empty() ? 0.0 : small.back();
        return m;
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
        while (j < large.size() && large[j] < small[i] - tol) m.unmatched.push_back(j++);
        if (j == large.size() || std::abs(large[j] - small[i]) > tol) {
            m.failed_index = i;
            m.failed_value = small[i];
            return m;
        }
        m.max_gap = std::max(m.max_gap, std::abs(large[j] - small[i]));
        m.pairs.emplace_back(i, j++);
    }
    while (j < large.size()) m.unmatched.push_back(j++);
    m.ok = true;
    return m;
}

SpectralMatch spectral_inclusion_check(const Spectrum& small, const Spectrum& large, double tol) {
    return spectral_inclusion_check(small.values(), large.values(), tol);
}

namespace {

// Orthogonalizes x against basis (twice, for stability); appends it if what
// remains has norm above floor.
bool extend_basis(std::vector<std::vector<double>>& basis, std::vector<double> x, double floor) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            const double c = dot(b, x);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * b[i];
        }
    const double nrm = norm2(x);
    if (nrm <= floor) return false;
    for (double& e : x) e /= nrm;
    basis.push_back(std::move(x));
    return true;
}

}  // namespace

EigenClassification classify_eigenvalues(const Spectrum& token_spectrum, int n, int k, const Spectrum& reference,
                                         int reference_level, double tol) {
    EigenClassification out;
    out.reference_level = reference_level;
    out.match = spectral_inclusion_check(reference, token_spectrum, tol);
    if (!out.match.ok)
        throw InclusionFailure("spectrum of F_" + std::to_string(reference_level) + " does not embed in F_" +
                                   std::to_string(k) + ": no partner for eigenvalue " +
                                   std::to_string(out.match.failed_value),
                               out.match);

    const std::size_t size = token_spectrum.size();
    std::vector<long> partner(size, -1);
    for (auto [s, l] : out.match.pairs) {
        partner[l] = static_cast<long>(s);
        out.inherited.push_back(l);
    }
    const BinomialMatrix lift(n, k, reference_level);
    const auto& values = token_spectrum.values();

    for (std::size_t lo = 0; lo < size;) {
        std::size_t hi = lo + 1;
        while (hi < size && values[hi] - values[hi - 1] <= tol) ++hi;
        std::vector<std::size_t> fresh_here;
        for (std::size_t j = lo; j < hi; ++j)
            if (partner[j] < 0) fresh_here.push_back(j);

        if (!fresh_here.empty()) {
            const std::size_t width = hi - lo;
            // Coordinates, in the cluster's eigenbasis, of the lifted reference eigenvectors.
            std::vector<std::vector<double>> basis;
            for (std::size_t j = lo; j < hi; ++j) {
                if (partner[j] < 0) continue;
                const auto lifted = lift.times(reference.vector(static_cast<std::size_t>(partner[j])));
                std::vector<double> coords(width);
                for (std::size_t c = 0; c < width; ++c) coords[c] = dot(token_spectrum.vector(lo + c), lifted);
                extend_basis(basis, std::move(coords), 1e-6 * std::max(1.0, norm2(lifted)));
            }
            const std::size_t lifted_rank = basis.size();
            for (std::size_t c = 0; c < width && basis.size() < width; ++c) {
                std::vector<double> e(width, 0.0);
                e[c] = 1.0;
                extend_basis(basis, std::move(e), 1e-6);
            }
            std::size_t next = lifted_rank;
            for (std::size_t j : fresh_here) {
                NewEigenvalue fresh{j, values[j], {}};
                if (next < basis.size()) {
                    std::vector<double> v(size, 0.0);
                    for (std::size_t c = 0; c < width; ++c) {
                        const auto col = token_spectrum.vector(lo + c);
                        for (std::size_t i = 0; i < size; ++i) v[i] += basis[next][c] * col[i];
                    }
                    const double nrm = norm2(v);
                    for (double& e : v) e /= nrm;
                    fresh.representative = std::move(v);
                    ++next;
                }
                out.fresh.push_back(std::move(fresh));
            }
        }
        lo = hi;
    }
    return out;
}

EigenClassification classify_eigenvalues(const TokenGraph& t, double tol) {
    const Spectrum token_spectrum = laplacian_spectrum(t.graph);
    const Spectrum base_spectrum = laplacian_spectrum(t.base);
    return classify_eigenvalues(token_spectrum, t.base.order(), t.k, base_spectrum, 1, tol);
}

}  // namespace tokspec
