#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tokspec/spectra.hpp"
#include "tokspec/token.hpp"

namespace tokspec {

// Default tolerance for matching eigenvalues across token levels.
inline constexpr double kMatchTol = 1e-7;

// Inclusion matrix between k-subsets (rows) and h-subsets (columns) of [n]:
// entry (X, Y) = 1 iff Y is contained in X. With h = 1 the columns are the
// vertices of G and this is the binomial matrix B. Never materialized.
class BinomialMatrix {
public:
    BinomialMatrix(int n, int k, int h = 1);

    int n() const { return rows_.n(); }
    int k() const { return rows_.k(); }
    int h() const { return cols_.k(); }
    std::size_t rows() const { return rows_.count(); }
    std::size_t cols() const { return cols_.count(); }
    const KSubsetIndex& row_index() const { return rows_; }
    const KSubsetIndex& col_index() const { return cols_; }

    bool entry(std::size_t row, std::size_t col) const;

    // B'v: sums of v over the rows containing each column subset.
    std::vector<double> transpose_times(std::span<const double> v) const;
    // B u: (B u)(X) = sum of u over the h-subsets of X.
    std::vector<double> times(std::span<const double> u) const;

    std::vector<std::size_t> row_sums() const;
    std::vector<std::size_t> column_sums() const;

private:
    template <class Visit>
    void for_each_entry(Visit&& visit) const;

    KSubsetIndex rows_;
    KSubsetIndex cols_;
};

// (B'v)_x = sum over X containing x of v(X).
std::vector<double> project(const BinomialMatrix& b, std::span<const double> v);

// v at the listed ranks, in list order.
std::vector<double> restrict(std::span<const double> v, std::span<const std::size_t> ranks);
// v on S_U re-indexed to the vertex order of F_{k-|U|}(G - U) via X -> X \ U.
std::vector<double> restrict(std::span<const double> v, const InducedTokenSubgraph& h);

struct SpectralMatch {
    bool ok = false;
    // (index in smaller, index in larger)
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double max_gap = 0.0;
    // Larger-spectrum indices left over ("new" eigenvalues); complete only when ok.
    std::vector<std::size_t> unmatched;
    // Set on failure: the first smaller-spectrum eigenvalue with no partner.
    std::optional<std::size_t> failed_index;
    double failed_value = 0.0;
};

// Two-pointer greedy matching of ascending multisets within an absolute tolerance.
SpectralMatch spectral_inclusion_check(std::span<const double> small, std::span<const double> large, double tol = kMatchTol);
SpectralMatch spectral_inclusion_check(const Spectrum& small, const Spectrum& large, double tol = kMatchTol);

class InclusionFailure : public std::runtime_error {
public:
    InclusionFailure(const std::string& what, SpectralMatch match) : std::runtime_error(what), match_(std::move(match)) {}
    const SpectralMatch& match() const { return match_; }

private:
    SpectralMatch match_;
};

struct NewEigenvalue {
    std::size_t index = 0;  // into the token-graph spectrum
    double value = 0.0;
    // Unit eigenvector of value, orthogonal to the lifted reference eigenvectors
    // of the same eigenvalue (so B'v = 0 against the reference level).
    std::vector<double> representative;
};

struct EigenClassification {
    int reference_level = 1;  // h: the spectrum F_k(G) was matched against
    SpectralMatch match;
    std::vector<std::size_t> inherited;  // indices into the F_k spectrum
    std::vector<NewEigenvalue> fresh;
};

// Splits spec(F_k(G)) into eigenvalues inherited from F_h(G) and new ones.
// Throws InclusionFailure when spec(F_h) does not embed.
EigenClassification classify_eigenvalues(const Spectrum& token_spectrum, int n, int k, const Spectrum& reference,
                                         int reference_level, double tol = kMatchTol);
// Against G itself, computing both spectra.
EigenClassification classify_eigenvalues(const TokenGraph& t, double tol = kMatchTol);

}  // namespace tokspec
