#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "tokspec/graph.hpp"

namespace tokspec {

// Full dense decompositions above this order are refused by default.
inline constexpr std::size_t kDefaultDenseCap = 3'000;

// Absolute tolerance for spectral comparisons unless overridden.
inline constexpr double kSpectralTol = 1e-8;

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Real symmetric matrix; only the lower triangle is stored (row-major packed).
class SymMatrix {
public:
    explicit SymMatrix(std::size_t order = 0) : order_(order), data_(order * (order + 1) / 2, 0.0) {}

    std::size_t order() const { return order_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[slot(i, j)]; }
    void set(std::size_t i, std::size_t j, double value) { data_[slot(i, j)] = value; }
    void add(std::size_t i, std::size_t j, double value) { data_[slot(i, j)] += value; }

    std::vector<double> multiply(std::span<const double> v) const;

private:
    static std::size_t slot(std::size_t i, std::size_t j) { return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i; }

    std::size_t order_;
    std::vector<double> data_;
};

// Ascending eigenvalues with an orthonormal eigenvector basis.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::vector<double> values, std::vector<double> vectors, double residual);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t j) const { return values_.at(j); }
    // Unit eigenvector for value(j); the first entry with |x| > 1e-12 is positive.
    std::span<const double> vector(std::size_t j) const { return {vectors_.data() + j * size(), size()}; }
    // max_j ||M v_j - lambda_j v_j||_inf against the decomposed matrix.
    double residual() const { return residual_; }

private:
    std::vector<double> values_;
    std::vector<double> vectors_;  // column-major, column j is vector(j)
    double residual_ = 0.0;
};

struct EigenOptions {
    // Sweeps stop once the off-diagonal Frobenius norm is below
    // off_diagonal_tol * max(1, ||M||_F).
    double off_diagonal_tol = 1e-12;
    int max_sweeps = 100;
    // Eigenvalues closer than this are treated as one cluster when ordering.
    double tie_tol = 1e-9;
};

// L = D - A.
SymMatrix laplacian(const Graph& g);

// Cyclic Jacobi rotations. Output is deterministic for identical input.
// Throws ConvergenceError (carrying the residual) when max_sweeps is exhausted.
Spectrum eigen_sym(const SymMatrix& m, const EigenOptions& options = {});

// Throws std::length_error above dense_cap.
Spectrum laplacian_spectrum(const Graph& g, std::size_t dense_cap = kDefaultDenseCap);

// lambda_2 of L(G); zero for disconnected graphs. Requires n >= 2.
double algebraic_connectivity(const Graph& g);
double algebraic_connectivity(const Spectrum& laplacian_spectrum);

// Edge-sum form: sum over edges of (v(x) - v(y))^2 divided by v'v.
double rayleigh_quotient(const Graph& g, std::span<const double> v);
// Matrix form v'Mv / v'v.
double rayleigh_quotient(const SymMatrix& m, std::span<const double> v);

// |sum v_i| <= tol * ||v||_2.
bool is_embedding(std::span<const double> v, double tol = kSpectralTol);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

// lambda_2 and lambda_N without a dense decomposition, for graphs above the
// dense cap. lambda_N by power iteration; lambda_2 by inverse iteration on the
// complement of the constant vector with conjugate-gradient solves.
struct ExtremalEigenvalues {
    double algebraic_connectivity = 0.0;
    double largest = 0.0;
};

struct ExtremalOptions {
    double tol = 1e-10;
    int max_iterations = 20'000;
};

ExtremalEigenvalues extremal_eigenvalues(const Graph& g, const ExtremalOptions& options = {});

}  // namespace tokspec
