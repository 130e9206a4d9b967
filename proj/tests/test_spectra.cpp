#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tokspec/spectra.hpp"
#include "tokspec/token.hpp"

using namespace tokspec;

namespace {

constexpr double kTol = 1e-8;

double reconstruction_error(const SymMatrix& m, const Spectrum& s) {
    const std::size_t n = m.order();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double x = 0.0;
            for (std::size_t c = 0; c < n; ++c) x += s.vector(c)[i] * s.value(c) * s.vector(c)[j];
            worst = std::max(worst, std::abs(x - m(i, j)));
        }
    return worst;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("closed-form spectra") {
    for (int n = 3; n <= 12; ++n) {
        CHECK(oracle::max_abs_diff(laplacian_spectrum(cycle_graph(n)).values(), oracle::cycle_spectrum(n)) < kTol);
        CHECK(oracle::max_abs_diff(laplacian_spectrum(path_graph(n)).values(), oracle::path_spectrum(n)) < kTol);
    }
    CHECK(oracle::max_abs_diff(laplacian_spectrum(hamming_graph(2, 3)).values(), oracle::hamming_spectrum(2, 3)) < kTol);
    CHECK(oracle::max_abs_diff(laplacian_spectrum(hamming_graph(3, 2)).values(), oracle::hamming_spectrum(3, 2)) < kTol);
    CHECK(oracle::max_abs_diff(laplacian_spectrum(petersen_graph()).values(),
                               {0, 2, 2, 2, 2, 2, 5, 5, 5, 5}) < kTol);
    CHECK(oracle::max_abs_diff(laplacian_spectrum(star_graph(5)).values(), {0, 1, 1, 1, 1, 6}) < kTol);
    for (int n = 4; n <= 8; ++n)
        for (int k = 1; k <= n / 2; ++k)
            CHECK(oracle::max_abs_diff(laplacian_spectrum(token_graph(complete_graph(n), k).graph).values(),
                                       oracle::johnson_spectrum(n, k)) < kTol);
}

TEST_CASE("small spectra") {
    CHECK(oracle::max_abs_diff(laplacian_spectrum(path_graph(2)).values(), {0, 2}) < kTol);
    CHECK(oracle::max_abs_diff(laplacian_spectrum(token_graph(complete_graph(4), 2).graph).values(),
                               {0, 4, 4, 4, 6, 6}) < kTol);
    CHECK(std::abs(algebraic_connectivity(cycle_graph(7)) - (2 - 2 * std::cos(2 * std::numbers::pi / 7))) < kTol);
    CHECK(std::abs(algebraic_connectivity(cycle_graph(7)) - 0.7530) < 1e-4);
}

TEST_CASE("reconstruction, orthonormality and residual") {
    for (const char* spec : {"petersen", "random:9,1", "hamming:2,3", "path:8", "star:5"}) {
        const Graph g = parse_family(spec);
        const SymMatrix l = laplacian(g);
        const Spectrum s = eigen_sym(l);
        const double scale = std::max(1.0, s.values().back());
        CHECK(reconstruction_error(l, s) <= 1e-8 * scale);
        CHECK(s.residual() <= 1e-9 * scale);
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b)
                CHECK(std::abs(dot(s.vector(a), s.vector(b)) - (a == b ? 1.0 : 0.0)) < 1e-10);
        CHECK(std::is_sorted(s.values().begin(), s.values().end()));
    }
}

TEST_CASE("general symmetric matrices") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    SymMatrix m(12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, u(rng));
    const Spectrum s = eigen_sym(m);
    CHECK(reconstruction_error(m, s) < 1e-9);
    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 12; ++i) trace += m(i, i);
    for (double x : s.values()) sum += x;
    CHECK(std::abs(trace - sum) < 1e-9);
}

TEST_CASE("zero multiplicity counts components") {
    for (const Graph& g : {make_graph(7, {{1, 2}, {3, 4}, {4, 5}}), path_graph(5), make_graph(4, {}),
                           cartesian_product(path_graph(2), make_graph(3, {{1, 2}}))}) {
        const Spectrum s = laplacian_spectrum(g);
        int zeros = 0;
        for (double x : s.values()) zeros += std::abs(x) < kTol;
        CHECK(zeros == component_count(g));
    }
}

TEST_CASE("algebraic connectivity of a disconnected graph is exactly zero") {
    CHECK(algebraic_connectivity(make_graph(4, {{1, 2}, {3, 4}})) == 0.0);
    CHECK_THROWS(algebraic_connectivity(path_graph(1)));
}

TEST_CASE("eigenvectors are sign-canonical and output is deterministic") {
    const Graph g = parse_family("random:9,4");
    const Spectrum a = laplacian_spectrum(g);
    const Spectrum b = laplacian_spectrum(g);
    CHECK(a.values() == b.values());
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto v = a.vector(j);
        CHECK(std::equal(v.begin(), v.end(), b.vector(j).begin()));
        const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > 1e-12; });
        REQUIRE(first != v.end());
        CHECK(*first > 0);
    }
}

TEST_CASE("Rayleigh quotients") {
    std::mt19937_64 rng(11);
    for (const char* spec : {"cycle:7", "petersen", "random:8,2"}) {
        const Graph g = parse_family(spec);
        const SymMatrix l = laplacian(g);
        const Spectrum s = laplacian_spectrum(g);
        const auto dense = oracle::laplacian(g);
        for (int t = 0; t < 50; ++t) {
            const auto v = random_vector(rng, g.order());
            const double q = rayleigh_quotient(g, v);
            CHECK(q >= s.values().front() - 1e-12);
            CHECK(q <= s.values().back() + 1e-12);
            CHECK(std::abs(q - rayleigh_quotient(l, v)) < 1e-12);
            CHECK(std::abs(q - oracle::quadratic_form(dense, v) / dot(v, v)) < 1e-12);
        }
        for (std::size_t j = 0; j < s.size(); ++j) CHECK(std::abs(rayleigh_quotient(g, s.vector(j)) - s.value(j)) < kTol);
    }
    CHECK_THROWS(rayleigh_quotient(path_graph(3), std::vector<double>{0, 0, 0}));
}

TEST_CASE("embeddings") {
    CHECK(is_embedding(std::vector<double>{1, -1, 0}));
    CHECK_FALSE(is_embedding(std::vector<double>{1, 1, 1}));
    const Spectrum s = laplacian_spectrum(petersen_graph());
    for (std::size_t j = 1; j < s.size(); ++j) CHECK(is_embedding(s.vector(j)));
}

TEST_CASE("extremal eigenvalues agree with the dense solve") {
    for (const char* spec : {"cycle:9", "petersen", "random:9,8", "hamming:2,3"}) {
        const Graph g = parse_family(spec);
        for (int k = 1; k <= 3; ++k) {
            const TokenGraph t = token_graph(g, k);
            const Spectrum s = laplacian_spectrum(t.graph);
            const auto e = extremal_eigenvalues(t.graph);
            CHECK(std::abs(e.algebraic_connectivity - s.value(1)) < 1e-7);
            CHECK(std::abs(e.largest - s.values().back()) < 1e-7);
        }
    }
}

TEST_CASE("dense cap and convergence failure") {
    CHECK_THROWS_AS(laplacian_spectrum(path_graph(10), 5), std::length_error);
    EigenOptions opts;
    opts.max_sweeps = 0;
    CHECK_THROWS_AS(eigen_sym(laplacian(cycle_graph(5)), opts), ConvergenceError);
}
