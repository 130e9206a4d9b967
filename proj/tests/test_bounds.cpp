#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tokspec/bounds.hpp"

using namespace tokspec;

namespace {

std::vector<double> random_vector(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

// P, Q, R, S by direct set enumeration over colex-ordered subsets.
PQRS brute_pqrs(const Graph& g, int k, const std::vector<double>& v) {
    const auto s = oracle::colex_subsets(g.order(), k);
    auto pos = [&](const oracle::Set& x) {
        return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x, oracle::colex_less) - s.begin());
    };
    PQRS out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& x = s[i];
        const double w = v[i] * v[i];
        out.S += w;
        for (int a : x) {
            out.P += w * g.degree(a);
            for (int b : x)
                if (a != b && oracle::is_edge(g, a, b)) out.Q += w;
            for (int y = 1; y <= g.order(); ++y) {
                if (std::find(x.begin(), x.end(), y) != x.end() || !oracle::is_edge(g, a, y)) continue;
                oracle::Set moved;
                for (int e : x)
                    if (e != a) moved.push_back(e);
                moved.push_back(y);
                std::sort(moved.begin(), moved.end());
                out.R += v[i] * v[pos(moved)];
            }
        }
    }
    return out;
}

const CheckRecord& find(const std::vector<CheckRecord>& rs, const std::string& name) {
    for (const auto& r : rs)
        if (r.check == name) return r;
    throw std::runtime_error("no record " + name);
}

}  // namespace

TEST_CASE("PQRS sums agree with direct enumeration") {
    for (const char* spec : {"path:5", "cycle:6", "complete:5", "random:7,3"}) {
        const Graph g = parse_family(spec);
        for (int k = 1; k <= 3; ++k) {
            const auto v = random_vector(k, oracle::choose(g.order(), k));
            const PQRS a = pqrs(g, k, v);
            const PQRS b = brute_pqrs(g, k, v);
            CHECK(std::abs(a.P - b.P) < 1e-10);
            CHECK(std::abs(a.Q - b.Q) < 1e-10);
            CHECK(std::abs(a.R - b.R) < 1e-10);
            CHECK(std::abs(a.S - b.S) < 1e-10);
        }
    }
}

TEST_CASE("Rayleigh decomposition matches the matrix quotient") {
    // Constant vector: quotient zero.
    CHECK(std::abs(pqrs(complete_graph(3), 2, std::vector<double>(3, 1.0)).quotient()) < 1e-12);

    for (const char* spec : {"path:3", "cycle:5", "petersen", "random:8,1"}) {
        const Graph g = parse_family(spec);
        for (int k = 1; k <= 3; ++k) {
            const auto edges = oracle::token_edges(g, k);
            const std::size_t size = oracle::choose(g.order(), k);
            const auto dense = oracle::laplacian(size, edges);
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto v = random_vector(seed, size);
                const double expected = oracle::quadratic_form(dense, v) / dot(v, v);
                CHECK(std::abs(pqrs(g, k, v).quotient() - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
            }
        }
    }

    const TokenGraph t = token_graph(cycle_graph(4), 2);
    const Spectrum s = laplacian_spectrum(t.graph);
    CHECK(std::abs(pqrs(cycle_graph(4), 2, s.vector(1)).quotient() - s.value(1)) < 1e-9);
    CHECK_THROWS_AS(pqrs(cycle_graph(4), 2, std::vector<double>(6, 0.0)), std::invalid_argument);
}

TEST_CASE("v*_z") {
    const KSubsetIndex idx(4, 2);
    const auto v = vz_star(idx, std::vector<double>(6, 1.0), 1);
    // Colex order of 1-subsets is {1},{2},{3},{4}.
    CHECK(v == std::vector<double>{0, 1, 1, 1});

    const KSubsetIndex big(7, 3);
    const auto w = random_vector(9, big.count());
    double total = 0.0;
    for (int z = 1; z <= 7; ++z) {
        const auto star = vz_star(big, w, z);
        CHECK(std::count(star.begin(), star.end(), 0.0) == static_cast<long>(oracle::choose(6, 1)));
        total += dot(star, star);
    }
    CHECK(std::abs(total - 3 * dot(w, w)) < 1e-10);
    CHECK_THROWS(vz_star(KSubsetIndex(4, 1), std::vector<double>(4, 1.0), 1));
}

TEST_CASE("recursion identities") {
    const auto v = random_vector(4, oracle::choose(5, 3));
    const auto ids = pqrs_recursion(cycle_graph(5), 3, v);
    REQUIRE(ids.size() == 4);
    for (const auto& id : ids) {
        CHECK(id.applicable);
        CHECK(id.residual < 1e-9);
    }
    CHECK(check_pqrs_recursion(cycle_graph(5), 3, v).status == Status::pass);

    const auto k4 = pqrs_recursion(complete_graph(4), 2, random_vector(2, 6));
    for (const auto& id : k4) CHECK(id.applicable == (id.name != "Q"));
    CHECK(check_pqrs_recursion(complete_graph(4), 2, random_vector(2, 6)).note.find("PRS") != std::string::npos);

    // Constant vector: S_k = C(n,k) and the sum over z is k C(n,k).
    const auto ones = pqrs_recursion(petersen_graph(), 3, std::vector<double>(oracle::choose(10, 3), 1.0));
    CHECK(ones[3].lhs == doctest::Approx(120.0));
    CHECK(ones[3].rhs == doctest::Approx(120.0));

    CHECK(check_pqrs_recursion(cycle_graph(5), 1, std::vector<double>(5, 1.0)).status == Status::vacuous);
}

TEST_CASE("Q-S bound") {
    const CheckRecord tight = check_qs_bound(complete_graph(4), 2, std::vector<double>(6, 1.0));
    CHECK(tight.status == Status::pass);
    CHECK(*tight.lhs == 12.0);
    CHECK(*tight.rhs == 12.0);

    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(check_qs_bound(path_graph(3), 2, random_vector(seed, 3)).status == Status::pass);
    const CheckRecord empty = check_qs_bound(make_graph(5, {}), 2, random_vector(1, 10));
    CHECK(*empty.rhs == 0.0);
    CHECK(empty.status == Status::pass);
}

TEST_CASE("three-state records") {
    CHECK(inequality_record("x", 1, 1.0, 1.0 + 5e-7, 1e-6).status == Status::pass);
    CHECK(inequality_record("x", 1, 1.0, 1.0 + 2e-6, 1e-6).status == Status::fail);
    const auto eq = equality_record("x", 1, 2.0, 2.5, 1e-7);
    CHECK(eq.status == Status::fail);
    CHECK(*eq.margin == -0.5);
    CHECK_FALSE(vacuous_record("x", 1, "why").hypothesis_held());
    CHECK(to_string(Status::fail) == "FAIL");
}

TEST_CASE("new-eigenvalue bound against the base graph") {
    SpectralLadder k4(complete_graph(4));
    const auto r = check_new_eigenvalue_bound(k4, 2);
    CHECK(r.status == Status::pass);
    CHECK(std::abs(*r.margin) < 1e-7);

    SpectralLadder c4(cycle_graph(4));
    const auto c = check_new_eigenvalue_bound(c4, 2);
    CHECK(c.status == Status::pass);
    CHECK(*c.rhs == doctest::Approx(2.0));
    CHECK(*c.lhs >= 2.0 - 1e-9);

    SpectralLadder p5(path_graph(5));
    CHECK(check_new_eigenvalue_bound(p5, 2).rhs.value() < 0);
    CHECK(check_new_eigenvalue_bound(p5, 1).status == Status::vacuous);

    // J(6,3) has eigenvalue 10 with multiplicity 9, new against K_6, below 3(6 - 2) = 12.
    SpectralLadder k6(complete_graph(6));
    const auto literal = check_new_eigenvalue_bound(k6, 3);
    CHECK(literal.status == Status::fail);
    CHECK(*literal.lhs == doctest::Approx(10.0));
    CHECK(*literal.rhs == doctest::Approx(12.0));
    const auto previous = check_new_eigenvalue_bound_vs_previous(k6, 3);
    CHECK(previous.status == Status::pass);
    CHECK(std::abs(*previous.margin) < 1e-7);
}

TEST_CASE("conditional bound is vacuous on graphs and exercised on synthetic chains") {
    SpectralLadder c7(cycle_graph(7));
    CHECK(check_conditional_alpha_bound(c7, 2).status == Status::vacuous);
    SpectralLadder k5(complete_graph(5));
    CHECK(check_conditional_alpha_bound(k5, 2).status == Status::vacuous);
    CHECK(check_conditional_alpha_bound(k5, 1).status == Status::vacuous);
    CHECK(conditional_alpha_bound(std::vector<double>{3.0}).status == Status::vacuous);

    const std::vector<double> held{2.5, 2.0, 1.8};
    const auto ok = conditional_alpha_bound(held);
    CHECK(ok.status == Status::pass);
    CHECK(*ok.rhs == doctest::Approx(1.5));
    const std::vector<double> low{3.0, 2.0, 1.0};
    const auto bad = conditional_alpha_bound(low);
    CHECK(*bad.rhs == doctest::Approx(3.0));
    CHECK(bad.status == Status::fail);
    const std::vector<double> flat{3.0, 3.0};
    CHECK(conditional_alpha_bound(flat).status == Status::vacuous);
}

TEST_CASE("algebraic connectivity equalities") {
    SpectralLadder c7(cycle_graph(7));
    CHECK(check_alpha_equality_oracle(c7, 3).status == Status::pass);
    SpectralLadder pet(petersen_graph());
    CHECK(check_alpha_equality_oracle(pet, 2).status == Status::pass);
    SpectralLadder k2(complete_graph(2));
    CHECK(check_alpha_equality_oracle(k2, 1).status == Status::pass);
    SpectralLadder split(make_graph(4, {{1, 2}, {3, 4}}));
    CHECK(check_alpha_equality_oracle(split, 2).status == Status::vacuous);
    CHECK(split.alpha(1) < 1e-12);

    SpectralLadder k5(complete_graph(5));
    const auto cor = check_corollary_alpha_geq_k(k5, 2);
    CHECK(cor.status == Status::pass);
    CHECK(*cor.rhs == doctest::Approx(5.0));
    SpectralLadder h23(hamming_graph(2, 3));
    for (int k = 1; k <= 3; ++k) CHECK(check_corollary_alpha_geq_k(h23, k).status == Status::pass);
    CHECK(check_corollary_alpha_geq_k(h23, 4).status == Status::vacuous);
    CHECK(check_corollary_alpha_geq_k(c7, 2).status == Status::vacuous);

    SpectralLadder k6(complete_graph(6));
    const auto md = check_min_degree_condition(k6, 2);
    CHECK(md.status == Status::pass);
    CHECK(*md.lhs == doctest::Approx(6.0));
    CHECK(check_min_degree_condition(c7, 2).status == Status::vacuous);
    SpectralLadder k4(complete_graph(4));
    CHECK(check_min_degree_condition(k4, 2).status == Status::pass);
    CHECK(*check_min_degree_condition(k4, 2).lhs == doctest::Approx(4.0));
}

TEST_CASE("comparison bound against F_{k-1}") {
    CHECK(comparison_rhs(2, 4.0, 3) == 6.0);
    CHECK(comparison_rhs(3, 6.0, 5) == doctest::Approx(1.5 * 6.0 - 3.0));
    CHECK(comparison_rhs(4, 6.0, 1) == doctest::Approx(4.0 / 3.0 * 6.0 - 2.0));

    for (const char* spec : {"cycle:7", "petersen", "complete:5", "random:9,2"}) {
        SpectralLadder l(parse_family(spec));
        for (int k = 2; k <= 3; ++k) {
            CHECK(check_comparison_bound(l, k).status == Status::vacuous);
            // C(5,3) = C(5,2): F_3(K_5) has nothing new over F_2(K_5).
            const Status expected = (std::string(spec) == "complete:5" && k == 3) ? Status::vacuous : Status::pass;
            CHECK(check_comparison_bound_new_eigenvalues(l, k).status == expected);
            CHECK(check_induction_bound(l, k).status == expected);
        }
    }
    SpectralLadder k4(complete_graph(4));
    const auto tight = check_comparison_bound_new_eigenvalues(k4, 2);
    CHECK(std::abs(*tight.margin) < 1e-7);
    CHECK(std::abs(*check_induction_bound(k4, 2).margin) < 1e-7);
    SpectralLadder c4(cycle_graph(4));
    CHECK(*check_induction_bound(c4, 2).rhs == doctest::Approx(2.0));
    CHECK(check_induction_bound(c4, 1).status == Status::vacuous);
}

TEST_CASE("logarithmic corollary") {
    CHECK_FALSE(log_delta_bounds(2, 1.0, 1));
    CHECK_FALSE(log_delta_bounds(4, 1.0, 3));
    CHECK_FALSE(log_delta_bounds(4, 1.0, 0));
    const auto b = log_delta_bounds(4, 1.0, 2);
    REQUIRE(b);
    CHECK(b->harmonic == doctest::Approx(4.0 - 12.0));
    CHECK(b->logarithmic == doctest::Approx(4.0 - 8.0 * (1.0 + std::log(1.5))));
    // The harmonic sum from Delta to k-2 dominates ln((k-1)/Delta), so the harmonic form is the smaller one.
    for (int k = 3; k <= 12; ++k)
        for (int d = 1; d <= k - 2; ++d) CHECK(log_delta_bounds(k, 2.0, d)->harmonic <= log_delta_bounds(k, 2.0, d)->logarithmic);

    SpectralLadder p6(path_graph(6));
    const auto rs = check_log_delta_bound(p6, 4);
    REQUIRE(rs.size() == 3);
    CHECK(find(rs, "log_delta_bound_harmonic").status == Status::pass);
    CHECK(*find(rs, "log_delta_bound_harmonic").rhs == doctest::Approx(4 * p6.alpha(1) - 12.0));
    CHECK(find(rs, "log_delta_bound_log").status == Status::pass);
    CHECK(find(rs, "log_delta_bound_ordering").status == Status::fail);

    SpectralLadder k5(complete_graph(5));
    for (const auto& r : check_log_delta_bound(k5, 3)) CHECK(r.status == Status::vacuous);
}

TEST_CASE("Fiedler facts") {
    for (const char* spec : {"path:6", "cycle:8", "complete:5", "petersen", "star:5", "random:9,6"})
        CHECK(check_vertex_deletion(parse_family(spec)).status == Status::pass);
    CHECK(check_vertex_deletion(path_graph(2)).status == Status::vacuous);

    const auto k2 = complete_graph(2);
    const auto a = check_cartesian_product_alpha(k2, k2);
    CHECK(a.status == Status::pass);
    CHECK(*a.lhs == doctest::Approx(2.0));
    CHECK(check_cartesian_product_alpha(k2, path_graph(3)).status == Status::pass);
    CHECK(*check_cartesian_product_alpha(complete_graph(3), complete_graph(3)).lhs == doctest::Approx(3.0));
}

TEST_CASE("lift and structure checks on small ladders") {
    SpectralLadder c4(cycle_graph(4));
    CHECK(check_token_structure(c4, 2).status == Status::pass);
    CHECK(check_token_degree_formula(c4, 2).status == Status::pass);
    CHECK(check_spectral_inclusion(c4, 2).status == Status::pass);
    CHECK(check_spectral_inclusion(c4, 3).check == "spectral_inclusion_complement");
    CHECK(check_spectral_inclusion(c4, 3).status == Status::pass);
    CHECK(check_eigenvector_lift(c4, 2).status == Status::pass);
    CHECK(check_projection_vanishes(c4, 2).status == Status::pass);
    CHECK(check_embedding_restriction(c4, 2, false).status == Status::pass);
    CHECK(check_induced_subgraphs(c4, 2).status == Status::pass);

    // For three tokens, eigenvalues inherited from F_2 are new against G but not
    // orthogonal to the pair sums, so the embedding property needs the F_{k-1} reference.
    SpectralLadder c7(cycle_graph(7));
    CHECK(check_embedding_restriction(c7, 3, false).status == Status::fail);
    CHECK(check_embedding_restriction(c7, 3, true).status == Status::pass);
    CHECK(check_embedding_restriction(c7, 2, false).status == Status::pass);
}
