#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tokspec/bounds.hpp"
#include "tokspec/graph.hpp"

namespace tokspec {

struct Fixture {
    std::string id;  // a family spec that rebuilds the graph
    Graph graph;
};

// Paths P_3..P_8, cycles C_4..C_9, complete graphs K_3..K_6, Petersen,
// H(2,2), H(2,3), the star K_{1,5}, and 20 random connected graphs
// (n in [5,9], p = 1/2) drawn from one stream seeded with 42.
std::vector<Fixture> fixture_set();

struct VerifyOptions {
    double bound_tol = kBoundTol;
    double equality_tol = kEqualityTol;
    double identity_tol = kIdentityTol;
    double lift_tol = kMatchTol;  // eigenvector lift residuals and embedding sums
    int random_vectors = 1000;
    std::uint64_t seed = 42;
    Limits limits;
};

struct LevelSummary {
    std::string graph;
    int k = 0;
    double alpha = 0.0;
    std::optional<double> alpha_token;
    // Eigenvalues of F_k(G) unmatched in spec(G).
    std::vector<double> new_eigenvalues;
};

struct Report {
    std::vector<CheckRecord> records;
    std::vector<LevelSummary> summaries;

    bool has_failure() const;
};

// Every check for one (G, k), sorted by check name.
std::vector<CheckRecord> run_battery(SpectralLadder& ladder, const std::string& id, int k, const VerifyOptions& options);

// Graph-level checks (k = 0) followed by the battery for k = k_lo..k_hi.
void verify_graph(const std::string& id, const Graph& g, int k_lo, int k_hi, const VerifyOptions& options,
                  Report& out);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);
std::string to_text(const Report& report);

}  // namespace tokspec
