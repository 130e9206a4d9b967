#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tokspec/graph.hpp"
#include "tokspec/lift.hpp"
#include "tokspec/spectra.hpp"
#include "tokspec/token.hpp"

namespace tokspec {

// Tolerance for bound margins (differences of computed quantities).
inline constexpr double kBoundTol = 1e-6;
// Tolerance for equalities between algebraic connectivities.
inline constexpr double kEqualityTol = 1e-7;
// Relative tolerance for the Rayleigh decomposition identities.
inline constexpr double kIdentityTol = 1e-9;

// A record is vacuous when its hypothesis does not hold; vacuous is never pass.
enum class Status { pass, vacuous, fail };

std::string_view to_string(Status s);

struct CheckRecord {
    std::string graph;
    int k = 0;
    std::string check;
    Status status = Status::vacuous;
    std::optional<double> lhs;
    std::optional<double> rhs;
    std::optional<double> margin;  // lhs - rhs
    std::string note;

    bool hypothesis_held() const { return status != Status::vacuous; }
};

// lhs >= rhs - tol.
CheckRecord inequality_record(std::string check, int k, double lhs, double rhs, double tol, std::string note = {});
// |lhs - rhs| <= tol, reported with margin -|lhs - rhs|.
CheckRecord equality_record(std::string check, int k, double lhs, double rhs, double tol, std::string note = {});
CheckRecord vacuous_record(std::string check, int k, std::string note);

struct Limits {
    std::size_t vertex_cap = kDefaultVertexCap;
    std::size_t dense_cap = kDefaultDenseCap;
    double match_tol = kMatchTol;
};

// Lazily built token graphs F_h(G), their spectra and eigenvalue
// classifications, shared by every check on one base graph. Not thread-safe.
class SpectralLadder {
public:
    explicit SpectralLadder(Graph g, Limits limits = {});

    const Graph& graph() const { return graph_; }
    int n() const { return graph_.order(); }
    const Limits& limits() const { return limits_; }

    const TokenGraph& token(int h);
    const Spectrum& spectrum(int h);
    // lambda_2 of F_h(G); requires C(n, h) >= 2.
    double alpha(int h);
    // spec(F_h) against spec(G).
    const EigenClassification& new_vs_base(int h);
    // spec(F_h) against spec(F_{h-1}); h >= 2.
    const EigenClassification& new_vs_previous(int h);

private:
    struct Level {
        std::optional<TokenGraph> token;
        std::optional<Spectrum> spectrum;
        std::optional<EigenClassification> vs_base;
        std::optional<EigenClassification> vs_previous;
    };
    Level& level(int h);

    Graph graph_;
    Limits limits_;
    std::map<int, Level> levels_;
};

// ---- Rayleigh decomposition of a vector on F_k(G) ----

struct PQRS {
    double P = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double S = 0.0;

    // (P - Q - R) / S
    double quotient() const;
};

// P = sum v(X)^2 sum_{x in X} d_x,  Q = sum v(X)^2 sum_{x,y in X} a_xy (ordered
// pairs), R = sum_X sum_{x in X, y not in X} a_xy v(X) v(X - x + y),
// S = sum v(X)^2. Throws std::invalid_argument for the zero vector.
PQRS pqrs(const Graph& g, int k, std::span<const double> v);

// v*_z over the (k-1)-subsets: v(Z + z) when z is not in Z, else 0.
std::vector<double> vz_star(const KSubsetIndex& index, std::span<const double> v, int z);

struct IdentityResidual {
    std::string name;
    bool applicable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, S_k(v))
};

// P_k = (1/(k-1)) sum_z P_{k-1}(v*_z); Q_k = (1/(k-2)) sum_z Q_{k-1}(v*_z) for
// k > 2; R_k = (1/(k-1)) sum_z R_{k-1}(v*_z); S_k = (1/k) sum_z S_{k-1}(v*_z).
std::vector<IdentityResidual> pqrs_recursion(const Graph& g, int k, std::span<const double> v);

CheckRecord check_pqrs_recursion(const Graph& g, int k, std::span<const double> v, double tol = kIdentityTol);
// Q_k(v) <= k min{k-1, Delta} S_k(v).
CheckRecord check_qs_bound(const Graph& g, int k, std::span<const double> v, double tol = kIdentityTol);
// (P - Q - R)/S against the edge-sum quotient on the constructed F_k(G).
CheckRecord check_rayleigh_identity(const Graph& g, int k, const Graph& token, std::span<const double> v,
                                    double tol = kIdentityTol);

// ---- Eigenvalue bounds ----

// Every eigenvalue of F_k(G) unmatched in spec(G) is >= k(alpha(G) - k + 1).
CheckRecord check_new_eigenvalue_bound(SpectralLadder& ladder, int k, double tol = kBoundTol);
// Same bound for eigenvalues of F_k(G) unmatched in spec(F_{k-1}(G)).
CheckRecord check_new_eigenvalue_bound_vs_previous(SpectralLadder& ladder, int k, double tol = kBoundTol);

// chain[h - 1] = alpha(F_h(G)), h = 1..k. If the chain strictly decreases
// (gaps > tol), asserts alpha(F_k) >= k(alpha(G) - k + 1); otherwise vacuous.
CheckRecord conditional_alpha_bound(std::span<const double> chain, double tol = kBoundTol);
CheckRecord check_conditional_alpha_bound(SpectralLadder& ladder, int k, double tol = kBoundTol);

// alpha(F_k(G)) = alpha(G) for connected G.
CheckRecord check_alpha_equality_oracle(SpectralLadder& ladder, int k, double tol = kEqualityTol);
// alpha(G) >= k implies alpha(F_h(G)) = alpha(G) for every h <= k.
CheckRecord check_corollary_alpha_geq_k(SpectralLadder& ladder, int k, double tol = kEqualityTol);
// delta(G) >= k(n+k-3)/(2k-1), k <= n/2, implies alpha(F_h(G)) = alpha(G) for h <= k.
CheckRecord check_min_degree_condition(SpectralLadder& ladder, int k, double tol = kEqualityTol);

// Right-hand side of the F_{k-1} comparison bound: 2 alpha(G) - 2 for k = 2,
// k/(k-1) alpha(F_{k-1}) - k/(k-2) min{k-2, Delta} for k > 2.
double comparison_rhs(int k, double alpha_previous, int max_deg);
// Applied to alpha(F_k); vacuous unless alpha(F_k) is not an eigenvalue of F_{k-1}.
CheckRecord check_comparison_bound(SpectralLadder& ladder, int k, double tol = kBoundTol);
// Applied to every eigenvalue of F_k that is new against F_{k-1}.
CheckRecord check_comparison_bound_new_eigenvalues(SpectralLadder& ladder, int k, double tol = kBoundTol);
// New eigenvalues (against F_{k-1}) are >= k alpha(G) - k(k-1).
CheckRecord check_induction_bound(SpectralLadder& ladder, int k, double tol = kBoundTol);

// k alpha - k Delta (1 + sum_{r=Delta}^{k-2} 1/r) and k alpha - k Delta (1 + ln((k-1)/Delta)).
// Defined for k > 2 and 1 <= Delta <= k-2.
struct LogDeltaBounds {
    double harmonic = 0.0;
    double logarithmic = 0.0;
};
std::optional<LogDeltaBounds> log_delta_bounds(int k, double alpha, int max_deg);
// Returns the harmonic-form record, the logarithmic-form record, and the
// ordering record (harmonic form >= logarithmic form, as displayed).
std::vector<CheckRecord> check_log_delta_bound(SpectralLadder& ladder, int k, double tol = kBoundTol);

// ---- Fiedler facts ----

// alpha(G - x) >= alpha(G) - 1 for every vertex x.
CheckRecord check_vertex_deletion(const Graph& g, double tol = kEqualityTol);
// alpha(G1 x G2) = min{alpha(G1), alpha(G2)}.
CheckRecord check_cartesian_product_alpha(const Graph& g1, const Graph& g2, double tol = kEqualityTol);

// ---- Lift and structure checks used by the battery ----

CheckRecord check_token_structure(SpectralLadder& ladder, int k);
CheckRecord check_token_degree_formula(SpectralLadder& ladder, int k);
// spec(F_{k-1}) within spec(F_k) for 2 <= k <= n/2; for larger k, spec(F_k)
// equals spec(F_{n-k}) and sits inside spec(F_{k-1}).
CheckRecord check_spectral_inclusion(SpectralLadder& ladder, int k);
// ||L(G) B'v - lambda B'v||_inf <= residual_tol whenever ||B'v|| > 1e-6.
CheckRecord check_eigenvector_lift(SpectralLadder& ladder, int k, double residual_tol = kMatchTol);
// For every new representative (against spec(G)): ||B'v|| ~ 0.
CheckRecord check_projection_vanishes(SpectralLadder& ladder, int k, double tol = kMatchTol);
// For every new representative and every U with |U| <= k-1:
// |sum of v over S_U| <= tol ||v||. New is judged against spec(G), or against
// spec(F_{k-1}) when against_previous is set.
CheckRecord check_embedding_restriction(SpectralLadder& ladder, int k, bool against_previous, double tol = kMatchTol);
// H_U is isomorphic to F_{k-|U|}(G - U) for every U with |U| <= k-1.
CheckRecord check_induced_subgraphs(SpectralLadder& ladder, int k);

}  // namespace tokspec
