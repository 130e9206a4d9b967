#include "tokspec/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace tokspec {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::vacuous:
            return "vacuous";
        case Status::fail:
            return "FAIL";
    }
    return "?";
}

CheckRecord inequality_record(std::string check, int k, double lhs, double rhs, double tol, std::string note) {
    CheckRecord r;
    r.k = k;
    r.check = std::move(check);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.status = *r.margin >= -tol ? Status::pass : Status::fail;
    r.note = std::move(note);
    return r;
}

CheckRecord equality_record(std::string check, int k, double lhs, double rhs, double tol, std::string note) {
    CheckRecord r;
    r.k = k;
    r.check = std::move(check);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = 0.0 - std::abs(lhs - rhs);
    r.status = *r.margin >= -tol ? Status::pass : Status::fail;
    r.note = std::move(note);
    return r;
}

CheckRecord vacuous_record(std::string check, int k, std::string note) {
    CheckRecord r;
    r.k = k;
    r.check = std::move(check);
    r.status = Status::vacuous;
    r.note = std::move(note);
    return r;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

bool beyond_count(const SpectralLadder& ladder, int k) { return k < 1 || k >= ladder.n(); }

// Checks built on the F_{k-1} classification need spec(F_{k-1}) inside spec(F_k),
// which holds for k <= ceil(n/2).
bool previous_embeds(const SpectralLadder& ladder, int k) { return k >= 2 && 2 * k <= ladder.n() + 1; }

}  // namespace

// ---------------------------------------------------------------------------

SpectralLadder::SpectralLadder(Graph g, Limits limits) : graph_(std::move(g)), limits_(limits) {}

SpectralLadder::Level& SpectralLadder::level(int h) {
    if (h < 1 || h > n())
        throw std::out_of_range("token level " + std::to_string(h) + " outside 1.." + std::to_string(n()));
    return levels_[h];
}

const TokenGraph& SpectralLadder::token(int h) {
    Level& l = level(h);
    if (!l.token) l.token = token_graph(graph_, h, limits_.vertex_cap);
    return *l.token;
}

const Spectrum& SpectralLadder::spectrum(int h) {
    Level& l = level(h);
    if (!l.spectrum) l.spectrum = laplacian_spectrum(token(h).graph, limits_.dense_cap);
    return *l.spectrum;
}

// F_h(G) is connected exactly when G is, for 0 < h < n.
double SpectralLadder::alpha(int h) {
    if (h >= 1 && h < n() && !is_connected(graph_)) return 0.0;
    return algebraic_connectivity(spectrum(h));
}

const EigenClassification& SpectralLadder::new_vs_base(int h) {
    Level& l = level(h);
    if (!l.vs_base) l.vs_base = classify_eigenvalues(spectrum(h), n(), h, spectrum(1), 1, limits_.match_tol);
    return *l.vs_base;
}

const EigenClassification& SpectralLadder::new_vs_previous(int h) {
    if (h < 2) throw std::out_of_range("classification against F_{h-1} needs h >= 2");
    Level& l = level(h);
    if (!l.vs_previous)
        l.vs_previous = classify_eigenvalues(spectrum(h), n(), h, spectrum(h - 1), h - 1, limits_.match_tol);
    return *l.vs_previous;
}

// ---------------------------------------------------------------------------

double PQRS::quotient() const { return (P - Q - R) / S; }

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    if (g.order() > 63) throw std::invalid_argument("Rayleigh decomposition needs n <= 63");
    std::vector<std::uint64_t> adj(g.order(), 0);
    for (const auto& e : g.edges()) {
        adj[e.u - 1] |= std::uint64_t{1} << (e.v - 1);
        adj[e.v - 1] |= std::uint64_t{1} << (e.u - 1);
    }
    return adj;
}

PQRS pqrs_sums(const Graph& g, const std::vector<std::uint64_t>& adj, const KSubsetIndex& index,
               std::span<const double> v) {
    if (v.size() != index.count())
        throw std::invalid_argument("vector has length " + std::to_string(v.size()) + ", expected C(n,k)=" +
                                    std::to_string(index.count()));
    PQRS out;
    const auto& degrees = g.degrees();
    for (std::size_t r = 0; r < index.count(); ++r) {
        const std::uint64_t x_mask = index.mask(r);
        const double vx = v[r];
        const double v2 = vx * vx;
        int degree_sum = 0;
        int inner = 0;  // ordered adjacent pairs inside X
        for (std::uint64_t m = x_mask; m; m &= m - 1) {
            const int x = std::countr_zero(m);
            degree_sum += degrees[x];
            inner += std::popcount(adj[x] & x_mask);
            if (vx == 0.0) continue;
            for (std::uint64_t out_nb = adj[x] & ~x_mask; out_nb; out_nb &= out_nb - 1) {
                const int y = std::countr_zero(out_nb);
                const std::uint64_t moved = (x_mask & ~(std::uint64_t{1} << x)) | (std::uint64_t{1} << y);
                out.R += vx * v[index.rank_mask(moved)];
            }
        }
        out.P += v2 * degree_sum;
        out.Q += v2 * inner;
        out.S += v2;
    }
    return out;
}

}  // namespace

PQRS pqrs(const Graph& g, int k, std::span<const double> v) {
    const KSubsetIndex index(g.order(), k);
    const PQRS out = pqrs_sums(g, adjacency_masks(g), index, v);
    if (out.S == 0.0) throw std::invalid_argument("Rayleigh decomposition of the zero vector");
    return out;
}

std::vector<double> vz_star(const KSubsetIndex& index, std::span<const double> v, int z) {
    if (index.k() < 2) throw std::invalid_argument("v*_z needs k >= 2");
    if (z < 1 || z > index.n()) throw std::invalid_argument("vertex " + std::to_string(z) + " outside 1.." + std::to_string(index.n()));
    if (v.size() != index.count()) throw std::invalid_argument("v*_z: vector length does not match C(n,k)");
    const KSubsetIndex lower(index.n(), index.k() - 1);
    const std::uint64_t bz = std::uint64_t{1} << (z - 1);
    std::vector<double> out(lower.count(), 0.0);
    for (std::size_t i = 0; i < lower.count(); ++i) {
        const std::uint64_t m = lower.mask(i);
        if (!(m & bz)) out[i] = v[index.rank_mask(m | bz)];
    }
    return out;
}

std::vector<IdentityResidual> pqrs_recursion(const Graph& g, int k, std::span<const double> v) {
    if (k < 2) throw std::invalid_argument("Rayleigh recursion needs k >= 2");
    const int n = g.order();
    const auto adj = adjacency_masks(g);
    const KSubsetIndex index(n, k);
    const KSubsetIndex lower(n, k - 1);
    const PQRS top = pqrs_sums(g, adj, index, v);

    PQRS sum;
    for (int z = 1; z <= n; ++z) {
        const auto star = vz_star(index, v, z);
        const PQRS part = pqrs_sums(g, adj, lower, star);
        sum.P += part.P;
        sum.Q += part.Q;
        sum.R += part.R;
        sum.S += part.S;
    }
    const double scale_floor = top.S;
    auto make = [&](std::string name, bool applicable, double lhs, double rhs) {
        IdentityResidual r{std::move(name), applicable, lhs, rhs, 0.0};
        if (applicable) {
            const double scale = std::max({std::abs(lhs), std::abs(rhs), scale_floor});
            r.residual = scale > 0 ? std::abs(lhs - rhs) / scale : 0.0;
        }
        return r;
    };
    const double km1 = k - 1;
    return {
        make("P", true, top.P, sum.P / km1),
        make("Q", k > 2, top.Q, k > 2 ? sum.Q / (k - 2) : 0.0),
        make("R", true, top.R, sum.R / km1),
        make("S", true, top.S, sum.S / k),
    };
}

CheckRecord check_pqrs_recursion(const Graph& g, int k, std::span<const double> v, double tol) {
    if (k < 2) return vacuous_record("pqrs_recursion", k, "recursions need k >= 2");
    const auto ids = pqrs_recursion(g, k, v);
    const IdentityResidual* worst = nullptr;
    std::string applied;
    for (const auto& id : ids) {
        if (!id.applicable) continue;
        applied += id.name;
        if (!worst || id.residual > worst->residual) worst = &id;
    }
    CheckRecord r;
    r.k = k;
    r.check = "pqrs_recursion";
    r.lhs = worst->lhs;
    r.rhs = worst->rhs;
    r.margin = 0.0 - worst->residual;
    r.status = worst->residual <= tol ? Status::pass : Status::fail;
    r.note = "identities " + applied + "; worst " + worst->name + " relative residual " + fmt(worst->residual);
    return r;
}

CheckRecord check_qs_bound(const Graph& g, int k, std::span<const double> v, double tol) {
    const PQRS s = pqrs(g, k, v);
    const double bound = static_cast<double>(k) * std::min(k - 1, max_degree(g)) * s.S;
    return inequality_record("qs_bound", k, bound, s.Q, tol * std::max(1.0, bound), "k min{k-1,Delta} S_k >= Q_k");
}

CheckRecord check_rayleigh_identity(const Graph& g, int k, const Graph& token, std::span<const double> v, double tol) {
    const double decomposed = pqrs(g, k, v).quotient();
    const double direct = rayleigh_quotient(token, v);
    CheckRecord r;
    r.k = k;
    r.check = "rayleigh_identity";
    r.lhs = decomposed;
    r.rhs = direct;
    const double residual = std::abs(decomposed - direct) / std::max(1.0, std::abs(direct));
    r.margin = 0.0 - residual;
    r.status = residual <= tol ? Status::pass : Status::fail;
    r.note = "(P-Q-R)/S against the edge-sum quotient on F_k";
    return r;
}

// ---------------------------------------------------------------------------

namespace {

double min_value(const std::vector<NewEigenvalue>& fresh) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& f : fresh) m = std::min(m, f.value);
    return m;
}

std::string below_note(const std::vector<NewEigenvalue>& fresh, double rhs, double tol) {
    std::string note;
    int count = 0;
    for (const auto& f : fresh) {
        if (f.value < rhs - tol) {
            if (count < 8) note += (count ? ", " : "") + fmt(f.value);
            ++count;
        }
    }
    if (count == 0) return {};
    return std::to_string(count) + " eigenvalue(s) below the bound: " + note + (count > 8 ? ", ..." : "");
}

CheckRecord fresh_bound_record(const std::string& name, int k, const std::vector<NewEigenvalue>& fresh, double rhs,
                               double tol, const std::string& what) {
    if (fresh.empty()) return vacuous_record(name, k, "no new eigenvalues against " + what);
    const double lhs = min_value(fresh);
    std::string note = std::to_string(fresh.size()) + " new eigenvalue(s) against " + what;
    CheckRecord r = inequality_record(name, k, lhs, rhs, tol, note);
    if (r.status == Status::fail) r.note += "; " + below_note(fresh, rhs, tol);
    return r;
}

}  // namespace

CheckRecord check_new_eigenvalue_bound(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "new_eigenvalue_bound";
    if (beyond_count(ladder, k)) return vacuous_record(name, k, "needs 1 <= k <= n-1");
    const auto& cls = ladder.new_vs_base(k);
    const double rhs = k * (ladder.alpha(1) - k + 1);
    return fresh_bound_record(name, k, cls.fresh, rhs, tol, "spec(G)");
}

CheckRecord check_new_eigenvalue_bound_vs_previous(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "new_eigenvalue_bound_vs_previous";
    if (!previous_embeds(ladder, k)) return vacuous_record(name, k, "needs 2 <= k <= ceil(n/2)");
    const auto& cls = ladder.new_vs_previous(k);
    const double rhs = k * (ladder.alpha(1) - k + 1);
    return fresh_bound_record(name, k, cls.fresh, rhs, tol, "spec(F_{k-1})");
}

CheckRecord conditional_alpha_bound(std::span<const double> chain, double tol) {
    const std::string name = "conditional_alpha_bound";
    const int k = static_cast<int>(chain.size());
    if (k < 1) throw std::invalid_argument("conditional bound needs at least alpha(G)");
    if (k == 1) return vacuous_record(name, k, "needs k >= 2; at k = 1 the bound reads alpha(G) >= alpha(G)");
    for (int h = 1; h < k; ++h) {
        if (!(chain[h - 1] - chain[h] > tol)) {
            return vacuous_record(name, k,
                                  "chain not strictly decreasing: alpha(F_" + std::to_string(h) + ")=" +
                                      fmt(chain[h - 1]) + ", alpha(F_" + std::to_string(h + 1) + ")=" + fmt(chain[h]));
        }
    }
    return inequality_record(name, k, chain[k - 1], k * (chain[0] - k + 1), tol, "strictly decreasing chain");
}

CheckRecord check_conditional_alpha_bound(SpectralLadder& ladder, int k, double tol) {
    if (beyond_count(ladder, k)) return vacuous_record("conditional_alpha_bound", k, "needs 1 <= k <= n-1");
    std::vector<double> chain;
    for (int h = 1; h <= k; ++h) chain.push_back(ladder.alpha(h));
    return conditional_alpha_bound(chain, tol);
}

CheckRecord check_alpha_equality_oracle(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "alpha_equality_oracle";
    if (beyond_count(ladder, k)) return vacuous_record(name, k, "needs 1 <= k <= n-1");
    if (!is_connected(ladder.graph())) return vacuous_record(name, k, "G is disconnected");
    return equality_record(name, k, ladder.alpha(k), ladder.alpha(1), tol, "alpha(F_k) = alpha(G)");
}

namespace {

CheckRecord alpha_equal_up_to(SpectralLadder& ladder, const std::string& name, int k, double tol, std::string note) {
    int worst = 1;
    double worst_gap = -1.0;
    const double base = ladder.alpha(1);
    for (int h = 1; h <= k; ++h) {
        const double gap = std::abs(ladder.alpha(h) - base);
        if (gap > worst_gap) {
            worst_gap = gap;
            worst = h;
        }
    }
    return equality_record(name, k, ladder.alpha(worst), base, tol,
                           std::move(note) + "; worst h=" + std::to_string(worst));
}

}  // namespace

CheckRecord check_corollary_alpha_geq_k(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "corollary_alpha_geq_k";
    if (beyond_count(ladder, k)) return vacuous_record(name, k, "needs 1 <= k <= n-1");
    const double a = ladder.alpha(1);
    if (a < k - tol) return vacuous_record(name, k, "alpha(G)=" + fmt(a) + " < k");
    return alpha_equal_up_to(ladder, name, k, tol, "alpha(G)=" + fmt(a) + " >= k");
}

CheckRecord check_min_degree_condition(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "min_degree_condition";
    const int n = ladder.n();
    if (k < 1 || 2 * k > n) return vacuous_record(name, k, "needs 1 <= k <= n/2");
    const int delta = min_degree(ladder.graph());
    // delta >= k(n+k-3)/(2k-1), in integers.
    const bool held = static_cast<long long>(delta) * (2 * k - 1) >= static_cast<long long>(k) * (n + k - 3);
    const std::string threshold = fmt(static_cast<double>(k) * (n + k - 3) / (2 * k - 1));
    if (!held) return vacuous_record(name, k, "delta=" + std::to_string(delta) + " < " + threshold);
    return alpha_equal_up_to(ladder, name, k, tol, "delta=" + std::to_string(delta) + " >= " + threshold);
}

double comparison_rhs(int k, double alpha_previous, int max_deg) {
    if (k < 2) throw std::invalid_argument("F_{k-1} comparison bound needs k >= 2");
    if (k == 2) return 2.0 * alpha_previous - 2.0;
    const double kk = k;
    return kk / (kk - 1) * alpha_previous - kk / (kk - 2) * std::min(k - 2, max_deg);
}

CheckRecord check_comparison_bound(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "comparison_bound";
    if (k < 2 || beyond_count(ladder, k)) return vacuous_record(name, k, "needs 2 <= k <= n-1");
    const double a_k = ladder.alpha(k);
    for (double mu : ladder.spectrum(k - 1).values()) {
        if (std::abs(mu - a_k) <= ladder.limits().match_tol)
            return vacuous_record(name, k, "alpha(F_k)=" + fmt(a_k) + " is an eigenvalue of F_{k-1}");
    }
    return inequality_record(name, k, a_k, comparison_rhs(k, ladder.alpha(k - 1), max_degree(ladder.graph())), tol,
                             "alpha(F_k) not in spec(F_{k-1})");
}

CheckRecord check_comparison_bound_new_eigenvalues(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "comparison_bound_new_eigenvalues";
    if (!previous_embeds(ladder, k)) return vacuous_record(name, k, "needs 2 <= k <= ceil(n/2)");
    const double rhs = comparison_rhs(k, ladder.alpha(k - 1), max_degree(ladder.graph()));
    return fresh_bound_record(name, k, ladder.new_vs_previous(k).fresh, rhs, tol, "spec(F_{k-1})");
}

CheckRecord check_induction_bound(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "induction_bound";
    if (!previous_embeds(ladder, k)) return vacuous_record(name, k, "needs 2 <= k <= ceil(n/2)");
    const double rhs = k * ladder.alpha(1) - static_cast<double>(k) * (k - 1);
    return fresh_bound_record(name, k, ladder.new_vs_previous(k).fresh, rhs, tol, "spec(F_{k-1})");
}

std::optional<LogDeltaBounds> log_delta_bounds(int k, double alpha, int max_deg) {
    if (k <= 2 || max_deg < 1 || max_deg > k - 2) return std::nullopt;
    double harmonic = 0.0;
    for (int r = max_deg; r <= k - 2; ++r) harmonic += 1.0 / r;
    const double kk = k;
    return LogDeltaBounds{
        kk * alpha - kk * max_deg * (1.0 + harmonic),
        kk * alpha - kk * max_deg * (1.0 + std::log((kk - 1) / max_deg)),
    };
}

std::vector<CheckRecord> check_log_delta_bound(SpectralLadder& ladder, int k, double tol) {
    const int delta = max_degree(ladder.graph());
    const std::vector<std::string> names = {"log_delta_bound_harmonic", "log_delta_bound_log", "log_delta_bound_ordering"};
    std::optional<LogDeltaBounds> b;
    if (!beyond_count(ladder, k)) b = log_delta_bounds(k, ladder.alpha(1), delta);
    if (!b) {
        std::vector<CheckRecord> out;
        for (const auto& nm : names)
            out.push_back(vacuous_record(nm, k, "needs k > 2, k <= n-1 and 1 <= Delta <= k-2 (Delta=" +
                                                    std::to_string(delta) + ")"));
        return out;
    }
    double lhs = ladder.alpha(k);
    std::string against = "alpha(F_k)";
    if (previous_embeds(ladder, k)) {
        const auto& fresh = ladder.new_vs_previous(k).fresh;
        if (!fresh.empty()) lhs = std::min(lhs, min_value(fresh));
        against += " and " + std::to_string(fresh.size()) + " new eigenvalue(s) against spec(F_{k-1})";
    }
    return {
        inequality_record(names[0], k, lhs, b->harmonic, tol, against),
        inequality_record(names[1], k, lhs, b->logarithmic, tol, against),
        inequality_record(names[2], k, b->harmonic, b->logarithmic, tol, "harmonic form >= logarithmic form"),
    };
}

// ---------------------------------------------------------------------------

CheckRecord check_vertex_deletion(const Graph& g, double tol) {
    const std::string name = "vertex_deletion_fiedler";
    if (g.order() < 3) return vacuous_record(name, 0, "needs n >= 3");
    const double a = algebraic_connectivity(g);
    double worst = std::numeric_limits<double>::infinity();
    int worst_x = 0;
    for (int x = 1; x <= g.order(); ++x) {
        const int removed[] = {x};
        const double ax = algebraic_connectivity(delete_vertices(g, removed).graph);
        if (ax < worst) {
            worst = ax;
            worst_x = x;
        }
    }
    return inequality_record(name, 0, worst, a - 1.0, tol, "min over x of alpha(G-x), attained at x=" + std::to_string(worst_x));
}

CheckRecord check_cartesian_product_alpha(const Graph& g1, const Graph& g2, double tol) {
    const double a1 = algebraic_connectivity(g1);
    const double a2 = algebraic_connectivity(g2);
    return equality_record("cartesian_product_fiedler", 0, algebraic_connectivity(cartesian_product(g1, g2)),
                           std::min(a1, a2), tol, "alpha(G1 x G2) = min{alpha(G1), alpha(G2)}");
}

// ---------------------------------------------------------------------------

CheckRecord check_token_structure(SpectralLadder& ladder, int k) {
    const auto& t = ladder.token(k);
    const int n = ladder.n();
    const double expected_edges = static_cast<double>(binomial(n - 2, k - 1)) * static_cast<double>(ladder.graph().size());
    const bool vertices_ok = static_cast<std::uint64_t>(t.graph.order()) == binomial(n, k);
    CheckRecord r = equality_record("token_structure", k, static_cast<double>(t.graph.size()), expected_edges, 0.0,
                                    "|V|=" + std::to_string(t.graph.order()) + " against C(n,k)=" +
                                        std::to_string(binomial(n, k)) + "; |E| against C(n-2,k-1)|E(G)|");
    if (!vertices_ok) r.status = Status::fail;
    return r;
}

CheckRecord check_token_degree_formula(SpectralLadder& ladder, int k) {
    const auto& t = ladder.token(k);
    std::size_t mismatches = 0;
    for (std::size_t r = 0; r < t.index.count(); ++r) {
        const auto subset = t.index.unrank(r);
        if (token_degree(t.base, subset) != t.graph.degree(static_cast<int>(r) + 1)) ++mismatches;
    }
    return equality_record("token_degree_formula", k, static_cast<double>(mismatches), 0.0, 0.0,
                           "vertices whose formula degree differs from the constructed degree");
}

CheckRecord check_spectral_inclusion(SpectralLadder& ladder, int k) {
    const int n = ladder.n();
    const double tol = ladder.limits().match_tol;
    if (k < 2 || k > n) return vacuous_record("spectral_inclusion", k, "needs 2 <= k <= n");
    if (2 * k <= n) {
        const auto m = spectral_inclusion_check(ladder.spectrum(k - 1), ladder.spectrum(k), tol);
        if (!m.ok) {
            CheckRecord r = inequality_record("spectral_inclusion", k, tol, m.failed_value, 0.0);
            r.lhs.reset();
            r.rhs = m.failed_value;
            r.margin.reset();
            r.status = Status::fail;
            r.note = "no partner in spec(F_k) for eigenvalue " + fmt(m.failed_value) + " of F_{k-1}";
            return r;
        }
        return inequality_record("spectral_inclusion", k, tol, m.max_gap, 0.0,
                                 "spec(F_{k-1}) within spec(F_k); " + std::to_string(m.unmatched.size()) +
                                     " new; lhs=tol, rhs=max matched gap");
    }
    // Beyond n/2 the chain reverses through F_k = F_{n-k}.
    const auto& here = ladder.spectrum(k);
    const auto same = spectral_inclusion_check(here, ladder.spectrum(n - k), tol);
    const auto down = spectral_inclusion_check(here, ladder.spectrum(k - 1), tol);
    const bool ok = same.ok && here.size() == ladder.spectrum(n - k).size() && down.ok;
    CheckRecord r = inequality_record("spectral_inclusion_complement", k, tol, std::max(same.max_gap, down.max_gap), 0.0,
                                      "k > n/2: spec(F_k) = spec(F_{n-k}) and spec(F_k) within spec(F_{k-1})");
    if (!ok) r.status = Status::fail;
    return r;
}

CheckRecord check_eigenvector_lift(SpectralLadder& ladder, int k, double residual_tol) {
    const auto& spec = ladder.spectrum(k);
    const BinomialMatrix b(ladder.n(), k);
    const SymMatrix l = laplacian(ladder.graph());
    double worst = 0.0;
    std::size_t lifted = 0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const auto w = project(b, spec.vector(j));
        if (norm2(w) <= 1e-6) continue;
        ++lifted;
        const auto lw = l.multiply(w);
        for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(lw[i] - spec.value(j) * w[i]));
    }
    return inequality_record("eigenvector_lift", k, residual_tol, worst, 0.0,
                             std::to_string(lifted) + " eigenvectors with B'v != 0; lhs=tol, rhs=max residual");
}

CheckRecord check_projection_vanishes(SpectralLadder& ladder, int k, double tol) {
    const std::string name = "projection_vanishes";
    if (beyond_count(ladder, k)) return vacuous_record(name, k, "needs 1 <= k <= n-1");
    const auto& cls = ladder.new_vs_base(k);
    if (cls.fresh.empty()) return vacuous_record(name, k, "no new eigenvalues against spec(G)");
    const BinomialMatrix b(ladder.n(), k);
    double worst = 0.0;
    for (const auto& f : cls.fresh) {
        if (f.representative.empty()) return vacuous_record(name, k, "missing representative");
        worst = std::max(worst, norm_inf(project(b, f.representative)));
    }
    return inequality_record(name, k, tol, worst, 0.0, "lhs=tol, rhs=max ||B'v||_inf over new representatives");
}

CheckRecord check_embedding_restriction(SpectralLadder& ladder, int k, bool against_previous, double tol) {
    const bool vs_base = !against_previous;
    const std::string name = vs_base ? "embedding_restriction" : "embedding_restriction_vs_previous";
    if (vs_base ? beyond_count(ladder, k) : !previous_embeds(ladder, k))
        return vacuous_record(name, k, vs_base ? "needs 1 <= k <= n-1" : "needs 2 <= k <= ceil(n/2)");
    const auto& cls = vs_base ? ladder.new_vs_base(k) : ladder.new_vs_previous(k);
    if (cls.fresh.empty()) return vacuous_record(name, k, "no new eigenvalues");

    // Column j of B_{k,|U|}'v is the sum of v over S_U.
    std::vector<BinomialMatrix> by_size;
    for (int s = 0; s <= k - 1; ++s) by_size.emplace_back(ladder.n(), k, s);
    double worst = 0.0;
    int worst_size = 0;
    double worst_value = 0.0;
    for (const auto& f : cls.fresh) {
        if (f.representative.empty()) {
            CheckRecord r = vacuous_record(name, k, "no representative for eigenvalue " + fmt(f.value));
            r.status = Status::fail;
            return r;
        }
        const double nrm = norm2(f.representative);
        for (int s = 0; s <= k - 1; ++s) {
            const double sum = norm_inf(by_size[s].transpose_times(f.representative)) / nrm;
            if (sum > worst) {
                worst = sum;
                worst_size = s;
                worst_value = f.value;
            }
        }
    }
    return inequality_record(name, k, tol, worst, 0.0,
                             std::to_string(cls.fresh.size()) + " representatives, all |U| <= k-1; lhs=tol, rhs=max |1'w_U|/||v|| (at |U|=" +
                                 std::to_string(worst_size) + ", eigenvalue " + fmt(worst_value) + ")");
}

CheckRecord check_induced_subgraphs(SpectralLadder& ladder, int k) {
    const auto& t = ladder.token(k);
    const int n = ladder.n();
    std::size_t checked = 0;
    std::size_t broken = 0;
    for (int s = 0; s <= k - 1; ++s) {
        if (n - s < 1) break;
        const KSubsetIndex fixed(n, s);
        for (std::size_t r = 0; r < fixed.count(); ++r) {
            const auto u = fixed.unrank(r);
            if (s == n) continue;
            ++checked;
            if (!induced_token_subgraph(t, u).isomorphic) ++broken;
        }
    }
    return equality_record("induced_subgraph_isomorphism", k, static_cast<double>(broken), 0.0, 0.0,
                           std::to_string(checked) + " fixed sets U; lhs counts failed isomorphisms");
}

}  // namespace tokspec
