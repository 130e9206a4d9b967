#include "tokspec/report.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"

namespace tokspec {

std::vector<Fixture> fixture_set() {
    std::vector<Fixture> out;
    auto add = [&](std::string id) {
        Graph g = parse_family(id);
        out.push_back({std::move(id), std::move(g)});
    };
    for (int n = 3; n <= 8; ++n) add("path:" + std::to_string(n));
    for (int n = 4; n <= 9; ++n) add("cycle:" + std::to_string(n));
    for (int n = 3; n <= 6; ++n) add("complete:" + std::to_string(n));
    add("petersen");
    add("hamming:2,2");
    add("hamming:2,3");
    add("star:5");
    std::mt19937_64 stream(42);
    for (int i = 0; i < 20; ++i) {
        const int n = 5 + static_cast<int>(stream() % 5);
        const int seed = static_cast<int>(stream() % 1'000'000'000);
        add("random:" + std::to_string(n) + "," + std::to_string(seed));
    }
    return out;
}

bool Report::has_failure() const {
    return std::any_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == Status::fail; });
}

namespace {

// Keeps the record with the smallest margin; failures win over passes.
void keep_worst(std::optional<CheckRecord>& worst, CheckRecord r, std::size_t vector_index) {
    r.note += "; vector " + std::to_string(vector_index);
    if (!worst) {
        worst = std::move(r);
        return;
    }
    if (r.status == Status::vacuous) return;
    const double m = r.margin.value_or(0.0);
    const double w = worst->margin.value_or(0.0);
    if (worst->status == Status::vacuous || m < w) worst = std::move(r);
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t size) {
    std::vector<double> v(size);
    for (double& x : v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

std::vector<CheckRecord> random_vector_checks(SpectralLadder& ladder, int k, const VerifyOptions& options) {
    const Graph& g = ladder.graph();
    const Graph& token = ladder.token(k).graph;
    const std::size_t size = token.order();
    std::mt19937_64 rng(options.seed + 1000 * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(g.order()));

    std::optional<CheckRecord> identity, recursion, qs;
    const int count = std::max(1, options.random_vectors);
    for (int i = 0; i < count; ++i) {
        // Vector 0 is the constant vector, where the Q-S bound is tightest on complete graphs.
        const auto v = i == 0 ? std::vector<double>(size, 1.0) : random_vector(rng, size);
        keep_worst(identity, check_rayleigh_identity(g, k, token, v, options.identity_tol), i);
        keep_worst(recursion, check_pqrs_recursion(g, k, v, options.identity_tol), i);
        keep_worst(qs, check_qs_bound(g, k, v, options.identity_tol), i);
    }
    const std::string over = " (worst of " + std::to_string(count) + " vectors)";
    for (auto* r : {&identity, &recursion, &qs}) (*r)->note += over;
    return {*identity, *recursion, *qs};
}

}  // namespace

std::vector<CheckRecord> run_battery(SpectralLadder& ladder, const std::string& id, int k, const VerifyOptions& options) {
    std::vector<CheckRecord> out;
    out.push_back(check_token_structure(ladder, k));
    out.push_back(check_token_degree_formula(ladder, k));
    out.push_back(check_induced_subgraphs(ladder, k));
    out.push_back(check_spectral_inclusion(ladder, k));
    out.push_back(check_eigenvector_lift(ladder, k, options.lift_tol));
    out.push_back(check_projection_vanishes(ladder, k, options.lift_tol));
    out.push_back(check_embedding_restriction(ladder, k, false, options.lift_tol));
    out.push_back(check_embedding_restriction(ladder, k, true, options.lift_tol));
    out.push_back(check_alpha_equality_oracle(ladder, k, options.equality_tol));
    out.push_back(check_new_eigenvalue_bound(ladder, k, options.bound_tol));
    out.push_back(check_new_eigenvalue_bound_vs_previous(ladder, k, options.bound_tol));
    out.push_back(check_conditional_alpha_bound(ladder, k, options.bound_tol));
    out.push_back(check_corollary_alpha_geq_k(ladder, k, options.equality_tol));
    out.push_back(check_min_degree_condition(ladder, k, options.equality_tol));
    out.push_back(check_comparison_bound(ladder, k, options.bound_tol));
    out.push_back(check_comparison_bound_new_eigenvalues(ladder, k, options.bound_tol));
    out.push_back(check_induction_bound(ladder, k, options.bound_tol));
    for (auto& r : check_log_delta_bound(ladder, k, options.bound_tol)) out.push_back(std::move(r));
    for (auto& r : random_vector_checks(ladder, k, options)) out.push_back(std::move(r));

    for (auto& r : out) r.graph = id;
    std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
    return out;
}

void verify_graph(const std::string& id, const Graph& g, int k_lo, int k_hi, const VerifyOptions& options,
                  Report& out) {
    SpectralLadder ladder(g, options.limits);
    CheckRecord deletion = check_vertex_deletion(g, options.equality_tol);
    deletion.graph = id;
    out.records.push_back(std::move(deletion));

    for (int k = k_lo; k <= k_hi; ++k) {
        auto records = run_battery(ladder, id, k, options);
        out.records.insert(out.records.end(), records.begin(), records.end());

        LevelSummary s;
        s.graph = id;
        s.k = k;
        s.alpha = g.order() >= 2 ? ladder.alpha(1) : 0.0;
        if (ladder.spectrum(k).size() >= 2) s.alpha_token = ladder.alpha(k);
        if (k < g.order()) {
            for (const auto& f : ladder.new_vs_base(k).fresh) s.new_eigenvalues.push_back(f.value);
        }
        out.summaries.push_back(std::move(s));
    }
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& x) {
    if (!x) return nullptr;
    return *x;
}

std::string number(const std::optional<double>& x) {
    if (!x) return {};
    std::ostringstream os;
    os << std::setprecision(17) << *x;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    auto& records = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        records.push_back({
            {"graph", r.graph},
            {"k", r.k},
            {"check", r.check},
            {"status", std::string(to_string(r.status))},
            {"lhs", optional_number(r.lhs)},
            {"rhs", optional_number(r.rhs)},
            {"margin", optional_number(r.margin)},
            {"note", r.note},
        });
    }
    auto& summaries = doc["summaries"] = nlohmann::ordered_json::array();
    for (const auto& s : report.summaries) {
        summaries.push_back({
            {"graph", s.graph},
            {"k", s.k},
            {"alpha", s.alpha},
            {"alpha_token", optional_number(s.alpha_token)},
            {"new_eigenvalues", s.new_eigenvalues},
        });
    }
    doc["failures"] = std::count_if(report.records.begin(), report.records.end(),
                                    [](const CheckRecord& r) { return r.status == Status::fail; });
    return doc.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
    std::ostringstream os;
    os << "graph,k,check,status,lhs,rhs,margin,note\n";
    for (const auto& r : report.records) {
        os << csv_field(r.graph) << ',' << r.k << ',' << r.check << ',' << to_string(r.status) << ','
           << number(r.lhs) << ',' << number(r.rhs) << ',' << number(r.margin) << ',' << csv_field(r.note) << '\n';
    }
    return os.str();
}

std::string to_text(const Report& report) {
    std::ostringstream os;
    std::size_t fails = 0, passes = 0, vacuous = 0;
    for (const auto& r : report.records) {
        switch (r.status) {
            case Status::pass: ++passes; break;
            case Status::vacuous: ++vacuous; break;
            case Status::fail: ++fails; break;
        }
        os << std::left << std::setw(22) << r.graph << " k=" << std::setw(2) << r.k << ' ' << std::setw(36) << r.check
           << ' ' << std::setw(7) << to_string(r.status);
        if (r.margin) os << " margin=" << std::setprecision(6) << *r.margin;
        if (!r.note.empty()) os << "  " << r.note;
        os << '\n';
    }
    os << passes << " pass, " << vacuous << " vacuous, " << fails << " FAIL\n";
    return os.str();
}

}  // namespace tokspec
