#include "tokspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tokspec {

std::vector<double> SymMatrix::multiply(std::span<const double> v) const {
    if (v.size() != order_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<double> out(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        const double* row = data_.data() + i * (i + 1) / 2;
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            acc += row[j] * v[j];
            out[j] += row[j] * v[i];
        }
        out[i] += acc + row[i] * v[i];
    }
    return out;
}

Spectrum::Spectrum(std::vector<double> values, std::vector<double> vectors, double residual)
    : values_(std::move(values)), vectors_(std::move(vectors)), residual_(residual) {
    if (vectors_.size() != values_.size() * values_.size())
        throw std::invalid_argument("spectrum: eigenvector storage does not match eigenvalue count");
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SymMatrix laplacian(const Graph& g) {
    SymMatrix l(static_cast<std::size_t>(g.order()));
    for (int v = 1; v <= g.order(); ++v) l.set(v - 1, v - 1, g.degree(v));
    for (const auto& e : g.edges()) l.set(e.u - 1, e.v - 1, -1.0);
    return l;
}

namespace {

constexpr double kSignEps = 1e-12;

void canonicalize_sign(std::span<double> v) {
    for (double x : v) {
        if (std::abs(x) > kSignEps) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace

Spectrum eigen_sym(const SymMatrix& m, const EigenOptions& options) {
    const std::size_t n = m.order();
    std::vector<double> a(n * n);
    double frob2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = m(i, j);
            frob2 += a[i * n + j] * a[i * n + j];
        }
    std::vector<double> v(n * n, 0.0);  // row-major, column j accumulates eigenvector j
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
        return std::sqrt(2.0 * s);
    };
    const double target = options.off_diagonal_tol * std::max(1.0, std::sqrt(frob2));

    int sweep = 0;
    double off = off_norm();
    while (off > target) {
        if (++sweep > options.max_sweeps) {
            throw ConvergenceError("Jacobi eigensolver did not converge after " + std::to_string(options.max_sweeps) +
                                       " sweeps; off-diagonal norm " + std::to_string(off),
                                   off);
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                // Negligible against both diagonal entries: drop it.
                if (sweep > 4 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
                    std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
                    a[p * n + q] = a[q * n + p] = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r * n + p];
                    const double arq = a[r * n + q];
                    const double np = arp - s * (arq + tau * arp);
                    const double nq = arq + s * (arp - tau * arq);
                    a[r * n + p] = a[p * n + r] = np;
                    a[r * n + q] = a[q * n + r] = nq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        off = off_norm();
    }

    // Columns to contiguous vectors with canonical sign.
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) cols[j][i] = v[i * n + j];
        canonicalize_sign(cols[j]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
    // Within a cluster of numerically equal eigenvalues, order by eigenvector.
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && a[order[hi] * n + order[hi]] - a[order[hi - 1] * n + order[hi - 1]] <= options.tie_tol) ++hi;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](std::size_t x, std::size_t y) { return cols[x] > cols[y]; });
        lo = hi;
    }

    std::vector<double> values(n);
    std::vector<double> vectors(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a[order[j] * n + order[j]];
        std::copy(cols[order[j]].begin(), cols[order[j]].end(), vectors.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
    // Reordering a cluster by eigenvector can leave its values out of order in the last bits.
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && std::abs(values[hi] - values[hi - 1]) <= options.tie_tol) ++hi;
        std::sort(values.begin() + static_cast<std::ptrdiff_t>(lo), values.begin() + static_cast<std::ptrdiff_t>(hi));
        lo = hi;
    }

    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::span<const double> x(vectors.data() + j * n, n);
        auto mx = m.multiply(x);
        for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(mx[i] - values[j] * x[i]));
    }
    return Spectrum(std::move(values), std::move(vectors), residual);
}

Spectrum laplacian_spectrum(const Graph& g, std::size_t dense_cap) {
    if (static_cast<std::size_t>(g.order()) > dense_cap)
        throw std::length_error("dense eigensolve of order " + std::to_string(g.order()) + " exceeds the cap of " +
                                std::to_string(dense_cap));
    return eigen_sym(laplacian(g));
}

double algebraic_connectivity(const Spectrum& spectrum) {
    if (spectrum.size() < 2) throw std::invalid_argument("algebraic connectivity needs at least two eigenvalues");
    return spectrum.value(1);
}

double algebraic_connectivity(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("algebraic connectivity needs n >= 2");
    if (!is_connected(g)) return 0.0;
    return algebraic_connectivity(laplacian_spectrum(g));
}

double rayleigh_quotient(const Graph& g, std::span<const double> v) {
    if (v.size() != static_cast<std::size_t>(g.order())) throw std::invalid_argument("rayleigh quotient: length mismatch");
    const double denom = dot(v, v);
    if (denom == 0.0) throw std::invalid_argument("rayleigh quotient of the zero vector");
    double num = 0.0;
    for (const auto& e : g.edges()) {
        const double d = v[e.u - 1] - v[e.v - 1];
        num += d * d;
    }
    return num / denom;
}

double rayleigh_quotient(const SymMatrix& m, std::span<const double> v) {
    const double denom = dot(v, v);
    if (denom == 0.0) throw std::invalid_argument("rayleigh quotient of the zero vector");
    return dot(v, m.multiply(v)) / denom;
}

bool is_embedding(std::span<const double> v, double tol) {
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    return std::abs(sum) <= tol * norm2(v);
}

namespace {

std::vector<double> apply_laplacian(const Graph& g, std::span<const double> x) {
    std::vector<double> y(x.size());
    for (int v = 1; v <= g.order(); ++v) {
        double acc = g.degree(v) * x[v - 1];
        for (int w : g.neighbors(v)) acc -= x[w - 1];
        y[v - 1] = acc;
    }
    return y;
}

void remove_mean(std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (double& e : x) e -= mean;
}

void normalize(std::vector<double>& x) {
    const double nrm = norm2(x);
    for (double& e : x) e /= nrm;
}

// Deterministic start vector with no special structure.
std::vector<double> start_vector(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + 2.718281828 * static_cast<double>(i + 1));
    remove_mean(x);
    normalize(x);
    return x;
}

// Solves L y = b for b orthogonal to the constant vector, G connected.
std::vector<double> solve_on_complement(const Graph& g, const std::vector<double>& b, double tol, int max_iterations) {
    std::vector<double> y(b.size(), 0.0);
    std::vector<double> r = b;
    std::vector<double> p = r;
    double rr = dot(r, r);
    const double stop = tol * tol * std::max(1e-300, rr);
    for (int it = 0; it < max_iterations && rr > stop; ++it) {
        auto lp = apply_laplacian(g, p);
        const double alpha = rr / dot(p, lp);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] += alpha * p[i];
            r[i] -= alpha * lp[i];
        }
        remove_mean(r);
        const double rr_next = dot(r, r);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + (rr_next / rr) * p[i];
        rr = rr_next;
    }
    remove_mean(y);
    return y;
}

}  // namespace

ExtremalEigenvalues extremal_eigenvalues(const Graph& g, const ExtremalOptions& options) {
    const std::size_t n = static_cast<std::size_t>(g.order());
    if (n < 2) throw std::invalid_argument("extremal eigenvalues need n >= 2");
    ExtremalEigenvalues out;
    if (g.size() == 0) return out;

    auto x = start_vector(n);
    double rho = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
        auto y = apply_laplacian(g, x);
        const double next = dot(x, y);
        normalize(y);
        x = std::move(y);
        if (it > 0 && std::abs(next - rho) <= options.tol * std::max(1.0, next)) {
            rho = next;
            break;
        }
        rho = next;
    }
    out.largest = rho;

    if (!is_connected(g)) return out;
    x = start_vector(n);
    rho = rayleigh_quotient(g, x);
    for (int it = 0; it < options.max_iterations; ++it) {
        auto y = solve_on_complement(g, x, 1e-13, 10 * static_cast<int>(n) + 100);
        normalize(y);
        const double next = rayleigh_quotient(g, y);
        x = std::move(y);
        const bool done = std::abs(next - rho) <= options.tol * std::max(1.0, next);
        rho = next;
        if (done) break;
    }
    out.algebraic_connectivity = rho;
    return out;
}

}  // namespace tokspec
