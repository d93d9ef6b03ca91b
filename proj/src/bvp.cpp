#include "lsol/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsol/error.hpp"
#include "lsol/spectral.hpp"

namespace lsol {

namespace {

constexpr double kFloor = 1e-14;
constexpr int kMaxNewton = 60;

double pw(double u, double p) { return std::pow(std::abs(u), p - 1.0) * u; }

// Discrete operator −D²u − λu + coef·a·|u|^{p−1}u on a uniform mesh, value `right` at the last node.
struct Discrete {
    double lo = 0.0, hi = 1.0, h = 1.0;
    int n = 0;
    bool dirichlet = false;
    double beta = 0.0;
    double lambda = 0.0, p = 3.0, coef = 1.0, right = 0.0;
    std::vector<double> a;

    Discrete(const Problem& pr, double lo_, double hi_, int n_, double right_, double coef_)
        : lo(lo_), hi(hi_), h((hi_ - lo_) / n_), n(n_), dirichlet(pr.bc.is_dirichlet()),
          beta(pr.bc.is_dirichlet() ? 0.0 : pr.bc.robin_beta()), lambda(pr.lambda), p(pr.p), coef(coef_),
          right(right_) {
        a.resize(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) a[i] = pr.weight(i == n ? hi : lo + i * h);
    }

    int first() const { return dirichlet ? 1 : 0; }

    double row(const std::vector<double>& u, int i) const {
        double ih2 = 1.0 / (h * h);
        if (i == 0) {
            if (dirichlet) return u[0] * ih2;
            return (2.0 * u[0] - 2.0 * u[1] + 2.0 * h * beta * u[0]) * ih2 - lambda * u[0] + coef * a[0] * pw(u[0], p);
        }
        return (-u[i - 1] + 2.0 * u[i] - u[i + 1]) * ih2 - lambda * u[i] + coef * a[i] * pw(u[i], p);
    }

    double scale(const std::vector<double>& u) const {
        double s = 0.0;
        for (int i = 0; i <= n; ++i) s = std::max(s, std::abs(coef) * a[i] * std::pow(std::abs(u[i]), p));
        return 1.0 + s;
    }

    double max_row(const std::vector<double>& u) const {
        double r = 0.0;
        for (int i = 0; i < n; ++i) r = std::max(r, std::abs(row(u, i)));
        return r;
    }

    // Every row within a few ulps of its own term magnitudes.
    bool at_rounding_floor(const std::vector<double>& u) const {
        double ih2 = 1.0 / (h * h);
        for (int i = first(); i < n; ++i) {
            double mag = (4.0 * std::abs(u[i]) + std::abs(u[i + 1]) + (i > 0 ? std::abs(u[i - 1]) : 0.0)) * ih2 +
                         std::abs(lambda * u[i]) + std::abs(coef) * a[i] * std::pow(std::abs(u[i]), p);
            if (std::abs(row(u, i)) > 64.0 * std::numeric_limits<double>::epsilon() * mag) return false;
        }
        return true;
    }

    double norm2(const std::vector<double>& u) const {
        double r = 0.0;
        for (int i = first(); i < n; ++i) {
            double f = row(u, i);
            r += f * f;
        }
        return std::sqrt(r);
    }

    std::vector<double> initial(std::vector<double> u) const {
        u.resize(static_cast<std::size_t>(n) + 1);
        if (dirichlet) u[0] = 0.0;
        u[n] = right;
        return u;
    }
};

struct NewtonOutcome {
    std::vector<double> u;
    bool converged = false;
};

NewtonOutcome newton(const Discrete& D, std::vector<double> u, double tol) {
    int n = D.n, i0 = D.first();
    std::size_t m = static_cast<std::size_t>(n - i0);
    double ih2 = 1.0 / (D.h * D.h);
    for (int i = i0; i < n; ++i) u[i] = std::max(u[i], kFloor);
    double step = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= kMaxNewton; ++it) {
        bool small = D.max_row(u) / D.scale(u) <= tol || D.at_rounding_floor(u);
        if (small && step <= 1e-12) return {std::move(u), true};
        if (it == kMaxNewton) break;

        std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0), rhs(m);
        for (int i = i0; i < n; ++i) {
            std::size_t k = static_cast<std::size_t>(i - i0);
            double dnl = -D.lambda + D.coef * D.a[i] * D.p * std::pow(std::abs(u[i]), D.p - 1.0);
            if (i == 0) {
                diag[k] = (2.0 + 2.0 * D.h * D.beta) * ih2 + dnl;
                if (k + 1 < m) sup[k] = -2.0 * ih2;
            } else {
                diag[k] = 2.0 * ih2 + dnl;
                if (k > 0) sub[k] = -ih2;
                if (k + 1 < m) sup[k] = -ih2;
            }
            rhs[k] = -D.row(u, i);
        }
        if (!solve_tridiagonal(sub, diag, sup, rhs)) break;

        // Armijo backtracking on the Euclidean residual.
        double f0 = D.norm2(u);
        double t = 1.0;
        std::vector<double> trial = u;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int i = i0; i < n; ++i) trial[i] = std::max(u[i] + t * rhs[static_cast<std::size_t>(i - i0)], kFloor);
            if (D.norm2(trial) <= (1.0 - 1e-4 * t) * f0) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // At the rounding floor no step decreases the residual; accept it if the plain test already holds.
            if (D.max_row(u) / D.scale(u) <= tol || D.at_rounding_floor(u)) return {std::move(u), true};
            break;
        }
        step = 0.0;
        for (int i = i0; i < n; ++i) step = std::max(step, std::abs(trial[i] - u[i]) / (1.0 + std::abs(u[i])));
        u.swap(trial);
    }
    return {std::move(u), false};
}

// Linear-implicit sub/supersolution sweep on a Discrete operator.
std::vector<double> monotone_sweep(const Discrete& D, std::vector<double> w, double K, double tol) {
    int n = D.n, i0 = D.first();
    std::size_t m = static_cast<std::size_t>(n - i0);
    double ih2 = 1.0 / (D.h * D.h);
    std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0);
    for (int i = i0; i < n; ++i) {
        std::size_t k = static_cast<std::size_t>(i - i0);
        if (i == 0) {
            diag[k] = (2.0 + 2.0 * D.h * D.beta) * ih2 + K;
            if (k + 1 < m) sup[k] = -2.0 * ih2;
        } else {
            diag[k] = 2.0 * ih2 + K;
            if (k > 0) sub[k] = -ih2;
            if (k + 1 < m) sup[k] = -ih2;
        }
    }
    double prev_diff = 0.0;
    for (long it = 0; it < 2'000'000; ++it) {
        std::vector<double> rhs(m);
        for (int i = i0; i < n; ++i) {
            double wi = std::max(w[i], 0.0);
            rhs[static_cast<std::size_t>(i - i0)] = D.lambda * wi - D.coef * D.a[i] * pw(wi, D.p) + K * wi;
        }
        rhs[m - 1] += D.right * ih2;
        if (!solve_tridiagonal(sub, diag, sup, rhs)) throw Error(Errc::NewtonDivergence, "monotone iteration breakdown");
        double diff = 0.0, wmax = 0.0;
        for (int i = i0; i < n; ++i) {
            double v = rhs[static_cast<std::size_t>(i - i0)];
            diff = std::max(diff, std::abs(v - w[i]));
            wmax = std::max(wmax, std::abs(v));
            w[i] = v;
        }
        // Distance to the limit is about diff·ρ/(1 − ρ) for a linear contraction ρ.
        double rho = prev_diff > 0.0 ? diff / prev_diff : 1.0;
        bool settled = rho < 1.0 && diff * rho / (1.0 - rho) <= tol;
        if (diff <= tol && (settled || diff <= 16.0 * std::numeric_limits<double>::epsilon() * wmax)) return w;
        prev_diff = diff;
    }
    throw Error(Errc::NewtonDivergence, "monotone iteration did not settle");
}

double shift_constant(const Discrete& D, const std::vector<double>& super) {
    double K = 0.0;
    for (int i = 0; i <= D.n; ++i)
        K = std::max(K, D.coef * D.a[i] * D.p * std::pow(std::max(super[i], 0.0), D.p - 1.0) - D.lambda);
    return K;
}

void check_mesh(int n, int min_n) {
    if (n < min_n) throw Error(Errc::BadMesh, "mesh needs n >= " + std::to_string(min_n), "n");
}

GridFunction to_grid(const Discrete& D, std::vector<double> u, GridMeta meta) {
    GridFunction g = make_grid(D.lo, D.hi, D.n, meta);
    g.values = std::move(u);
    return g;
}

// Constant supersolution of the truncated problem, including the Robin row for β < 0.
double constant_super(const Discrete& D, double M) {
    double al = *std::min_element(D.a.begin(), D.a.end());
    double need = std::max(D.lambda, 0.0) + (D.beta < 0.0 ? -2.0 * D.beta / D.h : 0.0);
    return std::max(M, std::pow(need / (D.coef * al), 1.0 / (D.p - 1.0))) * (1.0 + 1e-12);
}

}  // namespace

GridFunction solve_truncated(const Problem& raw, double M, int n, const std::optional<GridFunction>& guess) {
    Problem pr = validate_problem(raw);
    if (!(M > 0.0) || !std::isfinite(M)) throw Error(Errc::ValidationError, "boundary value M must be positive", "M");
    check_mesh(n, 64);
    Discrete D(pr, 0.0, pr.R, n, M, 1.0);
    std::vector<double> u0(static_cast<std::size_t>(n) + 1);
    if (guess) {
        if (guess->n != n || guess->lo != 0.0 || guess->hi != pr.R)
            throw Error(Errc::MeshMismatch, "guess lives on a different mesh", "guess");
        u0 = guess->values;
    } else {
        double s = 1e-2 * std::min(1.0, M);
        for (int i = 0; i <= n; ++i) u0[i] = s + (M - s) * i / static_cast<double>(n);
    }
    u0 = D.initial(std::move(u0));
    NewtonOutcome r = newton(D, std::move(u0), 1e-11 * (1.0 + M));
    if (!r.converged) throw Error(Errc::NewtonDivergence, "Newton iteration did not converge");
    return to_grid(D, std::move(r.u), GridMeta::ThetaM);
}

GridFunction solve_truncated_continuation(const Problem& raw, double M, int n, const std::optional<GridFunction>& start) {
    Problem pr = validate_problem(raw);
    std::optional<GridFunction> g = start;
    double M0 = 10.0;
    if (start) {
        if (start->n != n || start->lo != 0.0 || start->hi != pr.R)
            throw Error(Errc::MeshMismatch, "start lives on a different mesh", "start");
        M0 = 4.0 * start->values.back();
    }
    auto step = [&](double Mk) {
        try {
            g = solve_truncated(pr, Mk, n, g);
        } catch (const Error& e) {
            if (e.code() != Errc::NewtonDivergence) throw;
            Discrete D(pr, 0.0, pr.R, n, Mk, 1.0);
            GridFunction lo = make_grid(0.0, pr.R, n, GridMeta::ThetaM), hi = lo;
            lo.values.back() = Mk;
            std::fill(hi.values.begin(), hi.values.end(), constant_super(D, Mk));
            if (pr.bc.is_dirichlet()) hi.values.front() = 0.0;
            hi.values.back() = Mk;
            GridFunction mono = monotone_iterate(pr, Mk, lo, hi, n, MonotoneStart::Super, 1e-9);
            g = solve_truncated(pr, Mk, n, mono);
        }
    };
    for (double Mk = M0; Mk < M; Mk *= 4.0) step(Mk);
    step(M);
    return *g;
}

GridFunction solve_logistic(const Problem& raw, int n) {
    Problem pr = validate_problem(raw);
    check_mesh(n, 64);
    EigenResult eig = principal_eigenvalue(0.0, pr.bc, BoundaryOp::dirichlet(), 0.0, pr.R, n);
    if (!(pr.lambda > eig.sigma1))
        throw Error(Errc::SubcriticalLambda, "lambda does not exceed the principal eigenvalue", "lambda");
    Discrete D(pr, 0.0, pr.R, n, 0.0, pr.lambda);
    auto [al, am] = weight_bounds(pr.weight, pr.R);
    double amp = std::pow(1.0 / am, 1.0 / (pr.p - 1.0));
    std::vector<double> u(eig.eigenfunction.values);
    for (double& v : u) v *= amp;
    NewtonOutcome r = newton(D, D.initial(u), 1e-11);
    bool positive = r.converged;
    if (positive) {
        for (int i = D.first(); i < n; ++i) positive = positive && r.u[i] > 1e-13;
    }
    if (!positive) {
        // Ordered pair εφ ≤ q ≤ (1/a_ℓ)^{1/(p−1)} for β ≥ 0; monotone sweep then Newton polish.
        double eps = std::pow((1.0 - eig.sigma1 / pr.lambda) / am, 1.0 / (pr.p - 1.0)) * 0.5;
        std::vector<double> start(eig.eigenfunction.values);
        for (double& v : start) v *= eps;
        std::vector<double> w = monotone_sweep(D, D.initial(start), shift_constant(D, std::vector<double>(
                                                                          n + 1, std::pow(1.0 / al, 1.0 / (pr.p - 1.0)))),
                                               1e-10);
        r = newton(D, std::move(w), 1e-11);
        if (!r.converged) throw Error(Errc::NewtonDivergence, "logistic Newton iteration did not converge");
    }
    return to_grid(D, std::move(r.u), GridMeta::Logistic);
}

GridFunction monotone_iterate(const Problem& raw, double M, const GridFunction& sub, const GridFunction& super, int n,
                              MonotoneStart start, double tol) {
    Problem pr = validate_problem(raw);
    check_mesh(n, 8);
    if (sub.n != n || super.n != n || sub.hi != pr.R || super.hi != pr.R || sub.lo != 0.0 || super.lo != 0.0)
        throw Error(Errc::MeshMismatch, "sub/super meshes differ from the requested mesh");
    Discrete D(pr, 0.0, pr.R, n, M, 1.0);
    for (int i = 0; i <= n; ++i)
        if (sub.values[i] > super.values[i]) throw Error(Errc::NotOrdered, "sub exceeds super at node " + std::to_string(i));
    // Discrete sub/super inequalities, relative to each row's magnitude.
    auto row_scale = [&](const std::vector<double>& u, int i) {
        double ih2 = 1.0 / (D.h * D.h);
        double s = 4.0 * std::abs(u[i]) * ih2 + std::abs(D.lambda * u[i]) + D.a[i] * std::pow(std::abs(u[i]), D.p);
        if (i + 1 <= n) s += std::abs(u[i + 1]) * ih2;
        return 1.0 + s;
    };
    std::vector<double> lo = sub.values, hi = super.values;
    if (lo[n] > M || hi[n] < M || (D.dirichlet && (lo[0] > 0.0 || hi[0] < 0.0)))
        throw Error(Errc::NotSubSuper, "boundary values are not bracketed");
    for (int i = D.first(); i < n; ++i) {
        if (D.row(lo, i) > 1e-9 * row_scale(lo, i)) throw Error(Errc::NotSubSuper, "sub violates its inequality at node " + std::to_string(i));
        if (D.row(hi, i) < -1e-9 * row_scale(hi, i)) throw Error(Errc::NotSubSuper, "super violates its inequality at node " + std::to_string(i));
    }
    double K = shift_constant(D, hi);
    std::vector<double> w = D.initial(start == MonotoneStart::Sub ? lo : hi);
    return to_grid(D, monotone_sweep(D, std::move(w), K, tol), GridMeta::ThetaM);
}

double residual(const GridFunction& g, const Problem& pr) {
    Discrete D(pr, g.lo, g.hi, g.n, g.values.back(), 1.0);
    return D.max_row(g.values) / D.scale(g.values);
}

}  // namespace lsol
