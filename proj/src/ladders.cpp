#include "lsol/ladders.hpp"

#include <algorithm>
#include <cmath>

#include "lsol/bvp.hpp"
#include "lsol/error.hpp"

namespace lsol {

namespace {

// Same weight on the shorter interval [0, Rs]; tables are cut at Rs.
Problem shrink(const Problem& pr, double Rs) {
    Problem out = pr;
    out.R = Rs;
    if (auto t = std::get_if<TabulatedWeight>(&pr.weight.repr())) {
        TabulatedWeight c;
        for (std::size_t i = 0; i < t->xs.size() && t->xs[i] < Rs; ++i) {
            c.xs.push_back(t->xs[i]);
            c.ys.push_back(t->ys[i]);
        }
        c.xs.push_back(Rs);
        c.ys.push_back(pr.weight(Rs));
        out.weight = Weight(std::move(c));
    }
    return out;
}

int window_cells(const Problem& pr, double window_hi, int n) {
    return std::max(8, static_cast<int>(std::lround(n * window_hi / pr.R)));
}

GridFunction restrict_to(const GridFunction& g, double window_hi, int m) {
    GridFunction w = make_grid(0.0, window_hi, m, GridMeta::Ladder);
    for (int i = 0; i <= m; ++i) w.values[i] = g.at(w.x(i));
    return w;
}

// Signed extremes of b − a on a shared window mesh.
std::pair<double, double> diff_range(const GridFunction& a, const GridFunction& b) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = b.values[i] - a.values[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

double sup_abs(const GridFunction& g) {
    double s = 0.0;
    for (double v : g.values) s = std::max(s, std::abs(v));
    return s;
}

double sup_gap(const GridFunction& a, const GridFunction& b) {
    auto [lo, hi] = diff_range(a, b);
    return std::max(-lo, hi);
}

void check_args(const Problem& pr, double window_hi, double tol, const LadderOptions& opt) {
    if (!(window_hi > 0.0 && window_hi < pr.R)) throw Error(Errc::ValidationError, "need 0 < window_hi < R", "window_hi");
    if (!(tol > 0.0)) throw Error(Errc::ValidationError, "tolerance must be positive", "tol");
    if (!(opt.M0 > 0.0) || !(opt.M_factor > 1.0)) throw Error(Errc::ValidationError, "bad M schedule", "M0");
    if (!(opt.eps0 > 0.0 && opt.eps0 < 1.0)) throw Error(Errc::ValidationError, "eps0 must lie in (0, 1)", "eps0");
    if (opt.max_steps < 1) throw Error(Errc::ValidationError, "max_steps must be positive", "max_steps");
}

struct Rungs {
    GridFunction window, full;
    LadderReport report;
};

// Boundary value of the blow-up asymptote (2(p+1)/(a(p−1)²))^{1/(p−1)}·d^{−2/(p−1)} one cell from R.
// Past it the discrete θ_M keeps growing like h·log log M at every node.
double resolvable_M(const Problem& pr, int n) {
    double h = pr.R / n, p = pr.p;
    double c = std::pow(2.0 * (p + 1.0) / (pr.weight(pr.R) * (p - 1.0) * (p - 1.0)), 1.0 / (p - 1.0));
    return c * std::pow(h, -2.0 / (p - 1.0));
}

// M-ladder on the problem's own interval with n cells, stopping at M_cap.
Rungs m_ladder(const Problem& pr, double window_hi, double tol, const LadderOptions& opt, int n, double M_cap) {
    int m = window_cells(pr, window_hi, n);
    Rungs r;
    r.report.window_hi = window_hi;
    r.report.M_cap = M_cap;
    std::optional<GridFunction> prev;
    double M = opt.M0;
    for (int k = 0; k < opt.max_steps; ++k, M *= opt.M_factor) {
        if (k >= 2 && M > M_cap) {
            r.report.capped = true;
            break;
        }
        GridFunction th = solve_truncated_continuation(pr, M, n, prev);
        GridFunction w = restrict_to(th, window_hi, m);
        double sd = sup_abs(w);
        if (k > 0) {
            auto [lo, hi] = diff_range(r.window, w);
            if (lo < -10.0 * tol) throw Error(Errc::LadderStall, "M-ladder decreased on the window");
            sd = std::max(-lo, hi);
        }
        r.report.steps.push_back({M, sd});
        r.window = std::move(w);
        r.full = th;
        prev = std::move(th);
        if (k > 0 && sd <= tol) {
            r.report.converged = true;
            break;
        }
    }
    return r;
}

LadderResult finish(Rungs r, const Problem& pr, double window_hi, double tol, const LadderOptions& opt, int n) {
    if (opt.mesh_error && n / 2 >= 64) {
        LadderOptions half = opt;
        half.mesh_error = false;
        Rungs c = m_ladder(pr, window_hi, tol, half, n / 2, resolvable_M(pr, n / 2));
        GridFunction cw = restrict_to(c.full, window_hi, r.window.n);
        r.report.mesh_error = sup_gap(r.window, cw);
    }
    return {std::move(r.window), std::move(r.full), std::move(r.report)};
}

}  // namespace

LadderResult minimal_solution(const Problem& raw, double window_hi, double tol, const LadderOptions& opt) {
    Problem pr = validate_problem(raw);
    check_args(pr, window_hi, tol, opt);
    Rungs r = m_ladder(pr, window_hi, tol, opt, opt.n, resolvable_M(pr, opt.n));
    return finish(std::move(r), pr, window_hi, tol, opt, opt.n);
}

LadderResult maximal_solution(const Problem& raw, double window_hi, double tol, const LadderOptions& opt) {
    Problem pr = validate_problem(raw);
    check_args(pr, window_hi, tol, opt);
    LadderOptions inner = opt;
    inner.mesh_error = false;
    Rungs out;
    out.report.window_hi = window_hi;
    // One cap for every rung, so the ε-iterates differ only through the interval.
    double cap = resolvable_M(pr, opt.n), cap_half = resolvable_M(pr, opt.n / 2);
    out.report.M_cap = cap;
    Problem last;
    // Rungs whose interval does not leave room past the window are skipped.
    double eps = opt.eps0 * pr.R;
    while (eps > 0.5 * (pr.R - window_hi)) eps *= 0.5;
    for (int k = 0; k < opt.max_steps; ++k, eps *= 0.5) {
        last = shrink(pr, pr.R - eps);
        Rungs r = m_ladder(last, window_hi, 0.1 * tol, inner, opt.n, cap);
        out.report.capped = out.report.capped || r.report.capped;
        GridFunction w = restrict_to(r.full, window_hi, window_cells(pr, window_hi, opt.n));
        double sd = sup_abs(w);
        if (k > 0) {
            auto [lo, hi] = diff_range(out.window, w);
            if (hi > 10.0 * tol) throw Error(Errc::LadderStall, "eps-ladder increased on the window");
            sd = std::max(-lo, hi);
        }
        out.report.steps.push_back({eps, sd});
        out.window = std::move(w);
        out.full = std::move(r.full);
        if (k > 0 && sd <= tol) {
            out.report.converged = true;
            break;
        }
    }
    if (opt.mesh_error && opt.n / 2 >= 64) {
        Rungs c = m_ladder(last, window_hi, 0.1 * tol, inner, opt.n / 2, cap_half);
        out.report.mesh_error = sup_gap(out.window, restrict_to(c.full, window_hi, out.window.n));
    }
    return {std::move(out.window), std::move(out.full), std::move(out.report)};
}

UniquenessReport uniqueness_check(const Problem& raw, double window_hi, double tol, const LadderOptions& opt) {
    Problem pr = validate_problem(raw);
    UniquenessReport u;
    u.a_non_increasing = pr.weight.non_increasing(pr.R);
    u.lambda_nonnegative = pr.lambda >= 0.0;
    u.bc_covered = pr.bc.is_dirichlet() || pr.bc.is_neumann() || pr.bc.robin_beta() < 0.0;
    u.hypotheses = u.a_non_increasing && u.lambda_nonnegative && u.bc_covered;
    u.minimal = minimal_solution(pr, window_hi, tol, opt);
    u.maximal = maximal_solution(pr, window_hi, tol, opt);
    u.gap = sup_gap(u.minimal.window, u.maximal.window);
    u.tolerance = std::max(tol, 5.0 * std::max(u.minimal.report.mesh_error, u.maximal.report.mesh_error));
    u.agree = u.gap <= u.tolerance;
    return u;
}

SupersolutionReport scaled_supersolution_check(const GridFunction& L, const Problem& raw, double eps) {
    Problem pr = validate_problem(raw);
    if (pr.lambda < 0.0) throw Error(Errc::HypothesisViolation, "scaling argument needs lambda >= 0", "lambda");
    if (!pr.weight.non_increasing(pr.R))
        throw Error(Errc::HypothesisViolation, "scaling argument needs a non-increasing weight", "weight");
    if (!(eps > 0.0 && eps < 0.5 * pr.R)) throw Error(Errc::ValidationError, "eps must lie in (0, R/2)", "eps");
    if (L.lo != 0.0 || L.hi > pr.R) throw Error(Errc::MeshMismatch, "Lmin must live on [0, b] with b <= R", "Lmin");

    SupersolutionReport s;
    s.rho = pr.R / (pr.R - eps);
    s.gamma = 2.0 / (pr.p - 1.0);
    double c = std::pow(s.rho, s.gamma);
    // Node j of L̂ sits at x_j = x_j(Lmin)/ρ, so L̂ needs no interpolation.
    s.hat = make_grid(0.0, L.hi / s.rho, L.n, GridMeta::Ladder);
    for (int j = 0; j <= L.n; ++j) s.hat.values[j] = c * L.values[j];
    double h = s.hat.h();
    s.min_residual = INFINITY;
    for (int j = 0; j <= L.n; ++j) {
        double a = pr.weight(s.hat.x(j));
        s.scale = std::max(s.scale, 1.0 + a * std::pow(std::max(s.hat.values[j], 0.0), pr.p));
        if (j == 0 || j == L.n) continue;
        const auto& v = s.hat.values;
        double r = -(v[j - 1] - 2.0 * v[j] + v[j + 1]) / (h * h) - pr.lambda * v[j] +
                   a * std::pow(std::max(v[j], 0.0), pr.p);
        s.min_residual = std::min(s.min_residual, r);
    }
    if (!pr.bc.is_dirichlet() && pr.bc.robin_beta() < 0.0)
        s.boundary_slack = pr.bc.robin_beta() * c * L.values[0] * (1.0 - s.rho);
    return s;
}

}  // namespace lsol
