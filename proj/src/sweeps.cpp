#include "lsol/sweeps.hpp"

#include <cmath>
#include <limits>

#include "lsol/error.hpp"
#include "lsol/shoot.hpp"

namespace lsol {

namespace {

struct Profile {
    double init = 0.0;
    std::vector<double> values;
};

Profile profile_at(const Problem& pr, const std::vector<double>& xs, const SweepOptions& opt) {
    Profile out;
    if (pr.weight.is_constant()) {
        LargeSolution s = solve_init(pr);
        out.init = pr.bc.is_dirichlet() ? s.v0 : s.u0;
        for (double x : xs) out.values.push_back(eval_profile(s, x));
        return out;
    }
    LadderOptions lo = opt.ladder;
    lo.mesh_error = false;
    LadderResult r = minimal_solution(pr, opt.window_hi * pr.R, opt.tol, lo);
    const GridFunction& g = r.window;
    const auto& v = g.values;
    // One-sided second-order slope at 0 under Dirichlet.
    out.init = pr.bc.is_dirichlet() ? (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * g.h()) : v[0];
    for (double x : xs) out.values.push_back(g.at(x));
    return out;
}

void check_xs(const Problem& pr, const std::vector<double>& xs, double window_hi) {
    for (double x : xs)
        if (!(x >= 0.0 && x <= window_hi * pr.R * (1.0 + 1e-12)))
            throw Error(Errc::OutOfDomain, "sample point outside [0, window_hi*R]", "xs");
}

double ratio(const Problem& pr, double x, double L) {
    if (!(pr.lambda > 0.0) || !(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    double e = 1.0 / (pr.p - 1.0);
    return std::pow(pr.lambda, -e) * L * std::pow(pr.weight(x), e);
}

}  // namespace

SweepTable lambda_sweep(const Problem& templ, const std::vector<double>& lambdas, const std::vector<double>& xs,
                        const SweepOptions& opt) {
    Problem base = validate_problem(templ);
    check_xs(base, xs, opt.window_hi);
    for (std::size_t k = 1; k < lambdas.size(); ++k)
        if (!(lambdas[k] > lambdas[k - 1])) throw Error(Errc::ValidationError, "lambdas must increase", "lambdas");
    SweepTable t;
    t.templ = base;
    t.xs = xs;
    for (double lam : lambdas) {
        Problem pr = base;
        pr.lambda = lam;
        Profile pf = profile_at(pr, xs, opt);
        SweepRow row{lam, pf.init, pf.values, {}};
        for (std::size_t j = 0; j < xs.size(); ++j) row.ratios.push_back(ratio(pr, xs[j], pf.values[j]));
        t.rows.push_back(std::move(row));
    }
    t.increasing.assign(xs.size(), true);
    for (std::size_t k = 1; k < t.rows.size(); ++k)
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (!(t.rows[k].values[j] > t.rows[k - 1].values[j] - 1e-9)) t.increasing[j] = false;
    return t;
}

double asymptotic_ratio(const Problem& raw, double x, const SweepOptions& opt) {
    Problem pr = validate_problem(raw);
    if (!(pr.lambda > 0.0)) throw Error(Errc::ValidationError, "asymptotic ratio needs lambda > 0", "lambda");
    if (!(x > 0.0 && x <= opt.window_hi * pr.R * (1.0 + 1e-12)))
        throw Error(Errc::OutOfDomain, "ratio is taken at interior points of the window", "x");
    Profile pf = profile_at(pr, {x}, opt);
    return ratio(pr, x, pf.values[0]);
}

}  // namespace lsol
