#include "lsol/shoot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsol/error.hpp"
#include "lsol/quad.hpp"
#include "lsol/roots.hpp"

namespace lsol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProfileRelTol = 1e-11;
constexpr double kRootTol = 1e-13;  // on log(init) and log(offset)

double seg_integral(const Segment& s, double o_lo, double o_hi) {
    Integrand ig;
    ig.f = s.rate;
    ig.lo = o_lo;
    if (std::isinf(o_hi)) {
        ig.kind = DomainKind::SemiInfinite;
    } else {
        ig.kind = DomainKind::FiniteSingularLeft;
        ig.hi = o_hi;
    }
    return integrate(ig, kProfileRelTol).value;
}

// Brent on an increasing g(z) after geometric bracket search from z0.
template <class G>
double solve_increasing(G&& g, double z0, double step, double z_min, double z_max) {
    double za = z0, ga = g(za);
    double zb = za, gb = ga;
    if (ga < 0.0) {
        while (gb < 0.0) {
            za = zb;
            ga = gb;
            zb = std::min(zb + step, z_max);
            gb = g(zb);
            if (zb >= z_max && gb < 0.0) throw Error(Errc::BracketFailure, "no upper bracket");
        }
    } else {
        while (ga > 0.0) {
            zb = za;
            gb = ga;
            za = std::max(za - step, z_min);
            ga = g(za);
            if (za <= z_min && ga > 0.0) throw Error(Errc::BracketFailure, "no lower bracket");
        }
    }
    return brent(g, za, zb, ga, gb, kRootTol, 0.0);
}

// Offset o on segment s at which the segment reaches abscissa x.
double invert_segment(const Segment& s, double x) {
    double d_head = std::abs(x - s.x_anchor);
    double d_tail = std::abs(s.x_far - x);
    if (d_head == 0.0) return 0.0;
    double z_max = std::isinf(s.o_max) ? 690.0 : std::log(s.o_max);
    double z_min = -690.0;
    double z0 = std::min(0.0, z_max - std::log(2.0));
    if (d_head <= d_tail) {
        auto g = [&](double z) { return seg_integral(s, 0.0, std::exp(z)) - d_head; };
        return std::exp(solve_increasing(g, z0, std::log(8.0), z_min, z_max));
    }
    if (d_tail <= 0.0) return s.o_max;
    auto g = [&](double z) { return d_tail - seg_integral(s, std::exp(z), s.o_max); };
    return std::exp(solve_increasing(g, z0, std::log(8.0), z_min, z_max));
}

}  // namespace

LargeSolution solve_init(const Problem& raw) {
    Problem pr = validate_problem(raw);
    if (!pr.weight.is_constant()) throw Error(Errc::ValidationError, "shooting needs a constant weight", "weight");
    double a = pr.weight.constant_value(), lam = pr.lambda, p = pr.p, R = pr.R;
    Thresholds th = thresholds(lam, a, p, pr.bc);

    Init init;
    if (th.init_min > 0.0) {
        // Decreasing in the excess; the root may sit far below double resolution of init itself.
        auto g = [&](double z) { return R - blowup_time(lam, a, p, pr.bc, Init::from_excess(std::exp(z), th)).value; };
        const double z_floor = std::log(1e-280), dz = std::log(1e-10);
        double z_lo = -std::log(1e10), g_lo = g(z_lo);
        double z_hi = z_lo, g_hi = g_lo;
        while (g_lo > 0.0) {
            z_hi = z_lo;
            g_hi = g_lo;
            z_lo += dz;
            if (z_lo < z_floor) throw Error(Errc::BracketFailure, "no lower bracket for the boundary datum");
            g_lo = g(z_lo);
        }
        if (!(g_hi > 0.0)) {
            z_hi = 0.0;
            g_hi = g(z_hi);
            while (!(g_hi > 0.0)) {
                z_lo = z_hi;
                g_lo = g_hi;
                z_hi += std::log(4.0);
                if (z_hi > 690.0) throw Error(Errc::BracketFailure, "no upper bracket for the boundary datum");
                g_hi = g(z_hi);
            }
        }
        init = Init::from_excess(std::exp(brent(g, z_lo, z_hi, g_lo, g_hi, kRootTol, 0.0)), th);
    } else {
        auto g = [&](double z) { return R - blowup_time(lam, a, p, pr.bc, Init{std::exp(z), 0.0}).value; };
        init = Init{std::exp(solve_increasing(g, 0.0, std::log(4.0), -690.0, 690.0)), 0.0};
    }

    BlowupTime bt = blowup_time(lam, a, p, pr.bc, init);
    if (!bt.quad.converged && bt.quad.abs_err_est > 1e-9 * R)
        throw Error(Errc::QuadratureFailure, "blow-up time quadrature did not converge");

    auto orbit = std::make_shared<Orbit>(build_orbit(lam, a, p, pr.bc, init));
    LargeSolution sol;
    sol.problem = pr;
    sol.thresholds = th;
    sol.init = init;
    sol.u0 = orbit->u0;
    sol.v0 = orbit->v0;
    sol.time = orbit->time;
    if (!pr.bc.is_dirichlet() && pr.bc.robin_beta() < 0.0) {
        sol.x1 = orbit->x1;
        sol.branches.push_back({0.0, sol.x1, sol.u0, orbit->u1, -1});
        sol.branches.push_back({sol.x1, R, orbit->u1, kInf, +1});
    } else {
        sol.branches.push_back({0.0, R, sol.u0, kInf, +1});
    }
    sol.orbit = std::move(orbit);
    return sol;
}

double eval_profile(const LargeSolution& sol, double x) {
    if (!(x >= 0.0) || !(x < sol.problem.R)) throw Error(Errc::OutOfDomain, "profile evaluated outside [0, R)", "x");
    const auto& segs = sol.orbit->segments;
    const Segment* seg = &segs.back();
    for (const auto& s : segs) {
        if (x <= s.x_hi()) {
            seg = &s;
            break;
        }
    }
    // Between the computed blow-up time and R (a ~1e-9·R sliver) the tail is clamped.
    double xc = std::min(x, seg->x_hi() * (1.0 - 1e-15));
    return seg->state(invert_segment(*seg, xc));
}

const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::ReachedCap: return "reached-cap";
        case Terminal::ReachedEnd: return "reached-end";
        case Terminal::StepUnderflow: return "step-underflow";
    }
    return "?";
}

double Trajectory::u_at(double x) const {
    if (samples.empty()) throw Error(Errc::OutOfDomain, "empty trajectory", "x");
    if (x < samples.front().x || x > samples.back().x)
        throw Error(Errc::OutOfDomain, "x outside the integrated range", "x");
    auto it = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const TrajSample& s, double v) { return s.x < v; });
    if (it == samples.begin()) return it->u;
    const TrajSample& A = *(it - 1);
    const TrajSample& B = *it;
    double h = B.x - A.x, t = (x - A.x) / h;
    double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
    double h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    double h01 = 10 * t3 - 15 * t4 + 6 * t5;
    double h11 = -4 * t3 + 7 * t4 - 3 * t5;
    double h21 = 0.5 * (t3 - 2 * t4 + t5);
    return h00 * A.u + h10 * h * A.v + h20 * h * h * A.dv + h01 * B.u + h11 * h * B.v + h21 * h * h * B.dv;
}

Trajectory integrate_ode(PhasePoint start, double lambda, const Weight& weight, double p, double x_max, double u_cap,
                         double tol) {
    if (!(u_cap > start.u)) throw Error(Errc::ValidationError, "u_cap must exceed the starting value", "u_cap");
    auto acc = [&](double x, double u) { return weight(x) * std::pow(std::abs(u), p - 1.0) * u - lambda * u; };

    // Dormand–Prince 5(4) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Trajectory tr;
    double x = 0.0, u = start.u, v = start.v;
    double ku = v, kv = acc(x, u);
    tr.samples.push_back({x, u, v, kv});
    double h = std::min(1e-3, 0.01 * x_max);
    for (long step = 0; step < 5'000'000; ++step) {
        if (x >= x_max) {
            tr.terminal = Terminal::ReachedEnd;
            return tr;
        }
        if (u >= u_cap) {
            tr.terminal = Terminal::ReachedCap;
            return tr;
        }
        h = std::min(h, x_max - x);
        if (h <= 1e-15 * (1.0 + std::abs(x))) {
            tr.terminal = Terminal::StepUnderflow;
            return tr;
        }
        double u1 = ku, v1 = kv;
        double u2 = v + h * a21 * v1;
        double v2 = acc(x + c2 * h, u + h * a21 * u1);
        double u3 = v + h * (a31 * v1 + a32 * v2);
        double v3 = acc(x + c3 * h, u + h * (a31 * u1 + a32 * u2));
        double u4 = v + h * (a41 * v1 + a42 * v2 + a43 * v3);
        double v4 = acc(x + c4 * h, u + h * (a41 * u1 + a42 * u2 + a43 * u3));
        double u5 = v + h * (a51 * v1 + a52 * v2 + a53 * v3 + a54 * v4);
        double v5 = acc(x + c5 * h, u + h * (a51 * u1 + a52 * u2 + a53 * u3 + a54 * u4));
        double u6 = v + h * (a61 * v1 + a62 * v2 + a63 * v3 + a64 * v4 + a65 * v5);
        double v6 = acc(x + h, u + h * (a61 * u1 + a62 * u2 + a63 * u3 + a64 * u4 + a65 * u5));
        double un = u + h * (b1 * u1 + b3 * u3 + b4 * u4 + b5 * u5 + b6 * u6);
        double vn = v + h * (b1 * v1 + b3 * v3 + b4 * v4 + b5 * v5 + b6 * v6);
        double u7 = vn, v7 = acc(x + h, un);
        double eu = h * (e1 * u1 + e3 * u3 + e4 * u4 + e5 * u5 + e6 * u6 + e7 * u7);
        double ev = h * (e1 * v1 + e3 * v3 + e4 * v4 + e5 * v5 + e6 * v6 + e7 * v7);
        double err = std::max(std::abs(eu) / (tol + tol * std::max(std::abs(u), std::abs(un))),
                              std::abs(ev) / (tol + tol * std::max(std::abs(v), std::abs(vn))));
        if (!std::isfinite(err)) {
            h *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            x = (h == x_max - x) ? x_max : x + h;
            u = un;
            v = vn;
            ku = u7;
            kv = v7;
            tr.samples.push_back({x, u, v, kv});
        }
        double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
    }
    tr.terminal = Terminal::StepUnderflow;
    return tr;
}

double blowup_location_estimate(const Trajectory& traj, double a_at_R, double p) {
    if (traj.samples.empty() || traj.terminal != Terminal::ReachedCap)
        throw Error(Errc::NotBlownUp, "trajectory did not reach the cap");
    const auto& first = traj.samples.front();
    const auto& last = traj.samples.back();
    if (last.u < 1e3 * (first.u + 1.0)) throw Error(Errc::NotBlownUp, "trajectory end is not in the blow-up regime");
    double g = 2.0 / (p - 1.0);
    double C = std::pow(g * (g + 1.0) / a_at_R, 1.0 / (p - 1.0));
    return last.x + std::pow(C / last.u, 0.5 * (p - 1.0));
}

double TwoSidedSolution::operator()(double x) const {
    if (!(x > c) || !(x < d)) throw Error(Errc::OutOfDomain, "two-sided profile evaluated outside (c, d)", "x");
    return eval_profile(half, std::abs(x - mid()));
}

TwoSidedSolution solve_two_sided(double c, double d, double lambda, double a, double p) {
    if (!(c < d)) throw Error(Errc::BadDomain, "need c < d", "c");
    Problem pr;
    pr.lambda = lambda;
    pr.p = p;
    pr.weight = Weight::constant(a);
    pr.R = 0.5 * (d - c);
    pr.bc = BoundaryOp::neumann();
    if (!(a > 0.0)) throw Error(Errc::NonPositiveWeight, "weight must be positive", "a");
    return {c, d, solve_init(pr)};
}

}  // namespace lsol
