#include "lsol/phase.hpp"

#include <cmath>

#include "lsol/error.hpp"
#include "lsol/roots.hpp"

namespace lsol {

double energy(PhasePoint pt, double lambda, double a, double p) {
    return 0.5 * pt.v * pt.v + potential(pt.u, lambda, a, p);
}

double potential(double u, double lambda, double a, double p) {
    double m = std::abs(u);
    return 0.5 * lambda * m * m - a * std::pow(m, p + 1.0) / (p + 1.0);
}

double pow1pm1(double t, double q) { return std::expm1(q * std::log1p(t)); }

double pow1pm1_lin2(double t, double q) {
    if (std::abs(t) >= 0.2) return (std::pow(1.0 + t, q) - 1.0 - q * t) / (t * t);
    double c = 0.5 * q * (q - 1.0), tk = 1.0, sum = 0.0;
    for (int k = 2; k < 400; ++k) {
        double term = c * tk;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        c *= (q - k) / (k + 1.0);
        tk *= t;
    }
    return sum;
}

double pow1pm1_lin(double t, double q) {
    if (std::abs(t) >= 0.2) return std::pow(1.0 + t, q) - 1.0 - q * t;
    return t * t * pow1pm1_lin2(t, q);
}

namespace {

// Bisection for an increasing f on (lo, hi) with 0 < lo; geometric midpoints
// while the bracket spans decades.
template <class F>
double bisect_log(F&& f, double lo, double hi) {
    for (int i = 0; i < 600; ++i) {
        double mid = (hi > 4.0 * lo) ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> robin_line_crossings(double lambda, double a, double p, double beta) {
    if (!(lambda > 0.0) || beta == 0.0) throw Error(Errc::NoBracket, "line crossings need lambda > 0 and beta != 0");
    double us = std::pow(lambda / a, 1.0 / (p - 1.0));
    double phis = potential(us, lambda, a, p);
    double b2 = beta * beta;
    if (b2 * us * us < 1e-14 * std::abs(phis)) return {us, us};
    auto f = [&](double u) { return 0.5 * (b2 + lambda) * u * u - a * std::pow(u, p + 1.0) / (p + 1.0) - phis; };
    double uc = std::pow((b2 + lambda) / a, 1.0 / (p - 1.0));
    double um = bisect(f, 0.0, us, 1e-16);
    double hi = 2.0 * uc;
    for (int i = 0; f(hi) >= 0.0; ++i) {
        if (i > 2000 || !std::isfinite(hi)) throw Error(Errc::NoBracket, "no upper crossing of the Robin line");
        hi *= 2.0;
    }
    double up = bisect(f, uc, hi, 1e-16);
    return {um, up};
}

Thresholds thresholds(double lambda, double a, double p, const BoundaryOp& bc) {
    Thresholds th;
    th.init_kind = bc.is_dirichlet() ? InitKind::DirichletSlope : InitKind::Position;
    double q = 1.0 / (p - 1.0);
    if (lambda > 0.0) {
        th.u_star = std::pow(lambda / a, q);
        th.v_star = std::sqrt(lambda * (p - 1.0) / (p + 1.0)) * *th.u_star;
    }
    double beta = bc.is_dirichlet() ? 0.0 : bc.robin_beta();
    double b2 = beta * beta;
    if (!bc.is_dirichlet() && beta != 0.0 && lambda > 0.0) {
        th.u_c = std::pow((b2 + lambda) / a, q);
        auto [um, up] = robin_line_crossings(lambda, a, p, beta);
        th.u_minus = um;
        th.u_plus = up;
    }
    if (!bc.is_dirichlet() && beta < 0.0 && lambda <= 0.0)
        th.u_tilde = (b2 + lambda > 0.0) ? std::pow((p + 1.0) * (b2 + lambda) / (2.0 * a), q) : 0.0;

    if (bc.is_dirichlet()) {
        th.init_min = lambda > 0.0 ? *th.v_star : 0.0;
    } else if (beta == 0.0) {
        th.init_min = lambda > 0.0 ? *th.u_star : 0.0;
    } else if (beta > 0.0) {
        th.init_min = lambda > 0.0 ? *th.u_minus : 0.0;
    } else {
        th.init_min = lambda > 0.0 ? *th.u_plus : *th.u_tilde;
    }
    return th;
}

Init Init::from_value(double v, const Thresholds& th) {
    return {v, th.init_min > 0.0 ? v / th.init_min - 1.0 : 0.0};
}

Init Init::from_excess(double e, const Thresholds& th) { return {th.init_min * (1.0 + e), e}; }

PhaseData::PhaseData(double lambda_, double a_, double p_) : lambda(lambda_), a(a_), p(p_) {
    if (lambda > 0.0) {
        u_star = std::pow(lambda / a, 1.0 / (p - 1.0));
        phi_star = potential(u_star, lambda, a, p);
    }
}

double PhaseData::gap(double t) const {
    return lambda * u_star * u_star * t * t * (pow1pm1_lin2(t, p + 1.0) / (p + 1.0) - 0.5);
}

double robin_level_offset(const PhaseData& ph, double beta, double ur, double e) {
    double b2 = beta * beta;
    return 0.5 * (b2 + ph.lambda) * ur * ur * e * (2.0 + e) -
           ph.a * std::pow(ur, ph.p + 1.0) / (ph.p + 1.0) * pow1pm1(e, ph.p + 1.0);
}

TurningPoint turning_point(const PhaseData& ph, double beta, const Thresholds& th, Init init) {
    if (!(beta < 0.0)) throw Error(Errc::NoRoot, "turning point exists only for beta < 0");
    double u0 = init.value;
    if (th.init_min > 0.0 ? !(init.excess > 0.0) : !(u0 > 0.0))
        throw Error(Errc::NoRoot, "u0 at or below the admissible threshold");
    if (ph.lambda > 0.0) {
        double dE = robin_level_offset(ph, beta, *th.u_plus, init.excess);
        if (!(dE < 0.0)) throw Error(Errc::NoRoot, "energy level does not cross below the saddle");
        double hi = u0 / ph.u_star - 1.0;
        double d1 = bisect_log([&](double d) { return ph.gap(d) + dE; }, 1e-300, hi);
        return {ph.u_star * (1.0 + d1), d1};
    }
    double b2 = beta * beta, lam = ph.lambda, p = ph.p;
    double E0 = (b2 + lam > 0.0) ? -0.5 * u0 * u0 * (b2 + lam) * pow1pm1(init.excess, p - 1.0)
                                 : energy({u0, beta * u0}, lam, ph.a, p);
    if (!(E0 < 0.0)) throw Error(Errc::NoRoot, "energy level does not reach below the origin");
    // φ decreasing on (0, ∞) for λ ≤ 0.
    double u1 = bisect_log([&](double u) { return E0 - ph.phi(u); }, u0 * 1e-300, u0);
    return {u1, 0.0};
}

double u1_of_u0(double u0, double lambda, double a, double p, double beta) {
    auto th = thresholds(lambda, a, p, BoundaryOp::robin(beta));
    return turning_point(PhaseData(lambda, a, p), beta, th, Init::from_value(u0, th)).u1;
}

}  // namespace lsol
