#include "lsol/blowup.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "lsol/error.hpp"

namespace lsol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond this relative offset the radicands switch to a factored form that cannot produce ∞ − ∞.
constexpr double kLarge = 1e6;
// Data within 10% of the threshold get the saddle split.
constexpr double kNear = 0.1;

double E(double t, double p) { return pow1pm1(t, p + 1.0); }

// Radicand of the time integral in τ = s/b − 1 for the orbit through (b, βb), β ≥ 0,
// so that v² = b²·G(τ). The saddle form rebuilds v² from the level offset dE = E − φ*
// and is used when the orbit passes just above the saddle.
struct RobinRad {
    PhaseData ph;
    double b = 0.0, beta2 = 0.0;
    double Db = 0.0;  // (b/u*)^{p−1} − 1 when λ > 0
    double cb = 0.0;  // 2a b^{p−1}/(p+1)
    bool saddle = false;
    double dE = 0.0, db = 0.0;  // saddle form: level offset and b/u* − 1

    RobinRad(const PhaseData& ph_, double b_, double beta2_, double db_) : ph(ph_), b(b_), beta2(beta2_), db(db_) {
        cb = 2.0 * ph.a * std::pow(b, ph.p - 1.0) / (ph.p + 1.0);
        if (ph.lambda > 0.0) Db = pow1pm1(db, ph.p - 1.0);
    }

    double p() const { return ph.p; }

    // G / θ^{p+1} at θ = 1 + τ; only used for large θ.
    double B(double theta) const {
        double q = std::pow(theta, -(p() + 1.0));
        return cb * (1.0 - q) - ph.lambda * (std::pow(theta, 1.0 - p()) - q) + beta2 * q;
    }

    double G_saddle_t(double t) const { return (2.0 * dE + 2.0 * ph.gap(t)) / (b * b); }

    double G(double tau) const {
        double lam = ph.lambda, pp = p();
        if (saddle) return G_saddle_t(db + tau * (1.0 + db));
        if (lam > 0.0)
            return lam * tau * tau * (2.0 / (pp + 1.0) * pow1pm1_lin2(tau, pp + 1.0) - 1.0) +
                   2.0 * lam / (pp + 1.0) * Db * E(tau, pp) + beta2;
        return cb * E(tau, pp) - lam * tau * (2.0 + tau) + beta2;
    }

    // G/τ for the turning-point case (β = 0), finite as τ → 0.
    double G_over_tau(double tau) const {
        double lam = ph.lambda, pp = p();
        if (lam > 0.0)
            return lam * tau * (2.0 / (pp + 1.0) * pow1pm1_lin2(tau, pp + 1.0) - 1.0) +
                   2.0 * lam / (pp + 1.0) * Db * (E(tau, pp) / tau);
        return cb * E(tau, pp) / tau - lam * (2.0 + tau);
    }

    bool singular() const { return beta2 == 0.0 && !saddle; }

    // dτ-rate 1/√G.
    double rate(double tau) const {
        if (tau > kLarge) {
            double th = 1.0 + tau;
            return std::pow(th, -0.5 * (p() + 1.0)) / std::sqrt(B(th));
        }
        if (singular()) return 1.0 / (std::sqrt(tau) * std::sqrt(G_over_tau(tau)));
        return 1.0 / std::sqrt(G(tau));
    }

    // ds-rate in the saddle variable t = s/u* − 1, i.e. (u*/b)/√G.
    double rate_t(double t) const {
        double scale = ph.u_star / b;
        if (t > kLarge) {
            double th = (1.0 + t) * scale;
            return scale * std::pow(th, -0.5 * (p() + 1.0)) / std::sqrt(B(th));
        }
        return scale / std::sqrt(G_saddle_t(t));
    }

    // G^{-3/2} times the derivative kernels; `kernel` selects E(τ) (init) or τ(2+τ)/2 (λ).
    double deriv_integrand(double tau, bool lambda_kernel) const {
        double pp = p();
        if (tau > kLarge) {
            double th = 1.0 + tau;
            double b32 = std::pow(B(th), -1.5);
            if (lambda_kernel) return 0.5 * (1.0 - 1.0 / (th * th)) * std::pow(th, 2.0 - 1.5 * (pp + 1.0)) * b32;
            return (1.0 - std::pow(th, -(pp + 1.0))) * std::pow(th, -0.5 * (pp + 1.0)) * b32;
        }
        if (singular()) {
            double g = std::pow(G_over_tau(tau), -1.5) / std::sqrt(tau);
            return lambda_kernel ? 0.5 * (2.0 + tau) * g : E(tau, pp) / tau * g;
        }
        double g = std::pow(G(tau), -1.5);
        return lambda_kernel ? 0.5 * tau * (2.0 + tau) * g : E(tau, pp) * g;
    }
};

// Dirichlet radicand v² as a function of s, or of t = s/u* − 1 when λ > 0.
struct DirRad {
    PhaseData ph;
    double v0 = 0.0, dE = 0.0;

    double scale() const { return ph.lambda > 0.0 ? ph.u_star : 1.0; }

    double B(double s) const {
        double pp = ph.p;
        return 2.0 * ph.a / (pp + 1.0) - ph.lambda * std::pow(s, 1.0 - pp) + v0 * v0 * std::pow(s, -(pp + 1.0));
    }
    double V_s(double s) const {
        if (ph.lambda > 0.0) return 2.0 * dE + 2.0 * ph.gap(s / ph.u_star - 1.0);
        return v0 * v0 + s * s * (-ph.lambda + 2.0 * ph.a / (ph.p + 1.0) * std::pow(s, ph.p - 1.0));
    }
    double rate_s(double s) const {
        if (s > kLarge * scale()) return std::pow(s, -0.5 * (ph.p + 1.0)) / std::sqrt(B(s));
        return 1.0 / std::sqrt(V_s(s));
    }
    double rate_t(double t) const {
        if (t > kLarge) return ph.u_star * rate_s(ph.u_star * (1.0 + t));
        return ph.u_star / std::sqrt(2.0 * dE + 2.0 * ph.gap(t));
    }
    double deriv_integrand(double s, bool lambda_kernel) const {
        if (s > kLarge * scale()) {
            double pp = ph.p, b32 = std::pow(B(s), -1.5);
            if (lambda_kernel) return 0.5 * std::pow(s, 2.0 - 1.5 * (pp + 1.0)) * b32;
            return -v0 * std::pow(s, -1.5 * (pp + 1.0)) * b32;
        }
        double g = std::pow(V_s(s), -1.5);
        return lambda_kernel ? 0.5 * s * s * g : -v0 * g;
    }
};

void check_admissible(const Thresholds& th, Init init) {
    // Above a positive threshold the excess carries the information; the value may round to init_min.
    bool ok = th.init_min > 0.0 ? init.excess > 0.0 : init.value > 0.0;
    if (!std::isfinite(init.value) || !ok)
        throw Error(Errc::BelowThreshold, "initial datum at or below the admissible threshold");
}

void accumulate(QuadResult& acc, const QuadResult& q) {
    acc.value += q.value;
    acc.abs_err_est += q.abs_err_est;
    acc.evaluations += q.evaluations;
    acc.converged = acc.converged && q.converged;
}

QuadResult seg_integral(const std::function<double(double)>& rate, double o_max, double rel_tol) {
    Integrand ig;
    ig.f = rate;
    ig.lo = 0.0;
    if (std::isinf(o_max)) {
        ig.kind = DomainKind::SemiInfinite;
    } else {
        ig.kind = DomainKind::FiniteSingularLeft;
        ig.hi = o_max;
    }
    return integrate(ig, rel_tol);
}

struct Built {
    Orbit orbit;
    QuadResult quad;
    Regime regime;
};

// Robin/Neumann set-up for an orbit leaving (b, βb) with β ≥ 0.
RobinRad make_robin(const PhaseData& ph, const Thresholds& th, double beta, Init init, bool& near_split) {
    double b = init.value;
    double db = ph.lambda > 0.0 ? (beta == 0.0 ? init.excess : b / ph.u_star - 1.0) : 0.0;
    RobinRad r(ph, b, beta * beta, db);
    near_split = false;
    if (ph.lambda > 0.0 && beta > 0.0 && b < ph.u_star) {
        r.saddle = true;
        r.dE = robin_level_offset(ph, beta, *th.u_minus, init.excess);
        near_split = init.excess <= kNear;
    }
    return r;
}

Built build(double lambda, double a, double p, const BoundaryOp& bc, Init init, double rel_tol) {
    PhaseData ph(lambda, a, p);
    Built out;
    Orbit& orb = out.orbit;
    orb.th = thresholds(lambda, a, p, bc);
    check_admissible(orb.th, init);
    orb.init = init;
    out.quad.converged = true;
    auto add_seg = [&](double x_anchor, int dir, double o_max, std::function<double(double)> rate,
                       std::function<double(double)> state) -> Segment& {
        Segment s;
        s.x_anchor = x_anchor;
        s.dir = dir;
        s.o_max = o_max;
        s.rate = std::move(rate);
        s.state = std::move(state);
        orb.segments.push_back(std::move(s));
        return orb.segments.back();
    };

    if (bc.is_dirichlet()) {
        out.regime = Regime::Dirichlet;
        orb.u0 = 0.0;
        orb.v0 = init.value;
        DirRad d{ph, init.value, 0.0};
        if (lambda > 0.0) {
            double vs = *orb.th.v_star;
            d.dE = 0.5 * vs * vs * init.excess * (2.0 + init.excess);
        }
        if (lambda > 0.0 && init.excess <= kNear) {
            double us = ph.u_star;
            auto ra = [d](double o) { return d.rate_t(-o); };
            auto rd = [d](double o) { return d.rate_t(o); };
            QuadResult qa = seg_integral(ra, 1.0, rel_tol);
            QuadResult qd = seg_integral(rd, kInf, rel_tol);
            accumulate(out.quad, qa);
            accumulate(out.quad, qd);
            add_seg(qa.value, -1, 1.0, ra, [us](double o) { return us * (1.0 - o); }).x_far = 0.0;
            add_seg(qa.value, +1, kInf, rd, [us](double o) { return us * (1.0 + o); }).x_far = qa.value + qd.value;
        } else {
            auto r = [d](double o) { return d.rate_s(o); };
            QuadResult q = seg_integral(r, kInf, rel_tol);
            accumulate(out.quad, q);
            add_seg(0.0, +1, kInf, r, [](double o) { return o; }).x_far = q.value;
        }
        orb.time = out.quad.value;
        return out;
    }

    double beta = bc.robin_beta();
    orb.u0 = init.value;
    orb.v0 = beta * init.value;
    if (beta >= 0.0) {
        out.regime = beta == 0.0 ? Regime::Neumann : Regime::RobinPos;
        bool near_split = false;
        RobinRad r = make_robin(ph, orb.th, beta, init, near_split);
        double b = init.value;
        if (near_split) {
            double us = ph.u_star;
            auto ra = [r](double o) { return r.rate_t(-o); };
            auto rd = [r](double o) { return r.rate_t(o); };
            QuadResult qa = seg_integral(ra, -r.db, rel_tol);
            QuadResult qd = seg_integral(rd, kInf, rel_tol);
            accumulate(out.quad, qa);
            accumulate(out.quad, qd);
            add_seg(qa.value, -1, -r.db, ra, [us](double o) { return us * (1.0 - o); }).x_far = 0.0;
            add_seg(qa.value, +1, kInf, rd, [us](double o) { return us * (1.0 + o); }).x_far = qa.value + qd.value;
        } else {
            auto rt = [r](double o) { return r.rate(o); };
            QuadResult q = seg_integral(rt, kInf, rel_tol);
            accumulate(out.quad, q);
            add_seg(0.0, +1, kInf, rt, [b](double o) { return b * (1.0 + o); }).x_far = q.value;
        }
        orb.time = out.quad.value;
        return out;
    }

    // β < 0: down to the turning point, then up; time = 2·partial + time of the R(−β) orbit from u0.
    out.regime = Regime::RobinNegComposite;
    TurningPoint tp = turning_point(ph, beta, orb.th, init);
    orb.u1 = tp.u1;
    RobinRad r1(ph, tp.u1, 0.0, tp.delta1);
    double u1 = tp.u1;
    double o0 = init.value / u1 - 1.0;
    auto rt = [r1](double o) { return r1.rate(o); };
    QuadResult qp = seg_integral(rt, o0, rel_tol);
    orb.x1 = qp.value;
    RobinRad r0(ph, init.value, beta * beta, lambda > 0.0 ? init.value / ph.u_star - 1.0 : 0.0);
    QuadResult qr = seg_integral([r0](double o) { return r0.rate(o); }, kInf, rel_tol);
    accumulate(out.quad, qp);
    accumulate(out.quad, qp);
    accumulate(out.quad, qr);
    orb.time = 2.0 * qp.value + qr.value;
    add_seg(orb.x1, -1, o0, rt, [u1](double o) { return u1 * (1.0 + o); }).x_far = 0.0;
    add_seg(orb.x1, +1, kInf, rt, [u1](double o) { return u1 * (1.0 + o); }).x_far = orb.time;
    return out;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Dirichlet: return "dirichlet";
        case Regime::Neumann: return "neumann";
        case Regime::RobinPos: return "robin_pos";
        case Regime::RobinNegComposite: return "robin_neg_composite";
    }
    return "?";
}

Orbit build_orbit(double lambda, double a, double p, const BoundaryOp& bc, Init init, double rel_tol) {
    return build(lambda, a, p, bc, init, rel_tol).orbit;
}

BlowupTime blowup_time(double lambda, double a, double p, const BoundaryOp& bc, Init init, double rel_tol) {
    Built b = build(lambda, a, p, bc, init, rel_tol);
    BlowupTime t;
    t.value = b.orbit.time;
    t.quad = b.quad;
    t.quad.value = t.value;
    t.regime = b.regime;
    if (!(t.value > 0.0) || !std::isfinite(t.value)) throw Error(Errc::NonFinite, "blow-up time not finite");
    return t;
}

BlowupTime blowup_time(double lambda, double a, double p, const BoundaryOp& bc, double init, double rel_tol) {
    return blowup_time(lambda, a, p, bc, Init::from_value(init, thresholds(lambda, a, p, bc)), rel_tol);
}

double partial_time(double u0, double lambda, double a, double p, double beta) {
    if (!(beta < 0.0)) throw Error(Errc::NoRoot, "partial time is defined for beta < 0");
    BoundaryOp bc = BoundaryOp::robin(beta);
    auto th = thresholds(lambda, a, p, bc);
    return build(lambda, a, p, bc, Init::from_value(u0, th), kBlowupRelTol).orbit.x1;
}

namespace {

double closed_form_derivative(double lambda, double a, double p, const BoundaryOp& bc, double init,
                              bool lambda_kernel) {
    PhaseData ph(lambda, a, p);
    Thresholds th = thresholds(lambda, a, p, bc);
    Init in = Init::from_value(init, th);
    check_admissible(th, in);
    const double tol = 1e-10;
    Integrand ig;
    ig.kind = DomainKind::SemiInfinite;
    ig.lo = 0.0;
    bool near = lambda > 0.0 && in.excess <= kNear;
    if (bc.is_dirichlet()) {
        DirRad d{ph, init, 0.0};
        if (lambda > 0.0) d.dE = 0.5 * *th.v_star * *th.v_star * in.excess * (2.0 + in.excess);
        ig.f = [d, lambda_kernel](double s) { return d.deriv_integrand(s, lambda_kernel); };
        if (near) ig.split_hint = ph.u_star;
        return integrate(ig, tol).value;
    }
    double beta = bc.robin_beta();
    bool near_split = false;
    RobinRad r = make_robin(ph, th, beta, in, near_split);
    ig.f = [r, lambda_kernel](double tau) { return r.deriv_integrand(tau, lambda_kernel); };
    if (near_split) ig.split_hint = ph.u_star / init - 1.0;
    double I = integrate(ig, tol).value;
    if (lambda_kernel) return I;
    return -a * (p - 1.0) / (p + 1.0) * std::pow(init, p - 2.0) * I;
}

// Fourth-order central difference with the stencil kept inside the admissible region.
template <class F>
double central_diff(F&& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

}  // namespace

double dT_dinit(double lambda, double a, double p, const BoundaryOp& bc, double init) {
    if (bc.is_dirichlet() || bc.robin_beta() >= 0.0) return closed_form_derivative(lambda, a, p, bc, init, false);
    auto th = thresholds(lambda, a, p, bc);
    check_admissible(th, Init::from_value(init, th));
    double h = std::min(1e-4 * init, 0.2 * (init - th.init_min));
    return central_diff([&](double x) { return blowup_time(lambda, a, p, bc, x).value; }, init, h);
}

double dT_dlambda(double lambda, double a, double p, const BoundaryOp& bc, double init) {
    if (bc.is_dirichlet() || bc.robin_beta() >= 0.0) return closed_form_derivative(lambda, a, p, bc, init, true);
    auto th = thresholds(lambda, a, p, bc);
    check_admissible(th, Init::from_value(init, th));
    double h = 1e-4 * std::max(1.0, std::abs(lambda));
    // Shrink until the whole stencil stays admissible.
    for (int i = 0; i < 60; ++i) {
        double lam_hi = lambda + 2.0 * h;
        if (init > thresholds(lam_hi, a, p, bc).init_min * (1.0 + 1e-6) &&
            init > thresholds(lambda - 2.0 * h, a, p, bc).init_min * (1.0 + 1e-6))
            break;
        h *= 0.5;
    }
    return central_diff([&](double l) { return blowup_time(l, a, p, bc, init).value; }, lambda, h);
}

}  // namespace lsol
