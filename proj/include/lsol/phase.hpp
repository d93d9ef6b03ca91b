#pragma once

#include <optional>
#include <utility>

#include "lsol/model.hpp"

namespace lsol {

struct PhasePoint {
    double u, v;
};

/// E(u, v) = v²/2 + λu²/2 − a|u|^{p+1}/(p+1)
double energy(PhasePoint pt, double lambda, double a, double p);

/// φ(u) = λu²/2 − a|u|^{p+1}/(p+1)
double potential(double u, double lambda, double a, double p);

/// (1+t)^q − 1 without cancellation near t = 0.
double pow1pm1(double t, double q);

/// (1+t)^q − 1 − q·t, series-evaluated for small |t|.
double pow1pm1_lin(double t, double q);

/// ((1+t)^q − 1 − q·t)/t², finite and accurate as t → 0.
double pow1pm1_lin2(double t, double q);

enum class InitKind { DirichletSlope, Position };

struct Thresholds {
    std::optional<double> u_star, v_star, u_minus, u_plus, u_c, u_tilde;
    double init_min = 0.0;
    InitKind init_kind = InitKind::Position;
};

Thresholds thresholds(double lambda, double a, double p, const BoundaryOp& bc);

/// Roots u₋ < u₀* < u_c < u₊ of (β²+λ)u²/2 − a u^{p+1}/(p+1) − φ(u₀*). Requires λ > 0.
std::pair<double, double> robin_line_crossings(double lambda, double a, double p, double beta);

/// Turning abscissa u₁ ∈ (0, u0) on the energy level of (u0, βu0), β < 0.
double u1_of_u0(double u0, double lambda, double a, double p, double beta);

/// Shooting datum. When init_min > 0 the relative excess over init_min is
/// carried separately so data far closer to the threshold than one ulp stay
/// distinguishable.
struct Init {
    double value = 0.0;
    double excess = 0.0;  // value = init_min·(1+excess); unused when init_min = 0

    static Init from_value(double v, const Thresholds& th);
    static Init from_excess(double e, const Thresholds& th);
};

/// Saddle-relative potential data for constant weight. With λ > 0,
/// gap(t) = φ(u₀*) − φ(u₀*(1+t)) is evaluated without cancellation at t ≈ 0.
struct PhaseData {
    double lambda, a, p;
    double u_star = 0.0;
    double phi_star = 0.0;

    PhaseData(double lambda, double a, double p);
    double phi(double u) const { return potential(u, lambda, a, p); }
    double gap(double t) const;
};

/// Accurate turning-point data for a β < 0 orbit.
struct TurningPoint {
    double u1;
    double delta1;  // u1/u₀* − 1 when λ > 0, else 0
};
TurningPoint turning_point(const PhaseData& ph, double beta, const Thresholds& th, Init init);

/// E(u0, βu0) − φ(u₀*) from the excess over a crossing root u_r of the Robin line.
double robin_level_offset(const PhaseData& ph, double beta, double u_root, double excess);

}  // namespace lsol
