#pragma once

#include <functional>
#include <vector>

#include "lsol/model.hpp"
#include "lsol/phase.hpp"
#include "lsol/quad.hpp"

namespace lsol {

enum class Regime { Dirichlet, Neumann, RobinPos, RobinNegComposite };

const char* regime_name(Regime r);

struct BlowupTime {
    double value = 0.0;
    QuadResult quad;
    Regime regime = Regime::Dirichlet;
};

constexpr double kBlowupRelTol = 1e-11;

/// Length of the maximal existence interval of the Cauchy problem started at
/// x = 0 with the boundary datum `init` (slope v0 for Dirichlet, u0 otherwise).
BlowupTime blowup_time(double lambda, double a, double p, const BoundaryOp& bc, double init,
                       double rel_tol = kBlowupRelTol);
BlowupTime blowup_time(double lambda, double a, double p, const BoundaryOp& bc, Init init,
                       double rel_tol = kBlowupRelTol);

/// Time from (u0, βu0) down to the turning point (u₁, 0), β < 0.
double partial_time(double u0, double lambda, double a, double p, double beta);

double dT_dinit(double lambda, double a, double p, const BoundaryOp& bc, double init);
double dT_dlambda(double lambda, double a, double p, const BoundaryOp& bc, double init);

/// One monotone piece of an orbit, parametrised by the offset o ∈ (0, o_max)
/// from an anchor point (start, turning point or saddle abscissa).
/// x(o) = x_anchor + dir·∫₀^o rate.
struct Segment {
    double x_anchor = 0.0;
    double x_far = 0.0;
    double o_max = 0.0;  // +∞ on the blow-up piece
    int dir = 1;
    std::function<double(double)> rate;
    std::function<double(double)> state;

    double x_lo() const { return dir > 0 ? x_anchor : x_far; }
    double x_hi() const { return dir > 0 ? x_far : x_anchor; }
};

struct Orbit {
    Thresholds th;
    Init init;
    double u0 = 0.0, v0 = 0.0;
    double u1 = 0.0, x1 = 0.0;  // turning point (β < 0 only)
    std::vector<Segment> segments;  // ordered by x
    double time = 0.0;
};

/// Decomposes the orbit into monotone pieces and places them in x.
Orbit build_orbit(double lambda, double a, double p, const BoundaryOp& bc, Init init,
                  double rel_tol = kBlowupRelTol);

}  // namespace lsol
