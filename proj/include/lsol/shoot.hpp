#pragma once

#include <memory>
#include <vector>

#include "lsol/blowup.hpp"
#include "lsol/model.hpp"
#include "lsol/phase.hpp"

namespace lsol {

/// Monotone piece of a large solution: u runs from u_start (at x_lo) to u_end (at x_hi).
struct Branch {
    double x_lo = 0.0, x_hi = 0.0;
    double u_start = 0.0, u_end = 0.0;
    int orientation = 1;  // +1 increasing in x, −1 decreasing
};

struct LargeSolution {
    Problem problem;
    double u0 = 0.0, v0 = 0.0;
    double x1 = 0.0;  // turning abscissa, 0 for monotone profiles
    std::vector<Branch> branches;
    Thresholds thresholds;
    Init init;
    double time = 0.0;  // blow-up time of the computed datum, ≈ R
    std::shared_ptr<const Orbit> orbit;
};

/// Large solution for a constant weight: solves blowup_time(init) = R.
LargeSolution solve_init(const Problem& problem);

/// u(x) on [0, R), by inverting the time integral on the branch containing x.
double eval_profile(const LargeSolution& sol, double x);

enum class Terminal { ReachedCap, ReachedEnd, StepUnderflow };

const char* terminal_name(Terminal t);

struct TrajSample {
    double x, u, v, dv;
};

struct Trajectory {
    std::vector<TrajSample> samples;
    Terminal terminal = Terminal::ReachedEnd;

    /// Quintic Hermite interpolation of u between accepted steps.
    double u_at(double x) const;
};

/// Dormand–Prince 5(4) on u' = v, v' = a(x)|u|^{p−1}u − λu from x = 0,
/// stopping at x_max or once u ≥ u_cap.
Trajectory integrate_ode(PhasePoint start, double lambda, const Weight& weight, double p, double x_max,
                         double u_cap = 1e6, double tol = 1e-10);

/// Blow-up abscissa from the power-law tail u ≈ C(x_b − x)^{−2/(p−1)}.
double blowup_location_estimate(const Trajectory& traj, double a_at_R, double p);

/// Large solution on (c, d): even reflection of the Neumann solution on half the interval.
struct TwoSidedSolution {
    double c = 0.0, d = 0.0;
    LargeSolution half;

    double mid() const { return 0.5 * (c + d); }
    double operator()(double x) const;
};

TwoSidedSolution solve_two_sided(double c, double d, double lambda, double a, double p);

}  // namespace lsol
