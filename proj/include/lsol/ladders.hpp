#pragma once

#include <optional>
#include <vector>

#include "lsol/grid.hpp"
#include "lsol/model.hpp"

namespace lsol {

struct LadderOptions {
    int n = 2048;           // cells on [0, R] (or [0, R − ε] for the ε-ladder)
    double M0 = 10.0;       // M_k = M0·M_factor^k
    double M_factor = 4.0;
    double eps0 = 0.2;      // ε_k = eps0·R·2^{−k}
    int max_steps = 40;
    bool mesh_error = true; // rerun the final rung at n/2
};

struct LadderStep {
    double param = 0.0;     // M_k or ε_k
    double sup_diff = 0.0;  // against the previous rung; the first rung is measured against 0
};

struct LadderReport {
    std::vector<LadderStep> steps;
    bool converged = false;
    double window_hi = 0.0;
    double mesh_error = 0.0;  // sup |u_n − u_{n/2}| on the window, 0 when not computed
    double M_cap = 0.0;       // largest boundary value the mesh resolves
    bool capped = false;      // an M-ladder stopped at M_cap before meeting tol
};

struct LadderResult {
    GridFunction window;  // last rung on [0, window_hi]
    GridFunction full;    // last rung on its whole truncation domain
    LadderReport report;
};

/// Limit of θ_M as M ↑ ∞ along M_k, judged on [0, window_hi]. M_k stops at the
/// blow-up asymptote one cell from R: beyond it a fixed mesh has no limit.
LadderResult minimal_solution(const Problem& problem, double window_hi, double tol, const LadderOptions& opt = {});

/// Limit as ε ↓ 0 of minimal solutions on [0, R − ε_k). The ladder starts at the
/// first ε_k ≤ (R − window_hi)/2.
LadderResult maximal_solution(const Problem& problem, double window_hi, double tol, const LadderOptions& opt = {});

struct UniquenessReport {
    double gap = 0.0;        // sup |L^max − L^min| on the window
    double tolerance = 0.0;  // max(tol, 5·mesh error)
    bool agree = false;      // gap ≤ tolerance: numerical evidence only
    bool a_non_increasing = false, lambda_nonnegative = false, bc_covered = false;
    bool hypotheses = false;  // all three flags
    LadderResult minimal, maximal;
};

UniquenessReport uniqueness_check(const Problem& problem, double window_hi, double tol, const LadderOptions& opt = {});

struct SupersolutionReport {
    double rho = 1.0, gamma = 1.0;
    double min_residual = 0.0;  // min over interior nodes of −L̂″ − λL̂ + aL̂^p
    double scale = 1.0;         // 1 + max a·L̂^p
    std::optional<double> boundary_slack;  // Robin β < 0 only
    GridFunction hat;
};

/// L̂(x) = ρ^γ Lmin(ρx) with ρ = R/(R − ε), γ = 2/(p − 1), on the mesh of Lmin shrunk by ρ.
SupersolutionReport scaled_supersolution_check(const GridFunction& Lmin, const Problem& problem, double eps);

}  // namespace lsol
