#pragma once

#include <vector>

#include "lsol/ladders.hpp"
#include "lsol/model.hpp"

namespace lsol {

struct SweepRow {
    double lambda = 0.0;
    double init = 0.0;              // u(0), or u′(0) under Dirichlet
    std::vector<double> values;     // L_λ at the sample xs
    std::vector<double> ratios;     // asymptotic ratio at the xs; NaN for λ ≤ 0 or x = 0
};

struct SweepTable {
    Problem templ;  // λ of the template is ignored
    std::vector<double> xs;
    std::vector<SweepRow> rows;
    std::vector<bool> increasing;  // per x: every row exceeds the previous one minus 1e-9
};

struct SweepOptions {
    LadderOptions ladder;      // used for variable weights
    double window_hi = 0.9;    // fraction of R
    double tol = 1e-4;
};

/// One large solution per λ (shooting for constant a, minimal ladder otherwise).
SweepTable lambda_sweep(const Problem& templ, const std::vector<double>& lambdas, const std::vector<double>& xs,
                        const SweepOptions& opt = {});

/// λ^{−1/(p−1)}·L_λ(x)·a(x)^{1/(p−1)}, which tends to 1 as λ ↑ ∞.
double asymptotic_ratio(const Problem& problem, double x, const SweepOptions& opt = {});

}  // namespace lsol
