#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "lsol/grid.hpp"
#include "lsol/model.hpp"

namespace lsol {

/// Potential q of −D² + q: a constant, a function of x, or nodal values on the eigen mesh.
using Potential = std::variant<double, std::function<double(double)>, std::vector<double>>;

struct EigenResult {
    double sigma1 = 0.0;
    GridFunction eigenfunction;  // max-normalised
    int iterations = 0;
};

/// Principal eigenvalue of −D² + q on (c, d). The left operator is −u′(c) + βu(c),
/// the right one u′(d) + βu(d). With `richardson`, combines meshes n and 2n.
EigenResult principal_eigenvalue(const Potential& q, const BoundaryOp& left, const BoundaryOp& right, double c,
                                 double d, int n, bool richardson = false);

/// (u^p − v^p)/(u − v), switching to p((u+v)/2)^{p−1} when u ≈ v.
double h_divided_difference(double u, double v, double p);

struct ComparisonReport {
    double sigma_H = 0.0;  // σ1[−D² + a·H(u,v) − λ]
    double sigma_u = 0.0;  // σ1[−D² + a·u^{p−1} − λ]
    double sigma_v = 0.0;  // σ1[−D² + a·v^{p−1} − λ]
    double margin_Hu = 0.0, margin_uv = 0.0;
    bool forces_equality = false;  // σ_H > 0
};

/// Eigenvalue triple for two positive grid functions under the problem's left
/// condition and Dirichlet at the right end of the mesh.
ComparisonReport comparison_certificate(const GridFunction& u, const GridFunction& v, const Problem& problem);

}  // namespace lsol
