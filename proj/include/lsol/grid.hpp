#pragma once

#include <vector>

namespace lsol {

enum class GridMeta { ThetaM, Logistic, Ladder, Eigenfunction };

const char* grid_meta_name(GridMeta m);

/// Values on the uniform mesh lo + i·(hi − lo)/n, i = 0..n.
struct GridFunction {
    double lo = 0.0, hi = 1.0;
    int n = 0;
    std::vector<double> values;
    GridMeta meta = GridMeta::ThetaM;

    double h() const { return (hi - lo) / n; }
    double x(int i) const { return i == n ? hi : lo + i * h(); }
    /// Local cubic Lagrange interpolation; exact at nodes.
    double at(double x) const;
};

GridFunction make_grid(double lo, double hi, int n, GridMeta meta);

/// Solves a tridiagonal system in place (Thomas); sub[0] and sup[n−1] are unused.
/// Returns false on a vanishing pivot.
bool solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<double>& rhs);

}  // namespace lsol
