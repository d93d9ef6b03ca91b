#include "lsol/grid.hpp"

#include <algorithm>
#include <cmath>

#include "lsol/error.hpp"

namespace lsol {

const char* grid_meta_name(GridMeta m) {
    switch (m) {
        case GridMeta::ThetaM: return "theta_M";
        case GridMeta::Logistic: return "logistic";
        case GridMeta::Ladder: return "ladder";
        case GridMeta::Eigenfunction: return "eigenfunction";
    }
    return "?";
}

GridFunction make_grid(double lo, double hi, int n, GridMeta meta) {
    if (n < 8) throw Error(Errc::BadMesh, "mesh needs at least 8 cells", "n");
    if (!(hi > lo)) throw Error(Errc::BadMesh, "mesh needs hi > lo", "hi");
    GridFunction g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
    g.meta = meta;
    return g;
}

double GridFunction::at(double xq) const {
    if (!(xq >= lo - 1e-12 * (hi - lo)) || !(xq <= hi + 1e-12 * (hi - lo)))
        throw Error(Errc::OutOfDomain, "grid evaluated outside its interval", "x");
    double s = (xq - lo) / h();
    int k = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, n - 3);
    double r = 0.0;
    for (int j = 0; j < 4; ++j) {
        double w = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != j) w *= (s - (k + m)) / static_cast<double>(j - m);
        r += w * values[static_cast<std::size_t>(k + j)];
    }
    return r;
}

bool solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<double>& rhs) {
    std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1])) return false;
        double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1])) return false;
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    for (double v : rhs)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace lsol
