#include "lsol/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "lsol/error.hpp"

namespace lsol {

namespace {

// Symmetric tridiagonal form of −D² + q after folding the Robin ghost rows:
// the end rows are halved and rescaled by √2, so unknowns at Robin ends carry weight ½.
struct SymTri {
    int i0 = 0;  // first mesh index carried as an unknown
    std::vector<double> d, e;  // e[k] couples unknowns k and k+1
    std::vector<double> w;     // mass weights m_i (½ at Robin ends)
};

std::vector<double> nodal_potential(const Potential& q, double c, double h, int n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    if (auto k = std::get_if<double>(&q)) {
        std::fill(out.begin(), out.end(), *k);
    } else if (auto f = std::get_if<std::function<double(double)>>(&q)) {
        for (int i = 0; i <= n; ++i) out[i] = (*f)(c + i * h);
    } else {
        const auto& v = std::get<std::vector<double>>(q);
        int m = static_cast<int>(v.size()) - 1;
        if (m == n) return v;
        if (m < 1 || n % m != 0) throw Error(Errc::MeshMismatch, "nodal potential does not match the mesh", "q");
        int r = n / m;
        for (int i = 0; i <= n; ++i) {
            int k = std::min(i / r, m - 1);
            double t = static_cast<double>(i - k * r) / r;
            out[i] = (1.0 - t) * v[k] + t * v[k + 1];
        }
    }
    for (double x : out)
        if (!std::isfinite(x)) throw Error(Errc::NonFinite, "potential not finite", "q");
    return out;
}

SymTri assemble(const std::vector<double>& q, const BoundaryOp& left, const BoundaryOp& right, double h, int n) {
    SymTri T;
    bool dl = left.is_dirichlet(), dr = right.is_dirichlet();
    T.i0 = dl ? 1 : 0;
    int i1 = dr ? n - 1 : n;
    double ih2 = 1.0 / (h * h);
    for (int i = T.i0; i <= i1; ++i) {
        double diag = 2.0 * ih2 + q[i];
        double w = 1.0;
        if (i == 0) {
            diag = (2.0 + 2.0 * h * left.robin_beta()) * ih2 + q[i];
            w = 0.5;
        } else if (i == n) {
            diag = (2.0 + 2.0 * h * right.robin_beta()) * ih2 + q[i];
            w = 0.5;
        }
        T.d.push_back(diag);
        T.w.push_back(w);
    }
    for (std::size_t k = 0; k + 1 < T.d.size(); ++k) T.e.push_back(-ih2 / std::sqrt(T.w[k] * T.w[k + 1]));
    return T;
}

// Number of eigenvalues below s.
int sturm_count(const SymTri& T, double s) {
    int cnt = 0;
    double qv = 1.0;
    for (std::size_t k = 0; k < T.d.size(); ++k) {
        double e2 = k == 0 ? 0.0 : T.e[k - 1] * T.e[k - 1];
        qv = T.d[k] - s - (k == 0 ? 0.0 : e2 / qv);
        if (qv == 0.0) qv = -1e-300;
        if (qv < 0.0) ++cnt;
    }
    return cnt;
}

struct Solved {
    double sigma;
    std::vector<double> u;  // nodal eigenfunction, max-normalised
    int iterations;
};

Solved solve_mesh(const Potential& qpot, const BoundaryOp& left, const BoundaryOp& right, double c, double d, int n) {
    double h = (d - c) / n;
    std::vector<double> q = nodal_potential(qpot, c, h, n);
    SymTri T = assemble(q, left, right, h, n);
    std::size_t m = T.d.size();

    double lo = T.d[0], hi = T.d[0];
    for (std::size_t k = 0; k < m; ++k) {
        double r = (k > 0 ? std::abs(T.e[k - 1]) : 0.0) + (k + 1 < m ? std::abs(T.e[k]) : 0.0);
        lo = std::min(lo, T.d[k] - r);
        hi = std::max(hi, T.d[k] + r);
    }
    double norm = std::max(std::abs(lo), std::abs(hi));
    int it = 0;
    while (hi - lo > 1e-15 * std::max(std::abs(lo), std::abs(hi)) + 1e-300 && it < 300) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(T, mid) >= 1) hi = mid; else lo = mid;
        ++it;
    }
    double sigma = 0.5 * (lo + hi);

    // Inverse iteration just below σ: T − μ is positive definite, so Thomas needs no pivoting.
    double mu = sigma - (1e-7 * (1.0 + std::abs(sigma)) + 1e-13 * norm);
    std::vector<double> v(m, 1.0), sub(m, 0.0), sup(m, 0.0), diag(m);
    for (std::size_t k = 0; k < m; ++k) {
        diag[k] = T.d[k] - mu;
        if (k > 0) sub[k] = T.e[k - 1];
        if (k + 1 < m) sup[k] = T.e[k];
    }
    for (int k = 0; k < 50; ++k) {
        std::vector<double> y = v;
        if (!solve_tridiagonal(sub, diag, sup, y)) throw Error(Errc::NonFinite, "inverse iteration breakdown");
        double mx = 0.0;
        for (double t : y) mx = std::max(mx, std::abs(t));
        double diff = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            y[j] /= mx;
            diff = std::max(diff, std::abs(y[j] - v[j]));
        }
        v = std::move(y);
        ++it;
        if (diff <= 1e-14) break;
    }

    // Back to nodal values, then the Rayleigh quotient as a sum of squares.
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) u[T.i0 + k] = v[k] / std::sqrt(T.w[k]);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        double du = u[i + 1] - u[i];
        num += du * du / (h * h);
    }
    if (!left.is_dirichlet()) num += left.robin_beta() * u[0] * u[0] / h;
    if (!right.is_dirichlet()) num += right.robin_beta() * u[n] * u[n] / h;
    for (std::size_t k = 0; k < m; ++k) {
        double uk = u[T.i0 + k];
        num += T.w[k] * q[T.i0 + k] * uk * uk;
        den += T.w[k] * uk * uk;
    }
    sigma = num / den;
    double mx = 0.0;
    for (double t : u) mx = std::max(mx, std::abs(t));
    for (double& t : u) t /= mx;
    if (u[static_cast<std::size_t>(n) / 2] < 0.0)
        for (double& t : u) t = -t;
    return {sigma, std::move(u), it};
}

}  // namespace

EigenResult principal_eigenvalue(const Potential& q, const BoundaryOp& left, const BoundaryOp& right, double c,
                                 double d, int n, bool richardson) {
    if (n < 64) throw Error(Errc::BadMesh, "eigen mesh needs n >= 64", "n");
    if (!(d > c)) throw Error(Errc::BadMesh, "need d > c", "interval");
    Solved s = solve_mesh(q, left, right, c, d, n);
    EigenResult r;
    r.iterations = s.iterations;
    int nf = n;
    if (richardson) {
        Solved f = solve_mesh(q, left, right, c, d, 2 * n);
        r.sigma1 = (4.0 * f.sigma - s.sigma) / 3.0;
        r.iterations += f.iterations;
        s.u = std::move(f.u);
        nf = 2 * n;
    } else {
        r.sigma1 = s.sigma;
    }
    r.eigenfunction = make_grid(c, d, nf, GridMeta::Eigenfunction);
    r.eigenfunction.values = std::move(s.u);
    return r;
}

double h_divided_difference(double u, double v, double p) {
    if (std::abs(u - v) <= 1e-8 * (std::abs(u) + std::abs(v) + 1.0)) return p * std::pow(0.5 * (u + v), p - 1.0);
    return (std::pow(u, p) - std::pow(v, p)) / (u - v);
}

ComparisonReport comparison_certificate(const GridFunction& u, const GridFunction& v, const Problem& problem) {
    if (u.n != v.n || u.lo != v.lo || u.hi != v.hi) throw Error(Errc::MeshMismatch, "u and v live on different meshes");
    int n = u.n;
    std::vector<double> qH(static_cast<std::size_t>(n) + 1), qu(qH.size()), qv(qH.size());
    double p = problem.p, lam = problem.lambda;
    for (int i = 0; i <= n; ++i) {
        double a = problem.weight(u.x(i));
        double ui = std::max(u.values[i], 0.0), vi = std::max(v.values[i], 0.0);
        qH[i] = a * h_divided_difference(ui, vi, p) - lam;
        qu[i] = a * std::pow(ui, p - 1.0) - lam;
        qv[i] = a * std::pow(vi, p - 1.0) - lam;
    }
    BoundaryOp right = BoundaryOp::dirichlet();
    ComparisonReport r;
    r.sigma_H = principal_eigenvalue(qH, problem.bc, right, u.lo, u.hi, n).sigma1;
    r.sigma_u = principal_eigenvalue(qu, problem.bc, right, u.lo, u.hi, n).sigma1;
    r.sigma_v = principal_eigenvalue(qv, problem.bc, right, u.lo, u.hi, n).sigma1;
    r.margin_Hu = r.sigma_H - r.sigma_u;
    r.margin_uv = r.sigma_u - r.sigma_v;
    r.forces_equality = r.sigma_H > 0.0;
    return r;
}

}  // namespace lsol
