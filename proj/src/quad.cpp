#include "lsol/quad.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "lsol/error.hpp"
#include "lsol/roots.hpp"

namespace lsol {

namespace {

constexpr int kMaxLevel = 12;
constexpr int kMinLevel = 3;
constexpr double kHalfPi = std::numbers::pi / 2.0;
// Offsets below ~1e-275 (tanh-sinh) and outside [1e-304, 1e304] (exp-sinh) are dropped.
constexpr double kTanhSinhTMax = 6.0;
constexpr double kExpSinhTMax = 6.78;

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double checked(const std::function<double(double)>& f, double x, long& evals) {
    double y = f(x);
    ++evals;
    if (!std::isfinite(y)) throw Error(Errc::NonFinite, "integrand not finite at x = " + fmt_g(x));
    return y;
}

// Contribution of the node pair ±t (or the centre node when t == 0).
double tanh_sinh_node(const std::function<double(double)>& f, double lo, double hi, double t, long& evals) {
    double half = 0.5 * (hi - lo);
    double u = kHalfPi * std::sinh(t);
    double ch = std::cosh(u);
    double w = half * kHalfPi * std::cosh(t) / (ch * ch);
    if (t == 0.0) return w * checked(f, lo + half, evals);
    double off = half * 2.0 / (std::exp(2.0 * u) + 1.0);  // distance of both nodes from their endpoint
    if (!(off > 0.0) || w == 0.0) return 0.0;
    double s = 0.0;
    double xl = lo + off, xr = hi - off;
    if (xl > lo && xl < hi) s += w * checked(f, xl, evals);
    if (xr > lo && xr < hi) s += w * checked(f, xr, evals);
    return s;
}

double exp_sinh_node(const std::function<double(double)>& f, double lo, double t, long& evals) {
    double e = kHalfPi * std::sinh(t);
    double off = std::exp(e);
    double x = lo + off;
    if (!(x > lo) || !std::isfinite(x)) return 0.0;
    return kHalfPi * std::cosh(t) * off * checked(f, x, evals);
}

template <class Node>
QuadResult de_levels(Node&& node, double tmax, double rel_tol, int max_level = kMaxLevel) {
    QuadResult r;
    double sum = 0.0;
    // Level 0: integer nodes.
    for (int k = 0; k <= static_cast<int>(tmax); ++k) sum += node(static_cast<double>(k), r.evaluations);
    double prev = sum;
    for (int level = 1; level <= max_level; ++level) {
        double h = std::ldexp(1.0, -level);
        for (double t = h; t <= tmax; t += 2.0 * h) sum += node(t, r.evaluations);
        double cur = sum * h;
        r.value = cur;
        r.abs_err_est = std::abs(cur - prev);
        if (level >= kMinLevel && r.abs_err_est <= rel_tol * std::abs(cur)) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

QuadResult integrate_piece(const std::function<double(double)>& f, bool semi_infinite, double lo, double hi,
                           double rel_tol, int max_level = kMaxLevel) {
    if (semi_infinite) {
        // Symmetric node sets in t cover both tails of exp-sinh.
        auto node = [&](double t, long& ev) {
            double s = exp_sinh_node(f, lo, t, ev);
            if (t != 0.0) s += exp_sinh_node(f, lo, -t, ev);
            return s;
        };
        return de_levels(node, kExpSinhTMax, rel_tol, max_level);
    }
    auto node = [&](double t, long& ev) { return tanh_sinh_node(f, lo, hi, t, ev); };
    return de_levels(node, kTanhSinhTMax, rel_tol, max_level);
}

}  // namespace

QuadResult integrate(const Integrand& ig, double rel_tol) {
    bool semi = ig.kind == DomainKind::SemiInfinite;
    if (!semi && !(ig.hi > ig.lo)) return {0.0, 0.0, 1, true};
    if (ig.split_hint && *ig.split_hint > ig.lo && (semi || *ig.split_hint < ig.hi)) {
        double s = *ig.split_hint;
        QuadResult a = integrate_piece(ig.f, false, ig.lo, s, rel_tol);
        QuadResult b = integrate_piece(ig.f, semi, s, ig.hi, rel_tol);
        return {a.value + b.value, a.abs_err_est + b.abs_err_est, a.evaluations + b.evaluations,
                a.converged && b.converged};
    }
    return integrate_piece(ig.f, semi, ig.lo, ig.hi, rel_tol);
}

QuadResult integrate_at_level(const Integrand& ig, int level) {
    if (level < 1 || level > kMaxLevel) throw Error(Errc::BadMesh, "quadrature level must lie in [1, 12]");
    QuadResult r = integrate_piece(ig.f, ig.kind == DomainKind::SemiInfinite, ig.lo, ig.hi, 0.0, level);
    r.converged = false;
    return r;
}

std::optional<double> radicand_argmin(const std::function<double(double)>& r, double lo, double hi_probe) {
    constexpr int kScan = 64;
    double best = r(lo);
    double end_hi = r(hi_probe);
    int best_k = 0;
    for (int k = 1; k <= kScan; ++k) {
        double x = lo + (hi_probe - lo) * k / kScan;
        double v = (k == kScan) ? end_hi : r(x);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    if (best_k == 0 || best_k == kScan) return std::nullopt;
    double a = lo + (hi_probe - lo) * (best_k - 1) / kScan;
    double b = lo + (hi_probe - lo) * (best_k + 1) / kScan;
    auto [xm, fm] = golden_min(r, a, b, 1e-10);
    // Golden section stalls at ~sqrt(eps); one symmetric parabolic step sharpens it.
    double h = 1e-5 * (1.0 + std::abs(xm));
    if (xm - h > lo && xm + h < hi_probe) {
        double fl = r(xm - h), fr = r(xm + h);
        double den = fl - 2.0 * fm + fr;
        if (den > 0.0) {
            double step = 0.5 * h * (fl - fr) / den;
            if (std::abs(step) < h) xm += step;
        }
    }
    if (fm < 0.5 * std::min(r(lo), end_hi)) return xm;
    return std::nullopt;
}

}  // namespace lsol
