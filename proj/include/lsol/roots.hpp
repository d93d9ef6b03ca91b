#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace lsol {

/// Bisection on a sign change of f over [lo, hi]. Stops at |hi-lo| <= rtol*max(|lo|,|hi|).
template <class F>
double bisect(F&& f, double lo, double hi, double rtol = 1e-13, int max_iter = 400) {
    double flo = f(lo);
    for (int i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= rtol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

/// Brent's method (zeroin). Requires f(a), f(b) of opposite sign.
/// Converges when the bracket shrinks below 2*(atol + rtol*|b|).
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double atol, double rtol, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + atol + rtol * std::abs(b);
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pp, q;
            if (a == c) {
                pp = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                pp = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pp > 0) q = -q; else pp = -pp;
            if (2.0 * pp < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = pp / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

/// Golden-section minimisation of a unimodal f on [a, b]; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (std::abs(b - a) > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - g * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + g * (b - a); f2 = f(x2);
        }
    }
    return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace lsol
