#pragma once

#include <functional>
#include <optional>

namespace lsol {

struct QuadResult {
    double value = 0.0;
    double abs_err_est = 0.0;
    long evaluations = 0;
    bool converged = false;
};

enum class DomainKind { FiniteSingularLeft, FiniteRegular, SemiInfinite };

struct Integrand {
    std::function<double(double)> f;
    DomainKind kind = DomainKind::SemiInfinite;
    double lo = 0.0;
    double hi = 0.0;  // ignored for SemiInfinite
    std::optional<double> split_hint;
};

/// Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
/// [lo, ∞). Levels are refined by halving the step until successive levels
/// agree to rel_tol or level 12 is reached (converged = false then).
/// Abscissae near lo are formed as lo + offset with the offset computed
/// directly, so integrands parametrised by the distance from lo keep full
/// precision there. Throws NonFinite on a NaN/∞ integrand value.
QuadResult integrate(const Integrand& ig, double rel_tol = 1e-9);

/// Value after exactly `level` halvings of the step, ignoring split_hint.
QuadResult integrate_at_level(const Integrand& ig, int level);

/// Golden-section location of an interior minimum of a positive radicand on
/// (lo, hi_probe), reported only when it dips below half the smaller end value.
std::optional<double> radicand_argmin(const std::function<double(double)>& radicand, double lo, double hi_probe);

}  // namespace lsol
