#include "lsol/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "lsol/error.hpp"

namespace lsol {

std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NonPositiveWeight: return "NonPositiveWeight";
        case Errc::BadExponent: return "BadExponent";
        case Errc::BadDomain: return "BadDomain";
        case Errc::BadTable: return "BadTable";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::NoBracket: return "NoBracket";
        case Errc::NoRoot: return "NoRoot";
        case Errc::NonFinite: return "NonFinite";
        case Errc::BelowThreshold: return "BelowThreshold";
        case Errc::BracketFailure: return "BracketFailure";
        case Errc::NotBlownUp: return "NotBlownUp";
        case Errc::NewtonDivergence: return "NewtonDivergence";
        case Errc::BadMesh: return "BadMesh";
        case Errc::SubcriticalLambda: return "SubcriticalLambda";
        case Errc::NotOrdered: return "NotOrdered";
        case Errc::NotSubSuper: return "NotSubSuper";
        case Errc::MeshMismatch: return "MeshMismatch";
        case Errc::LadderStall: return "LadderStall";
        case Errc::HypothesisViolation: return "HypothesisViolation";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::IoError: return "IoError";
        case Errc::QuadratureFailure: return "QuadratureFailure";
    }
    return "Unknown";
}

double Weight::constant_value() const {
    if (auto c = std::get_if<ConstantWeight>(&repr_)) return c->a0;
    throw Error(Errc::ValidationError, "weight is not constant", "weight");
}

double Weight::operator()(double x) const {
    return std::visit(
        [x](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return w.a0;
            } else if constexpr (std::is_same_v<T, AffineWeight>) {
                return w.a0 + w.a1 * x;
            } else {
                if (x <= w.xs.front()) return w.ys.front();
                if (x >= w.xs.back()) return w.ys.back();
                auto it = std::upper_bound(w.xs.begin(), w.xs.end(), x);
                auto k = static_cast<std::size_t>(it - w.xs.begin());
                double t = (x - w.xs[k - 1]) / (w.xs[k] - w.xs[k - 1]);
                return w.ys[k - 1] + t * (w.ys[k] - w.ys[k - 1]);
            }
        },
        repr_);
}

bool Weight::non_increasing(double R) const {
    return std::visit(
        [R](const auto& w) -> bool {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return true;
            } else if constexpr (std::is_same_v<T, AffineWeight>) {
                return w.a1 <= 0.0;
            } else {
                for (std::size_t i = 1; i < w.ys.size(); ++i)
                    if (w.xs[i - 1] < R && w.ys[i] > w.ys[i - 1]) return false;
                return true;
            }
        },
        repr_);
}

double weight_eval(const Weight& w, double x, double R) {
    if (!(x >= 0.0 && x <= R)) throw Error(Errc::OutOfDomain, "weight evaluated outside [0, R]", "x");
    return w(x);
}

std::pair<double, double> weight_bounds(const Weight& w, double R) {
    return std::visit(
        [&](const auto& v) -> std::pair<double, double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return {v.a0, v.a0};
            } else if constexpr (std::is_same_v<T, AffineWeight>) {
                double e = v.a0 + v.a1 * R;
                return {std::min(v.a0, e), std::max(v.a0, e)};
            } else {
                // Piecewise-linear extrema sit at nodes or at the cut x = R.
                double lo = w(R), hi = lo;
                for (std::size_t i = 0; i < v.xs.size() && v.xs[i] <= R; ++i) {
                    lo = std::min(lo, v.ys[i]);
                    hi = std::max(hi, v.ys[i]);
                }
                return {lo, hi};
            }
        },
        w.repr());
}

Problem validate_problem(const Problem& raw) {
    if (!std::isfinite(raw.p) || raw.p <= 1.0) throw Error(Errc::BadExponent, "exponent p must exceed 1", "p");
    if (!std::isfinite(raw.R) || raw.R <= 0.0) throw Error(Errc::BadDomain, "R must be positive", "R");
    if (!std::isfinite(raw.lambda)) throw Error(Errc::ValidationError, "lambda must be finite", "lambda");
    if (raw.bc.kind == BoundaryOp::Kind::Robin && !std::isfinite(raw.bc.beta))
        throw Error(Errc::ValidationError, "beta must be finite", "bc.beta");
    if (auto t = std::get_if<TabulatedWeight>(&raw.weight.repr())) {
        if (t->xs.size() < 2 || t->xs.size() != t->ys.size())
            throw Error(Errc::BadTable, "tabulated weight needs matching xs/ys of length >= 2", "weight.xs");
        for (std::size_t i = 1; i < t->xs.size(); ++i)
            if (!(t->xs[i] > t->xs[i - 1])) throw Error(Errc::BadTable, "tabulated xs must increase", "weight.xs");
        if (t->xs.front() != 0.0 || std::abs(t->xs.back() - raw.R) > 1e-12 * raw.R)
            throw Error(Errc::BadTable, "tabulated xs must span [0, R]", "weight.xs");
        for (double y : t->ys)
            if (!std::isfinite(y)) throw Error(Errc::BadTable, "tabulated ys must be finite", "weight.ys");
    }
    auto [lo, hi] = weight_bounds(raw.weight, raw.R);
    if (!(lo > 0.0) || !std::isfinite(hi))
        throw Error(Errc::NonPositiveWeight, "weight must be positive on [0, R]", "weight");
    return raw;
}

}  // namespace lsol
