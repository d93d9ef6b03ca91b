#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace lsol {

/// Boundary operator at x = 0. Neumann is Robin with beta = 0 for dispatch.
struct BoundaryOp {
    enum class Kind { Dirichlet, Neumann, Robin };

    Kind kind = Kind::Neumann;
    double beta = 0.0;

    static BoundaryOp dirichlet() { return {Kind::Dirichlet, 0.0}; }
    static BoundaryOp neumann() { return {Kind::Neumann, 0.0}; }
    static BoundaryOp robin(double b) { return {Kind::Robin, b}; }

    bool is_dirichlet() const { return kind == Kind::Dirichlet; }
    bool is_neumann() const { return kind == Kind::Neumann || (kind == Kind::Robin && beta == 0.0); }
    /// Robin coefficient; 0 for Neumann. Meaningless for Dirichlet.
    double robin_beta() const { return kind == Kind::Robin ? beta : 0.0; }

    friend bool operator==(const BoundaryOp& l, const BoundaryOp& r) {
        if (l.is_dirichlet() || r.is_dirichlet()) return l.is_dirichlet() && r.is_dirichlet();
        return l.robin_beta() == r.robin_beta();
    }
};

struct ConstantWeight {
    double a0;
};
struct AffineWeight {
    double a0, a1;
};
struct TabulatedWeight {
    std::vector<double> xs, ys;
};

/// Positive weight a(x) on [0, R].
class Weight {
public:
    using Repr = std::variant<ConstantWeight, AffineWeight, TabulatedWeight>;

    Weight() : repr_(ConstantWeight{1.0}) {}
    Weight(Repr r) : repr_(std::move(r)) {}

    static Weight constant(double a0) { return Weight(ConstantWeight{a0}); }
    static Weight affine(double a0, double a1) { return Weight(AffineWeight{a0, a1}); }
    static Weight tabulated(std::vector<double> xs, std::vector<double> ys) {
        return Weight(TabulatedWeight{std::move(xs), std::move(ys)});
    }

    const Repr& repr() const { return repr_; }
    bool is_constant() const { return std::holds_alternative<ConstantWeight>(repr_); }
    double constant_value() const;

    /// Unchecked evaluation; tabulated data is clamped outside its span.
    double operator()(double x) const;

    /// True when a is non-increasing on [0, R].
    bool non_increasing(double R) const;

private:
    Repr repr_;
};

struct Problem {
    double lambda = 0.0;
    double p = 3.0;
    Weight weight;
    double R = 1.0;
    BoundaryOp bc;
};

Problem validate_problem(const Problem& raw);

/// Checked evaluation on [0, R].
double weight_eval(const Weight& w, double x, double R);

/// (a_ell, a_m): minimum and maximum of a over [0, R].
std::pair<double, double> weight_bounds(const Weight& w, double R);

}  // namespace lsol
