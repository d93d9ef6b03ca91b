#include <cmath>

#include "doctest.h"
#include "lsol/bvp.hpp"
#include "lsol/error.hpp"
#include "lsol/ladders.hpp"
#include "lsol/shoot.hpp"

using namespace lsol;

namespace {

Problem make(double lambda, const Weight& w, BoundaryOp bc, double R = 1.0) {
    return validate_problem({lambda, 3.0, w, R, bc});
}

const Weight kDecreasing = Weight::affine(2.0, -1.0);
constexpr double kTol = 1e-4;

double sup_vs_profile(const GridFunction& g, const LargeSolution& L) {
    double e = 0.0;
    for (int i = 0; i <= g.n; ++i) e = std::max(e, std::abs(g.values[i] - eval_profile(L, g.x(i))));
    return e;
}

double window_min(const GridFunction& g) {
    double m = INFINITY;
    for (double v : g.values) m = std::min(m, v);
    return m;
}

double window_max(const GridFunction& g) {
    double m = -INFINITY;
    for (double v : g.values) m = std::max(m, v);
    return m;
}

}  // namespace

TEST_CASE("minimal solution matches the shooting profile for constant weight") {
    Problem pr = make(1.0, Weight::constant(1.0), BoundaryOp::neumann());
    LadderResult mn = minimal_solution(pr, 0.9, kTol);
    double e = sup_vs_profile(mn.window, solve_init(pr));
    CAPTURE(e);
    CHECK(e <= std::max(kTol, 2e-4));
}

TEST_CASE("minimal solution sits between the constant-weight bounds") {
    Problem pr = make(1.0, kDecreasing, BoundaryOp::neumann());
    LadderResult mn = minimal_solution(pr, 0.9, kTol);
    LargeSolution lo = solve_init(make(1.0, Weight::constant(2.0), pr.bc));
    LargeSolution hi = solve_init(make(1.0, Weight::constant(1.0), pr.bc));
    for (int i = 0; i <= mn.window.n; ++i) {
        double x = mn.window.x(i);
        REQUIRE(eval_profile(lo, x) <= mn.window.values[i]);
        REQUIRE(mn.window.values[i] <= eval_profile(hi, x));
    }
    CHECK(mn.window.meta == GridMeta::Ladder);
    CHECK(mn.report.window_hi == doctest::Approx(0.9));
}

TEST_CASE("M-rungs increase nodewise") {
    Problem pr = make(1.0, kDecreasing, BoundaryOp::robin(-1.0));
    std::optional<GridFunction> prev;
    for (double M : {10.0, 40.0, 160.0, 640.0, 2560.0}) {
        GridFunction th = solve_truncated_continuation(pr, M, 1024, prev);
        if (prev)
            for (int i = 0; i <= th.n; ++i) REQUIRE(th.values[i] >= prev->values[i]);
        prev = std::move(th);
    }
}

TEST_CASE("maximal solution for constant weight") {
    Problem pr = make(1.0, Weight::constant(1.0), BoundaryOp::neumann());
    LadderResult mn = minimal_solution(pr, 0.9, kTol);
    LadderResult mx = maximal_solution(pr, 0.9, kTol);
    REQUIRE(mn.window.n == mx.window.n);
    for (int i = 0; i <= mn.window.n; ++i) {
        CHECK(std::abs(mx.window.values[i] - mn.window.values[i]) <= 2 * kTol);
        REQUIRE(mn.window.values[i] <= mx.window.values[i] + kTol);
    }
    for (const auto& s : mx.report.steps) CHECK(s.sup_diff >= 0.0);
}

TEST_CASE("epsilon-rungs decrease nodewise") {
    GridFunction prev;
    for (double eps : {0.05, 0.025, 0.0125}) {
        Problem pr = make(1.0, kDecreasing, BoundaryOp::neumann(), 1.0 - eps);
        LadderOptions o;
        o.mesh_error = false;
        LadderResult r = minimal_solution(pr, 0.9, kTol, o);
        if (!prev.values.empty())
            for (int i = 0; i <= 90; ++i) {
                double x = 0.01 * i;
                REQUIRE(r.window.at(x) <= prev.at(x) + kTol);
            }
        prev = r.window;
    }
}

TEST_CASE("uniqueness_check examples") {
    UniquenessReport a = uniqueness_check(make(1.0, Weight::affine(3.0, -1.0), BoundaryOp::robin(-1.0)), 0.9, kTol);
    CHECK(a.gap <= 1e-3);
    CHECK(a.hypotheses);
    CHECK(a.a_non_increasing);
    CHECK(a.lambda_nonnegative);
    CHECK(a.bc_covered);

    UniquenessReport b = uniqueness_check(make(-5.0, Weight::constant(1.0), BoundaryOp::dirichlet()), 0.9, kTol);
    CHECK(b.gap <= 1e-3);
    CHECK_FALSE(b.hypotheses);
    CHECK_FALSE(b.lambda_nonnegative);

    UniquenessReport c = uniqueness_check(make(1.0, Weight::affine(1.0, 2.0), BoundaryOp::neumann()), 0.9, kTol);
    CHECK_FALSE(c.hypotheses);
    CHECK_FALSE(c.a_non_increasing);
    CHECK(std::isfinite(c.gap));
    CHECK(c.tolerance >= kTol);
}

TEST_CASE("scaled_supersolution_check examples") {
    Problem neu = make(1.0, Weight::constant(1.0), BoundaryOp::neumann());
    LadderResult mn = minimal_solution(neu, 0.9, kTol);
    SupersolutionReport s = scaled_supersolution_check(mn.full, neu, 0.1);
    CHECK(s.min_residual >= -1e-6 * s.scale);
    CHECK_FALSE(s.boundary_slack.has_value());
    CHECK(s.rho == doctest::Approx(1.0 / 0.9));
    CHECK(s.gamma == doctest::Approx(1.0));

    Problem rob = make(1.0, Weight::constant(1.0), BoundaryOp::robin(-1.0));
    SupersolutionReport r = scaled_supersolution_check(minimal_solution(rob, 0.9, kTol).full, rob, 0.1);
    REQUIRE(r.boundary_slack.has_value());
    CHECK(*r.boundary_slack > 0.0);

    Problem neg = make(-1.0, Weight::constant(1.0), BoundaryOp::neumann());
    try {
        scaled_supersolution_check(mn.full, neg, 0.1);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::HypothesisViolation);
    }
}

TEST_CASE("minimal solution grows without bound as lambda increases") {
    double prev = 0.0;
    for (double lambda : {1.0, 10.0, 100.0, 1000.0}) {
        LadderResult r = minimal_solution(make(lambda, kDecreasing, BoundaryOp::neumann()), 0.9, kTol);
        double m = window_min(r.window);
        CHECK(m > prev);
        prev = m;
    }
    CHECK(prev > 10.0);
}

TEST_CASE("maximal solution decays as lambda decreases") {
    double prev = INFINITY;
    for (double lambda : {-1.0, -10.0, -100.0, -1000.0}) {
        LadderResult r = maximal_solution(make(lambda, kDecreasing, BoundaryOp::neumann()), 0.9, kTol);
        double m = window_max(r.window);
        CHECK(m < prev);
        prev = m;
    }
    CAPTURE(prev);
    CHECK(prev <= 0.05);
}

TEST_CASE("maximal solution lies below the smallest-weight solution") {
    Problem pr = make(1.0, kDecreasing, BoundaryOp::robin(-1.0));
    LadderResult mx = maximal_solution(pr, 0.9, kTol);
    LargeSolution hi = solve_init(make(1.0, Weight::constant(1.0), pr.bc));
    for (int i = 0; i <= mx.window.n; ++i) REQUIRE(mx.window.values[i] <= eval_profile(hi, mx.window.x(i)));
}

TEST_CASE("ladder argument checks") {
    Problem pr = make(1.0, Weight::constant(1.0), BoundaryOp::neumann());
    CHECK_THROWS_AS(minimal_solution(pr, 1.0, kTol), Error);
    CHECK_THROWS_AS(minimal_solution(pr, 0.9, 0.0), Error);
}
