#include <cmath>
#include <random>

#include "doctest.h"
#include "lsol/bvp.hpp"
#include "lsol/error.hpp"
#include "lsol/shoot.hpp"
#include "lsol/spectral.hpp"

using namespace lsol;

namespace {

Problem make(double lambda, double p, double a, double R, BoundaryOp bc) {
    return validate_problem({lambda, p, Weight::constant(a), R, bc});
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

GridFunction sample(double R, int n, double (*f)(double)) {
    GridFunction g = make_grid(0.0, R, n, GridMeta::ThetaM);
    for (int i = 0; i <= n; ++i) g.values[i] = f(g.x(i));
    return g;
}

double exact(double x) { return 1.0 / (1.0 - x); }

}  // namespace

TEST_CASE("solve_truncated examples") {
    Problem pr = make(0.0, 3.0, 2.0, 1.0, BoundaryOp::robin(1.0));
    GridFunction th = solve_truncated_continuation(pr, 999.0, 4096);
    // Continuous θ_999(0.5) from an independent shooting solve; L(0.5) = 2 is 4e-3 away.
    CHECK(std::abs(th.at(0.5) - 1.9959726574706) <= 2e-4);
    CHECK(residual(th, pr) <= 1e-10 * (1 + 999.0));

    Problem cold = make(-1.0, 3.0, 1.0, 1.0, BoundaryOp::dirichlet());
    GridFunction small = solve_truncated(cold, 1e-6, 256);
    CHECK(max_abs(small.values) <= 2e-6);
    CHECK(small.values[0] == 0.0);

    Problem neu = make(1.0, 3.0, 1.0, 1.0, BoundaryOp::neumann());
    GridFunction t1 = solve_truncated_continuation(neu, 1.0, 1024);
    GridFunction t10 = solve_truncated_continuation(neu, 10.0, 1024);
    GridFunction t100 = solve_truncated_continuation(neu, 100.0, 1024);
    for (int i = 0; i < 1024; ++i) {
        REQUIRE(t1.values[i] < t10.values[i]);
        REQUIRE(t10.values[i] < t100.values[i]);
    }
}

TEST_CASE("solve_truncated errors") {
    Problem pr = make(1.0, 3.0, 1.0, 1.0, BoundaryOp::neumann());
    CHECK_THROWS_AS(solve_truncated(pr, 10.0, 16), Error);
    CHECK_THROWS_AS(solve_truncated(pr, -1.0, 256), Error);
    GridFunction other = make_grid(0.0, 1.0, 128, GridMeta::ThetaM);
    try {
        solve_truncated(pr, 10.0, 256, other);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MeshMismatch);
    }
}

TEST_CASE("solve_logistic") {
    Problem pr = make(100.0, 3.0, 1.0, 1.0, BoundaryOp::neumann());
    GridFunction q = solve_logistic(pr, 1024);
    CHECK(q.at(0.3) > 0.9);
    CHECK(q.at(0.3) < 1.0);
    CHECK(q.values.back() == 0.0);

    // Sandwich with the rescaled large solution w = λ^{-1/(p-1)} L.
    LargeSolution L = solve_init(pr);
    for (int i = 0; i < q.n; ++i) REQUIRE(q.values[i] <= eval_profile(L, q.x(i)) / std::sqrt(100.0));

    Problem sub = make(0.5 * 9.8696044010893586, 3.0, 1.0, 1.0, BoundaryOp::dirichlet());
    try {
        solve_logistic(sub, 512);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SubcriticalLambda);
    }
}

TEST_CASE("monotone_iterate") {
    Problem pr = make(1.0, 3.0, 1.0, 1.0, BoundaryOp::dirichlet());
    const int n = 512;
    GridFunction lo = make_grid(0.0, 1.0, n, GridMeta::ThetaM);
    GridFunction hi = lo;
    for (double& v : hi.values) v = 10.0;
    GridFunction from_sub = monotone_iterate(pr, 5.0, lo, hi, n, MonotoneStart::Sub);
    GridFunction from_super = monotone_iterate(pr, 5.0, lo, hi, n, MonotoneStart::Super);
    GridFunction newton = solve_truncated(pr, 5.0, n);
    double gap = 0.0, agree = 0.0;
    for (int i = 0; i <= n; ++i) {
        gap = std::max(gap, std::abs(from_sub.values[i] - from_super.values[i]));
        agree = std::max(agree, std::abs(from_super.values[i] - newton.values[i]));
    }
    CHECK(gap <= 2e-9);
    CHECK(agree <= 1e-8);

    GridFunction bad = lo;
    bad.values[n / 2] = 20.0;
    try {
        monotone_iterate(pr, 5.0, bad, hi, n);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotOrdered);
    }
}

TEST_CASE("h_divided_difference") {
    CHECK(h_divided_difference(2.0, 1.0, 2.0) == doctest::Approx(3.0));
    CHECK(h_divided_difference(2.0, 2.0, 3.0) == doctest::Approx(12.0));
    for (double p : {1.5, 2.0, 3.0, 7.0}) CHECK(h_divided_difference(1.0, 0.0, p) == doctest::Approx(1.0));
    double near = h_divided_difference(1.0 + 1e-12, 1.0, 3.0);
    CHECK(std::isfinite(near));
    CHECK(near == doctest::Approx(3.0));
}

TEST_CASE("divided difference exceeds the lower power") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> U(0.01, 10.0);
    for (double p : {2.0, 3.0}) {
        for (int i = 0; i < 1000; ++i) {
            double u = U(rng), v = U(rng);
            if (u == v) continue;
            REQUIRE(h_divided_difference(u, v, p) > std::pow(u, p - 1));
        }
    }
}

TEST_CASE("residual of the exact profile is second order") {
    Problem pr = make(0.0, 3.0, 2.0, 0.9, BoundaryOp::robin(1.0));
    double r512 = residual(sample(0.9, 512, exact), pr);
    double r1024 = residual(sample(0.9, 1024, exact), pr);
    CHECK(r512 <= 1e-3);
    CHECK(r512 / r1024 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("truncated solutions increase with lambda") {
    for (BoundaryOp bc : {BoundaryOp::dirichlet(), BoundaryOp::neumann(), BoundaryOp::robin(-1.0)}) {
        GridFunction prev;
        for (double lambda : {-1.0, 0.0, 1.0, 2.0}) {
            GridFunction th = solve_truncated_continuation(make(lambda, 3.0, 1.0, 1.0, bc), 10.0, 2048);
            if (!prev.values.empty()) {
                int first = bc.is_dirichlet() ? 1 : 0;
                for (int i = first; i < th.n; ++i) REQUIRE(th.values[i] > prev.values[i] - 1e-7);
                for (int i = 1; i < th.n; ++i) REQUIRE(th.values[i] > prev.values[i]);
            }
            prev = th;
        }
    }
}

TEST_CASE("mesh refinement shows second order") {
    struct Case {
        Problem pr;
        double M;
    };
    Case cases[] = {{make(1.0, 3.0, 1.0, 1.0, BoundaryOp::neumann()), 10.0},
                    {make(0.0, 3.0, 2.0, 1.0, BoundaryOp::robin(1.0)), 10.0},
                    {make(4.0, 2.0, 1.0, 1.0, BoundaryOp::dirichlet()), 5.0},
                    {make(1.0, 3.0, 1.0, 1.0, BoundaryOp::robin(-1.0)), 20.0}};
    for (const auto& c : cases) {
        GridFunction a = solve_truncated_continuation(c.pr, c.M, 128);
        GridFunction b = solve_truncated_continuation(c.pr, c.M, 256);
        GridFunction d = solve_truncated_continuation(c.pr, c.M, 512);
        double e1 = 0.0, e2 = 0.0;
        for (int i = 0; i <= 128; ++i) {
            e1 = std::max(e1, std::abs(a.values[i] - b.values[2 * i]));
            e2 = std::max(e2, std::abs(b.values[2 * i] - d.values[4 * i]));
        }
        double order = std::log2(e1 / e2);
        CAPTURE(order);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}
