#include <cmath>

#include "doctest.h"
#include "lsol/bvp.hpp"
#include "lsol/shoot.hpp"
#include "lsol/sweeps.hpp"

using namespace lsol;

namespace {

Problem templ(BoundaryOp bc, Weight w = Weight::constant(1.0)) {
    return validate_problem({0.0, 3.0, w, 1.0, bc});
}

Problem at(double lambda, BoundaryOp bc) {
    Problem p = templ(bc);
    p.lambda = lambda;
    return p;
}

}  // namespace

TEST_CASE("lambda sweep is increasing") {
    SweepTable t = lambda_sweep(templ(BoundaryOp::neumann()), {-10, -1, 0, 1, 10}, {0.25, 0.5});
    REQUIRE(t.rows.size() == 5);
    REQUIRE(t.increasing.size() == 2);
    CHECK(t.increasing[0]);
    CHECK(t.increasing[1]);
    for (size_t k = 1; k < t.rows.size(); ++k)
        for (size_t j = 0; j < 2; ++j) CHECK(t.rows[k].values[j] > t.rows[k - 1].values[j]);
    CHECK(std::isnan(t.rows[0].ratios[0]));
    CHECK(std::isfinite(t.rows[4].ratios[0]));
}

TEST_CASE("Dirichlet sweep vanishes at the boundary") {
    SweepTable t = lambda_sweep(templ(BoundaryOp::dirichlet()), {-10, -1, 0, 1, 10}, {0.0, 0.5});
    for (const auto& r : t.rows) {
        CHECK(r.values[0] == 0.0);
        CHECK(r.init > 0.0);
    }
}

TEST_CASE("strongly negative lambda row is small") {
    SweepTable t = lambda_sweep(templ(BoundaryOp::neumann()), {-1e4}, {0.5});
    CHECK(t.rows[0].values[0] <= 0.02);
}

TEST_CASE("variable weight sweep uses the ladders") {
    SweepOptions o;
    o.ladder.n = 512;
    o.ladder.mesh_error = false;
    SweepTable t = lambda_sweep(templ(BoundaryOp::neumann(), Weight::affine(2.0, -1.0)), {0, 1, 4}, {0.25, 0.5}, o);
    CHECK(t.increasing[0]);
    CHECK(t.increasing[1]);
}

TEST_CASE("asymptotic ratio") {
    double r4 = asymptotic_ratio(at(1e4, BoundaryOp::neumann()), 0.5);
    double r2 = asymptotic_ratio(at(1e2, BoundaryOp::neumann()), 0.5);
    CHECK(std::abs(r4 - 1.0) <= 0.05);
    CHECK(std::abs(r4 - 1.0) < std::abs(r2 - 1.0));

    double d4 = asymptotic_ratio(at(1e4, BoundaryOp::dirichlet()), 0.5);
    double d2 = asymptotic_ratio(at(1e2, BoundaryOp::dirichlet()), 0.5);
    CHECK(std::abs(d4 - 1.0) <= 0.05);
    CHECK(std::abs(d4 - 1.0) < std::abs(d2 - 1.0));

    CHECK_THROWS(asymptotic_ratio(at(-1.0, BoundaryOp::neumann()), 0.5));
}

TEST_CASE("scaled logistic solution lies below the large solution") {
    Problem pr = at(100.0, BoundaryOp::neumann());
    GridFunction q = solve_logistic(pr, 1024);
    LargeSolution L = solve_init(pr);
    for (int i = 0; i < q.n; ++i) REQUIRE(std::sqrt(100.0) * q.values[i] <= eval_profile(L, q.x(i)));
}

TEST_CASE("two-sided solution dominates for negative lambda") {
    for (double lambda : {-1.0, -10.0, -30.0}) {
        LargeSolution L = solve_init(at(lambda, BoundaryOp::neumann()));
        TwoSidedSolution u = solve_two_sided(0.0, 1.0, lambda, 1.0, 3.0);
        for (int i = 0; i < 50; ++i) {
            double x = 0.01 + 0.97 * i / 50.0;
            CHECK(eval_profile(L, x) < u(x));
        }
    }
}
