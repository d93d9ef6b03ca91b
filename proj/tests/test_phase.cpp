#include <cmath>
#include <random>

#include "doctest.h"
#include "lsol/phase.hpp"

using namespace lsol;
using doctest::Approx;

namespace {

// f(u) = (β²+λ)u²/2 − a u^{p+1}/(p+1) − φ(u₀*)
double robin_line_f(double u, double lambda, double a, double p, double beta) {
    double us = std::pow(lambda / a, 1.0 / (p - 1));
    return (beta * beta + lambda) * u * u / 2 - a * std::pow(u, p + 1) / (p + 1) - potential(us, lambda, a, p);
}

}  // namespace

TEST_CASE("energy and potential values") {
    CHECK(energy({0.0, 1.3}, 2.0, 1.5, 4.0) == Approx(1.3 * 1.3 / 2));
    CHECK(energy({1.0, 0.0}, 1.0, 1.0, 3.0) == Approx(0.25));
    CHECK(std::abs(energy({1.0, 1.0}, 0.0, 2.0, 3.0)) < 1e-15);
    CHECK(potential(0.0, 1.0, 1.0, 3.0) == 0.0);
    CHECK(potential(1.0, 1.0, 1.0, 3.0) == Approx(0.25));
    double h = 1e-5;
    double slope = (potential(2.0 + h, 4.0, 1.0, 3.0) - potential(2.0 - h, 4.0, 1.0, 3.0)) / (2 * h);
    CHECK(std::abs(slope) < 1e-8);
}

TEST_CASE("thresholds closed forms") {
    auto n = thresholds(1.0, 1.0, 3.0, BoundaryOp::neumann());
    REQUIRE(n.u_star);
    CHECK(*n.u_star == Approx(1.0));
    CHECK(n.init_min == Approx(1.0));

    auto d = thresholds(1.0, 1.0, 3.0, BoundaryOp::dirichlet());
    REQUIRE(d.v_star);
    CHECK(*d.v_star == Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(d.init_min == Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(d.init_kind == InitKind::DirichletSlope);

    auto r = thresholds(0.0, 1.0, 3.0, BoundaryOp::robin(-1.0));
    REQUIRE(r.u_tilde);
    CHECK(*r.u_tilde == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.init_min == Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK(thresholds(-1.0, 1.0, 3.0, BoundaryOp::neumann()).init_min == 0.0);
    CHECK(thresholds(0.0, 1.0, 3.0, BoundaryOp::dirichlet()).init_min == 0.0);
    CHECK(thresholds(-2.0, 1.0, 3.0, BoundaryOp::robin(1.0)).init_min == 0.0);

    auto rp = thresholds(1.0, 1.0, 3.0, BoundaryOp::robin(1.0));
    CHECK(rp.init_min == Approx(std::sqrt(2 - std::sqrt(3.0))).epsilon(1e-12));
    auto rn = thresholds(1.0, 1.0, 3.0, BoundaryOp::robin(-1.0));
    CHECK(rn.init_min == Approx(std::sqrt(2 + std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("robin_line_crossings") {
    auto [um, up] = robin_line_crossings(1.0, 1.0, 3.0, 1.0);
    CHECK(um == Approx(std::sqrt(2 - std::sqrt(3.0))).epsilon(1e-12));
    CHECK(up == Approx(std::sqrt(2 + std::sqrt(3.0))).epsilon(1e-12));
    CHECK(robin_line_f(std::sqrt(2.0), 1.0, 1.0, 3.0, 1.0) == Approx(0.75));

    auto [m2, p2] = robin_line_crossings(4.0, 1.0, 3.0, 1e-3);
    CHECK(std::abs(m2 - 2.0) < 1e-2);
    CHECK(std::abs(p2 - 2.0) < 1e-2);
    CHECK(m2 <= 2.0);
    CHECK(p2 >= 2.0);
}

TEST_CASE("robin line roots and positivity between them") {
    for (double beta : {-3.0, -1.0, -0.2, 0.5, 2.0}) {
        for (double lambda : {0.5, 1.0, 7.0}) {
            auto [um, up] = robin_line_crossings(lambda, 1.0, 3.0, beta);
            double phis = std::abs(potential(std::sqrt(lambda), lambda, 1.0, 3.0));
            CHECK(std::abs(robin_line_f(um, lambda, 1.0, 3.0, beta)) <= 1e-10 * phis);
            CHECK(std::abs(robin_line_f(up, lambda, 1.0, 3.0, beta)) <= 1e-10 * phis);
            for (int i = 1; i < 50; ++i) {
                double u = um + (up - um) * i / 50.0;
                REQUIRE(robin_line_f(u, lambda, 1.0, 3.0, beta) > 0.0);
            }
        }
    }
}

TEST_CASE("u1_of_u0") {
    CHECK(u1_of_u0(2.0, 0.0, 1.0, 3.0, -1.0) == Approx(std::pow(8.0, 0.25)).epsilon(1e-12));
    // u₁⁴ = u₀⁴ − 2u₀² ≈ 8·1e-12 just above ũ = √2.
    double near = u1_of_u0(std::sqrt(2.0) * (1 + 1e-12), 0.0, 1.0, 3.0, -1.0);
    CHECK(near == Approx(std::pow(8e-12, 0.25)).epsilon(1e-3));
    double u1 = u1_of_u0(3.0, 1.0, 1.0, 3.0, -1.0);
    CHECK(std::abs(energy({u1, 0.0}, 1.0, 1.0, 3.0) - energy({3.0, -3.0}, 1.0, 1.0, 3.0)) <= 1e-10);
    CHECK(u1_of_u0(100.0, 0.0, 1.0, 3.0, -1.0) > u1_of_u0(10.0, 0.0, 1.0, 3.0, -1.0));
    CHECK(u1_of_u0(10.0, 0.0, 1.0, 3.0, -1.0) > u1_of_u0(5.0, 0.0, 1.0, 3.0, -1.0));
    CHECK_THROWS(u1_of_u0(1.0, 0.0, 1.0, 3.0, -1.0));
}

TEST_CASE("u1 residual on random orbits") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> L(-5.0, 5.0), B(-3.0, -0.1), E(0.01, 3.0);
    for (int i = 0; i < 50; ++i) {
        double lambda = L(rng), beta = B(rng);
        auto th = thresholds(lambda, 1.0, 3.0, BoundaryOp::robin(beta));
        double u0 = th.init_min > 0 ? th.init_min * (1 + E(rng)) : E(rng);
        double u1 = u1_of_u0(u0, lambda, 1.0, 3.0, beta);
        CHECK(u1 > 0.0);
        CHECK(u1 < u0);
        double e0 = energy({u0, beta * u0}, lambda, 1.0, 3.0);
        CHECK(std::abs(energy({u1, 0.0}, lambda, 1.0, 3.0) - e0) <= 1e-10 * std::max(1.0, std::abs(e0)));
    }
}

TEST_CASE("energy is even in u and v") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-10.0, 10.0), P(1.1, 6.0), A(0.1, 5.0);
    for (int i = 0; i < 10000; ++i) {
        double u = U(rng), v = U(rng), lambda = U(rng), a = A(rng), p = P(rng);
        double e = energy({u, v}, lambda, a, p);
        REQUIRE(energy({-u, v}, lambda, a, p) == e);
        REQUIRE(energy({u, -v}, lambda, a, p) == e);
    }
}

TEST_CASE("saddle abscissa is a local maximum of the potential") {
    for (double lambda : {0.5, 1.0, 4.0, 30.0}) {
        for (double p : {2.0, 3.0, 5.0}) {
            double us = std::pow(lambda, 1.0 / (p - 1));
            double top = potential(us, lambda, 1.0, p);
            for (int i = 1; i < 200; ++i) {
                double u = 2 * us * i / 200.0;
                if (i == 100) continue;
                REQUIRE(potential(u, lambda, 1.0, p) < top);
            }
        }
    }
}

TEST_CASE("pow1pm1 helpers") {
    for (double t : {1e-12, -3e-9, 1e-4, 0.3, -0.5}) {
        for (double q : {0.5, 2.0, 4.0}) {
            double ref = std::expm1(q * std::log1p(t));
            CHECK(pow1pm1(t, q) == Approx(ref).epsilon(1e-13));
            CHECK(pow1pm1_lin2(t, q) == Approx(q * (q - 1) / 2).epsilon(std::abs(t) * 10 + 1e-12));
        }
    }
}
