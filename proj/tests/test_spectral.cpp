#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lsol/bvp.hpp"
#include "lsol/error.hpp"
#include "lsol/spectral.hpp"

using namespace lsol;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// −ν² with tanh ν = ν/2, from an independent bisection.
double robin_minus_two_sigma() {
    double lo = 1.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (std::tanh(mid) - mid / 2 > 0 ? lo : hi) = mid;
    }
    double nu = 0.5 * (lo + hi);
    return -nu * nu;
}

double sigma(const Potential& q, BoundaryOp l, BoundaryOp r, int n, bool rich = true) {
    return principal_eigenvalue(q, l, r, 0.0, 1.0, n, rich).sigma1;
}

}  // namespace

TEST_CASE("analytic principal eigenvalues") {
    auto D = BoundaryOp::dirichlet();
    CHECK(std::abs(sigma(0.0, D, D, 4096) - kPi2) <= 1e-5);
    CHECK(std::abs(sigma(0.0, BoundaryOp::neumann(), D, 4096) - kPi2 / 4) <= 1e-5);
    double ref = robin_minus_two_sigma();
    CHECK(ref == doctest::Approx(-3.6672558245).epsilon(1e-9));
    CHECK(std::abs(sigma(0.0, BoundaryOp::robin(-2.0), D, 4096) - ref) <= 1e-4);
}

TEST_CASE("bad mesh") {
    try {
        principal_eigenvalue(0.0, BoundaryOp::dirichlet(), BoundaryOp::dirichlet(), 0.0, 1.0, 16);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadMesh);
    }
}

TEST_CASE("second-order mesh convergence on analytic cases") {
    auto D = BoundaryOp::dirichlet();
    struct Case {
        BoundaryOp left;
        double exact;
    };
    Case cases[] = {{D, kPi2}, {BoundaryOp::neumann(), kPi2 / 4}, {BoundaryOp::robin(-2.0), robin_minus_two_sigma()}};
    for (const auto& c : cases) {
        double e1 = std::abs(sigma(0.0, c.left, D, 128, false) - c.exact);
        double e2 = std::abs(sigma(0.0, c.left, D, 256, false) - c.exact);
        double order = std::log2(e1 / e2);
        CAPTURE(order);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

TEST_CASE("potential shift and strict monotonicity") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> C(-3.0, 3.0), B(-3.0, 3.0), U(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        double c0 = C(rng), c1 = C(rng), bl = B(rng);
        std::function<double(double)> q = [=](double x) { return c0 + c1 * std::sin(3 * x); };
        std::function<double(double)> q1 = [=](double x) { return c0 + c1 * std::sin(3 * x) + 1.0; };
        double bump_at = U(rng);
        std::function<double(double)> qb = [=](double x) {
            return c0 + c1 * std::sin(3 * x) + std::exp(-100 * (x - bump_at) * (x - bump_at));
        };
        BoundaryOp l = BoundaryOp::robin(bl), r = BoundaryOp::dirichlet();
        double s = sigma(q, l, r, 512, false);
        CHECK(std::abs(sigma(q1, l, r, 512, false) - (s + 1.0)) <= 1e-10);
        CHECK(sigma(qb, l, r, 512, false) > s);
    }
}

TEST_CASE("eigenfunction is positive") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> C(-5.0, 5.0), B(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        double c0 = C(rng), c1 = C(rng);
        BoundaryOp l = BoundaryOp::robin(B(rng));
        BoundaryOp r = (k % 2) ? BoundaryOp::dirichlet() : BoundaryOp::robin(B(rng));
        std::function<double(double)> q = [=](double x) { return c0 + c1 * x * x; };
        EigenResult e = principal_eigenvalue(q, l, r, 0.0, 1.0, 256);
        double mx = 0.0;
        for (int i = 1; i < e.eigenfunction.n; ++i) {
            REQUIRE(e.eigenfunction.values[i] > 0.0);
            mx = std::max(mx, e.eigenfunction.values[i]);
        }
        CHECK(mx <= 1.0 + 1e-12);
    }
}

TEST_CASE("logistic solution is a principal eigenfunction") {
    Problem pr = validate_problem({20.0, 3.0, Weight::constant(1.0), 1.0, BoundaryOp::neumann()});
    GridFunction q = solve_logistic(pr, 1024);
    std::vector<double> pot(q.values.size());
    for (size_t i = 0; i < pot.size(); ++i) pot[i] = 20.0 * q.values[i] * q.values[i] - 20.0;
    EigenResult e = principal_eigenvalue(pot, pr.bc, BoundaryOp::dirichlet(), 0.0, 1.0, 1024);
    CHECK(std::abs(e.sigma1) <= 5e-6);
}

TEST_CASE("comparison certificate") {
    Problem pr = validate_problem({1.0, 3.0, Weight::constant(1.0), 1.0, BoundaryOp::neumann()});
    const int n = 1024;
    GridFunction t10 = solve_truncated_continuation(pr, 10.0, n);
    GridFunction t20 = solve_truncated_continuation(pr, 20.0, n);
    GridFunction t5 = solve_truncated_continuation(pr, 5.0, n);

    ComparisonReport same = comparison_certificate(t10, t10, pr);
    CHECK(same.sigma_H >= -1e-6);
    CHECK(same.forces_equality);

    ComparisonReport half = comparison_certificate(t10, t5, pr);
    CHECK(half.sigma_H > half.sigma_u - 1e-8);

    ComparisonReport up = comparison_certificate(t20, t10, pr);
    CHECK(up.sigma_H > up.sigma_v);

    GridFunction close = t10;
    for (double& v : close.values) v += 1e-12;
    ComparisonReport c = comparison_certificate(close, t10, pr);
    CHECK(std::isfinite(c.sigma_H));

    GridFunction other = solve_truncated_continuation(pr, 10.0, 512);
    try {
        comparison_certificate(t10, other, pr);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MeshMismatch);
    }
}
