#include <cmath>

#include "doctest.h"
#include "lsol/error.hpp"
#include "lsol/grid.hpp"

using namespace lsol;

TEST_CASE("make_grid") {
    GridFunction g = make_grid(0.0, 2.0, 16, GridMeta::Ladder);
    CHECK(g.values.size() == 17);
    CHECK(g.h() == doctest::Approx(0.125));
    CHECK(g.x(16) == 2.0);
    CHECK(std::string(grid_meta_name(g.meta)) == "ladder");
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 4, GridMeta::ThetaM), Error);
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 16, GridMeta::ThetaM), Error);
}

TEST_CASE("cubic interpolation is exact on cubics and at nodes") {
    GridFunction g = make_grid(-1.0, 2.0, 24, GridMeta::ThetaM);
    auto f = [](double x) { return 1 - 2 * x + 0.5 * x * x * x; };
    for (int i = 0; i <= g.n; ++i) g.values[i] = f(g.x(i));
    for (int i = 0; i <= g.n; ++i) CHECK(g.at(g.x(i)) == doctest::Approx(g.values[i]).epsilon(1e-14));
    for (double x : {-1.0, -0.93, 0.0, 0.371, 1.5, 1.99, 2.0}) CHECK(g.at(x) == doctest::Approx(f(x)).epsilon(1e-12));
    CHECK_THROWS_AS(g.at(2.1), Error);
}

TEST_CASE("solve_tridiagonal") {
    // -u'' = 1 on a small mesh; Thomas against the closed form x(1-x)/2.
    int n = 10;
    double h = 1.0 / n;
    std::vector<double> sub(n - 1, -1.0), diag(n - 1, 2.0), sup(n - 1, -1.0), rhs(n - 1, h * h);
    REQUIRE(solve_tridiagonal(sub, diag, sup, rhs));
    for (int i = 1; i < n; ++i) CHECK(rhs[i - 1] == doctest::Approx(0.5 * i * h * (1 - i * h)).epsilon(1e-12));

    std::vector<double> z{0.0, 0.0}, zd{0.0, 1.0}, r{1.0, 1.0};
    CHECK_FALSE(solve_tridiagonal(z, zd, z, r));
}
