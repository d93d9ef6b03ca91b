#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lsol/error.hpp"
#include "lsol/quad.hpp"

using namespace lsol;

namespace {

Integrand arctan_tail() { return {[](double s) { return 1.0 / (1.0 + s * s); }, DomainKind::SemiInfinite, 0.0}; }
Integrand root_singular() { return {[](double s) { return 1.0 / std::sqrt(s); }, DomainKind::FiniteSingularLeft, 0.0, 1.0}; }
Integrand inverse_square() { return {[](double t) { return 1.0 / (t * t); }, DomainKind::SemiInfinite, 1.0}; }

}  // namespace

TEST_CASE("integrate reference integrals") {
    auto a = integrate(arctan_tail(), 1e-10);
    CHECK(a.converged);
    CHECK(std::abs(a.value - std::numbers::pi / 2) <= 1e-10);
    auto b = integrate(root_singular(), 1e-10);
    CHECK(std::abs(b.value - 2.0) <= 1e-10);
    auto c = integrate(inverse_square(), 1e-12);
    CHECK(std::abs(c.value - 1.0) <= 1e-12);
}

TEST_CASE("level doubling reduces the error superlinearly") {
    struct Case {
        Integrand ig;
        double exact;
    };
    Case cases[] = {{arctan_tail(), std::numbers::pi / 2}, {root_singular(), 2.0}, {inverse_square(), 1.0}};
    for (auto& c : cases) {
        double prev = std::abs(integrate_at_level(c.ig, 1).value - c.exact);
        int compared = 0;
        for (int level = 2; level <= 12 && prev > 1e-13; ++level) {
            double err = std::abs(integrate_at_level(c.ig, level).value - c.exact);
            CHECK(err < 0.1 * prev);
            prev = err;
            ++compared;
        }
        CHECK(compared >= 1);
    }
}

TEST_CASE("split integration agrees with unsplit") {
    Integrand g{[](double x) { return std::exp(-x) * std::cos(x); }, DomainKind::SemiInfinite, 0.0};
    auto whole = integrate(g, 1e-12);
    g.split_hint = 1.7;
    auto split = integrate(g, 1e-12);
    CHECK(std::abs(whole.value - 0.5) < 1e-11);
    CHECK(std::abs(whole.value - split.value) <= whole.abs_err_est + split.abs_err_est + 1e-14);

    Integrand f{[](double x) { return std::sin(x) + 2.0; }, DomainKind::FiniteRegular, 0.0, 3.0};
    auto fw = integrate(f, 1e-12);
    f.split_hint = 0.4;
    auto fs = integrate(f, 1e-12);
    CHECK(std::abs(fw.value - fs.value) <= fw.abs_err_est + fs.abs_err_est + 1e-14);
}

TEST_CASE("non-finite integrand values are errors") {
    Integrand bad{[](double x) { return std::sqrt(0.5 - x); }, DomainKind::FiniteRegular, 0.0, 1.0};
    try {
        integrate(bad);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonFinite);
    }
}

TEST_CASE("radicand_argmin") {
    double lambda = 1.0, a = 1.0, v0 = 0.8;
    auto rad = [&](double s) { return v0 * v0 - lambda * s * s + 2 * a * s * s * s * s / 4; };
    auto m = radicand_argmin(rad, 0.0, 4.0);
    REQUIRE(m);
    CHECK(std::abs(*m - 1.0) < 1e-6);

    auto mono = [](double s) { return 0.64 + s * s + s * s * s * s / 2; };
    CHECK_FALSE(radicand_argmin(mono, 0.0, 4.0).has_value());

    auto par = [](double s) { return 1.0 + (s - 2.0) * (s - 2.0); };
    auto m2 = radicand_argmin(par, 0.0, 5.0);
    REQUIRE(m2);
    CHECK(std::abs(*m2 - 2.0) < 1e-8);
}
