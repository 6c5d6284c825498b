#include <random>

#include "doctest.h"
#include "exciton/potential.hpp"
#include "exciton/reference.hpp"
#include "oracles.hpp"

using namespace exciton;

namespace {

SampledFunction gaussian(const Grid1D& g, double shift = 0.0) {
    return SampledFunction::sample(
        g, [=](double x) { return std::exp(-(x - shift) * (x - shift)); },
        [=](double x) { return -2.0 * (x - shift) * std::exp(-(x - shift) * (x - shift)); });
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("coulomb_cylinder") {
    CHECK(coulomb_cylinder({1.0, 0.0, Radius(0.7)}) == doctest::Approx(1.0));
    const double r = 0.4;
    CHECK(coulomb_cylinder({0.0, oracle::pi * r, Radius(r)}) == doctest::Approx(1.0 / (2 * r)).epsilon(1e-15));
    const double s = std::sin(oracle::pi / 4);
    CHECK(coulomb_cylinder({3.0, oracle::pi * 0.5 / 2, Radius(0.5)}) ==
          doctest::Approx(1.0 / std::sqrt(9.0 + 4 * 0.25 * s * s)).epsilon(1e-15));
    // y is periodic in 2 pi r
    CHECK(coulomb_cylinder({0.3, 0.2 + 2 * oracle::pi * r, Radius(r)}) ==
          doctest::Approx(coulomb_cylinder({0.3, 0.2, Radius(r)})).epsilon(1e-13));
    CHECK_THROWS_AS(coulomb_cylinder({0.0, 0.0, Radius(1.0)}), DomainError);
    CHECK_THROWS_AS(coulomb_cylinder({0.0, 2 * oracle::pi, Radius(1.0)}), DomainError);
}

TEST_CASE("v_eff scaling, evenness and closed form") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lx(-4, 2), lr(-4, 1);
    for (int i = 0; i < 100; ++i) {
        const double x = std::pow(10.0, lx(rng)), r = std::pow(10.0, lr(rng));
        CHECK(std::abs(r * v_eff(x, Radius(r)) / v_eff(x / r, Radius(1.0)) - 1.0) < 1e-13);
        CHECK(v_eff(-x, Radius(r)) == v_eff(x, Radius(r)));
    }
    for (double x : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
        const double ref = reference::v_eff_trapezoid(x, 1.0);
        CHECK(std::abs(v_eff(x, Radius(1.0)) / ref - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(v_eff(0.0, Radius(1.0)), DomainError);
}

TEST_CASE("v_eff near zero is -ln|x|/pi + ln 8/pi") {
    // constant pinned by the quadrature oracle at x = 1e-6
    const double c = reference::v_eff_trapezoid(1e-6, 1.0) + std::log(1e-6) / oracle::pi;
    CHECK(c == doctest::Approx(std::log(8.0) / oracle::pi).epsilon(1e-8));
    CHECK(std::abs(v_eff(0.01, Radius(1.0)) - (std::log(8.0) - std::log(0.01)) / oracle::pi) < 1e-3);
}

TEST_CASE("v_eff dominates Y and the gap decays like x^-3") {
    for (int i = 0; i < 10000; ++i) {
        const double x = 1e-4 + 50.0 * i / 10000.0;
        CHECK(v_eff(x, Radius(1.0)) >= y_comparison(x, Radius(1.0)));
    }
    CHECK(y_comparison(0.0, Radius(0.5)) == 1.0);
    CHECK(y_comparison(1.0, Radius(0.5)) == doctest::Approx(1.0 / (2 * 0.5 * std::sqrt(2.0))).epsilon(1e-15));
    // V - Y = 1/s^3 + (9/4)/s^5 + O(s^-7), s = sqrt(x^2 + 4)
    for (double x : {10.0, 30.0, 100.0}) {
        const double s = std::hypot(x, 2.0);
        const double d = v_eff(x, Radius(1.0)) - y_comparison(x, Radius(1.0));
        CHECK(d == doctest::Approx(1 / (s * s * s) + 2.25 / std::pow(s, 5)).epsilon(5e-3 * 100 / (x * x)));
    }
    const double far = v_eff(1e6, Radius(1.0)) - y_comparison(1e6, Radius(1.0));
    CHECK(std::abs(far) <= 1.01e-18);
}

TEST_CASE("l1 gap equals ln 4") {
    const auto q = l1_gap_veff_y();
    CHECK(std::abs(q.value - std::log(4.0)) < 1e-6);
    const auto q2 = l1_gap_veff_y(0.5e-12);
    CHECK(std::abs(q.value - q2.value) < 1e-8);
}

TEST_CASE("v_mode") {
    const Radius r(0.3);
    for (double x : {0.01, 0.2, 1.0, 4.0}) {
        CHECK(v_mode(2, 2, x, r) == v_eff(x, r));
        CHECK(v_mode(0, 3, x, r) == v_mode(3, 0, x, r));
        CHECK(v_mode(0, 3, x, r) == v_mode(5, 8, x, r));
    }
    // both evaluation paths against quadrature, including either side of the switch
    for (int k : {1, 2, 5, 11}) {
        for (double X : {0.01, 0.1, 0.2499, 0.2501, 1.0, 6.0}) {
            const double ref = oracle::v_mode_quadrature(k, X, 1.0);
            CHECK(std::abs(v_mode(0, k, X, Radius(1.0)) - ref) <= 1e-9 * std::abs(ref) + 1e-15);
        }
    }
    const auto all = mode_couplings(6, 0.15, r);
    for (int k = 0; k <= 6; ++k) CHECK(all[k] == doctest::Approx(v_mode(0, k, 0.15, r)).epsilon(1e-13));
    CHECK_THROWS_AS(v_mode(0, 1, 0.0, r), DomainError);
}

TEST_CASE("v_mode power envelope") {
    // |V_k(x)| <= C (k^-0.7 x^-0.7 + 1/k), C fitted by maximizing the ratio on a grid
    double C = 0.0;
    for (int k = 1; k <= 16; ++k)
        for (int i = 0; i <= 200; ++i) {
            const double x = 0.01 * std::pow(1000.0, i / 200.0);
            C = std::max(C, std::abs(v_mode(0, k, x, Radius(1.0))) / (std::pow(k * x, -0.7) + 1.0 / k));
        }
    CHECK(C < 1.0);
    CHECK(std::abs(v_mode(0, 4, 0.2, Radius(1.0))) <= C * (std::pow(0.8, -0.7) + 0.25));
}

TEST_CASE("v_mode decays outside the core") {
    // |V_k^1(x)| <= const / (k x^3) for x >= 1, i.e. const r^{3 eps}/k at x = r^{-eps}
    double worst = 0.0;
    for (int k = 1; k <= 16; ++k)
        for (double x = 1.0; x <= 50.0; x += 0.5) worst = std::max(worst, std::abs(v_mode(0, k, x, Radius(1.0))) * k * x * x * x);
    CHECK(worst < 1.0);
}

TEST_CASE("c0_form") {
    // bump supported in x > 1: C0 equals int |f|^2/|x|
    auto bump = [](double x) {
        const double u = x - 2.5;
        return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    };
    auto dbump = [&](double x) {
        const double u = x - 2.5;
        return std::abs(u) < 1.0 ? bump(x) * (-2.0 * u / ((1 - u * u) * (1 - u * u))) : 0.0;
    };
    const Grid1D g(6.0, 6000);
    const auto b = SampledFunction::sample(g, bump, dbump);
    boost::math::quadrature::tanh_sinh<double> q;
    const double ref = q.integrate([&](double x) { return bump(x) * bump(x) / x; }, 1.5, 3.5);
    CHECK(c0_form(b) == doctest::Approx(ref).epsilon(1e-6));

    // parity sectors are orthogonal for C0
    const Grid1D g2(8.0, 8000);
    const auto f = gaussian(g2, 0.3);
    CHECK(std::abs(c0_form(f.even_part(), f.odd_part())) < 1e-12);

    // Gaussian: C0 = fp int |f|^2/|x| + ln 4 |f(0)|^2
    const Grid1D g3(8.0, 80000);
    const double want = oracle::fp_gaussian_squared() + std::log(4.0);
    CHECK(c0_form(gaussian(g3)) == doctest::Approx(want).epsilon(1e-6));
    CHECK(finite_part_inverse_abs(gaussian(g3)) == doctest::Approx(oracle::fp_gaussian_squared()).epsilon(1e-5));

    const Grid1D short_grid(1.0, 100);
    CHECK_THROWS_AS(c0_form(gaussian(short_grid)), DomainError);
}

TEST_CASE("form expansion") {
    const Grid1D g(6.0, 6000);
    const auto f = gaussian(g);
    const double g2 = form_expansion_check(f, Radius(1e-2)).gap, g3 = form_expansion_check(f, Radius(1e-3)).gap;
    CHECK(g2 / g3 >= 2.0);
    // regression baseline
    CHECK(form_expansion_check(f, Radius(0.5)).gap == doctest::Approx(0.632178764706).epsilon(1e-9));

    // odd f: the delta term drops out of rhs
    const auto o = SampledFunction::sample(
        g, [](double x) { return x * std::exp(-x * x); }, [](double x) { return (1 - 2 * x * x) * std::exp(-x * x); });
    CHECK(form_expansion_check(o, Radius(0.1)).rhs == form_expansion_check(o, Radius(0.01)).rhs);
    CHECK(form_expansion_check(o, Radius(0.1)).rhs == finite_part_inverse_abs(o));
    CHECK_THROWS_AS(form_expansion_check(f, Radius(1.0)), DomainError);
}

}  // TEST_SUITE
