#include <random>

#include "doctest.h"
#include "exciton/reference.hpp"
#include "exciton/schrodinger1d.hpp"
#include "exciton/solvable.hpp"
#include "exciton/tridiag.hpp"
#include "oracles.hpp"

using namespace exciton;

namespace {

TridiagonalOperator random_tridiag(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TridiagonalOperator t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    for (auto& d : t.diag) d = u(rng);
    for (auto& e : t.offdiag) e = u(rng);
    return t;
}

std::vector<double> dense(const TridiagonalOperator& t) {
    const int n = t.size();
    std::vector<double> a(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        a[i * n + i] = t.diag[i];
        if (i + 1 < n) a[i * n + i + 1] = a[(i + 1) * n + i] = t.offdiag[i];
    }
    return a;
}

// half-length ~40 decay lengths of the H_C ground state
Grid1D ground_grid(double r, double h) {
    const double L = 40.0 / std::sqrt(2.0 * std::abs(hc_spectrum(Radius(r), 1).front().energy));
    return Grid1D(L, static_cast<int>(std::ceil(L / h)));
}

}  // namespace

TEST_SUITE("schrodinger1d") {

TEST_CASE("Toeplitz spectrum") {
    const int n = 40;
    TridiagonalOperator t;
    t.diag.assign(n, 2.0);
    t.offdiag.assign(n - 1, -1.0);
    const auto ev = eigvals_bisection(t, n);
    for (int k = 1; k <= n; ++k)
        CHECK(ev[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * oracle::pi / (n + 1))).epsilon(1e-12));
}

TEST_CASE("random tridiagonals against dense Jacobi") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_tridiag(rng, 50);
        const auto ref = reference::jacobi_eigenvalues(dense(t), 50);
        const auto ev = eigvals_bisection(t, 50);
        for (int i = 0; i < 50; ++i) CHECK(std::abs(ev[i] - ref[i]) < 1e-10);
        for (const auto& p : eig_tridiag(t, 5)) {
            CHECK(eigen_residual(t, p) <= 1e-8 * (std::abs(p.value) + t.norm1()));
            double nrm = 0.0;
            for (double v : p.vector) nrm += v * v;
            CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    TridiagonalOperator bad;
    bad.diag = {1.0, 2.0};
    bad.offdiag = {};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("free odd operator is positive") {
    const Grid1D g(10.0, 500);
    const auto t = assemble_heff(g, std::vector<double>(g.size(), 0.0), Parity::Odd);
    CHECK(eig_tridiag(t, 1).front().value >= 0.0);
}

TEST_CASE("assembly layout") {
    const Grid1D g(5.0, 50);
    const auto e = assemble_heff(g, Radius(0.3), Parity::Even), o = assemble_heff(g, Radius(0.3), Parity::Odd);
    const double k = 1.0 / (g.spacing() * g.spacing());
    CHECK(o.diag[0] - e.diag[0] == doctest::Approx(k));
    for (int i = 1; i < g.size(); ++i) CHECK(o.diag[i] == e.diag[i]);
    CHECK(e.offdiag == o.offdiag);
    CHECK(e.offdiag[0] == -0.5 * k);
}

TEST_CASE("ground state is even, deepening and close to H_C") {
    const auto s = heff_spectrum(Radius(1e-2), 3, ground_grid(1e-2, 1e-2 / 16));
    REQUIRE(!s.empty());
    CHECK(s.front().parity == Parity::Even);

    double prev = 0.0;
    for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double e = heff_spectrum(Radius(r), 1, ground_grid(r, r / 16)).front().energy;
        CHECK(e < prev);
        if (r < 1e-2) CHECK(e < -0.125);
        prev = e;
    }
    const double ec = hc_spectrum(Radius(1e-3), 1).front().energy;
    const double ee = heff_spectrum(Radius(1e-3), 1, ground_grid(1e-3, 1e-3 / 32)).front().energy;
    CHECK(std::abs(ee - ec) < 1e-3 * std::abs(ec));
}

TEST_CASE("second-order self-convergence once h resolves r") {
    const auto rich = heff_ground_richardson(Radius(0.1), ground_grid(0.1, 0.1 / 128));
    CHECK(rich.ratio >= 3.5);
    CHECK(rich.ratio <= 4.5);
}

TEST_CASE("ground energy decreases with L and n") {
    const Radius r(0.1);
    const double h = 0.1 / 16;
    double prev = 0.0;
    for (double L : {4.0, 8.0, 16.0}) {
        const double e = heff_spectrum(r, 1, Grid1D(L, static_cast<int>(std::lround(L / h)))).front().energy;
        CHECK(e < prev);
        prev = e;
    }
    prev = 0.0;
    for (int n : {1000, 2000, 4000, 8000}) {
        const double e = heff_spectrum(r, 1, Grid1D(12.0, n)).front().energy;
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("default grid") {
    const auto g = default_grid(Radius(1e-3));
    CHECK(g.half_length() == 60.0);
    CHECK(g.spacing() <= 1e-3 / 16 + 1e-18);
    CHECK(default_grid(Radius(0.5)).spacing() == doctest::Approx(0.01));
}

}  // TEST_SUITE
