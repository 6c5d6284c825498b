#pragma once

// Test-side oracles, independent of the library's own algorithms.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// the Boost double-exponential rules default to sqrt(eps)
inline constexpr double kTol = 1e-14;

// U(a, 2, z) = (1/Gamma(a)) int_0^inf e^{-zt} t^{a-1} (1+t)^{1-a} dt, a > 0.
// On [0, 1] t = s^{1/a} removes the endpoint singularity.
inline double kummer_u_laplace(double a, double z) {
    boost::math::quadrature::tanh_sinh<double> near;
    auto g = [&](double s) {
        const double t = std::pow(s, 1.0 / a);
        return std::exp(-z * t + (1.0 - a) * std::log1p(t));
    };
    boost::math::quadrature::exp_sinh<double> far;
    auto f = [&](double t) { return std::exp(-z * t + (a - 1.0) * std::log(t) + (1.0 - a) * std::log1p(t)); };
    const double head = near.integrate(g, 0.0, 1.0, kTol) / boost::math::tgamma(a + 1.0);
    return head + far.integrate(f, 1.0, std::numeric_limits<double>::infinity(), kTol) / boost::math::tgamma(a);
}

// int_0^{pi/2} dt / sqrt(1 - m sin^2 t)
inline double elliptic_k_quadrature(double m) {
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([&](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); }, 0.0, pi / 2, kTol);
}

// L_n^k(z) = sum_j (-1)^j C(n+k, n-j) z^j / j!
inline double laguerre_closed(int n, int k, double z) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
        s += (j % 2 ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(n + k, n - j) * std::pow(z, j) /
             boost::math::factorial<double>(j);
    return s;
}

// fp int e^{-2x^2}/|x| dx by eps-splitting, 2 [int_eps^inf e^{-2x^2}/x dx + ln eps],
// at eps and eps/2 with one Richardson step (the error is O(eps^2)).
inline double fp_gaussian_squared(double eps = 1e-6) {
    auto part = [](double e) { return 2.0 * (0.5 * boost::math::expint(1, 2.0 * e * e) + std::log(e)); };
    return (4.0 * part(eps / 2) - part(eps)) / 3.0;
}

// Sixth-order central second difference.
template <class F>
double second_derivative(F&& f, double z, double h) {
    return (2.0 * f(z - 3 * h) - 27.0 * f(z - 2 * h) + 270.0 * f(z - h) - 490.0 * f(z) + 270.0 * f(z + h) -
            27.0 * f(z + 2 * h) + 2.0 * f(z + 3 * h)) /
           (180.0 * h * h);
}

// (1/2pi) int_{-pi}^{pi} cos(k u) / sqrt(X^2 + 4 sin^2(u/2)) du / r, composite
// tanh-sinh on [0, pi] (the integrand is even in u).
inline double v_mode_quadrature(int k, double x, double r) {
    boost::math::quadrature::tanh_sinh<double> q;
    const double X = std::abs(x) / r;
    auto f = [&](double u) {
        const double s = 2.0 * std::sin(0.5 * u);
        return std::cos(k * u) / std::sqrt(X * X + s * s);
    };
    // split near the peak at u = 0
    const double m = std::min(pi, 4.0 * X + 1e-3);
    return (q.integrate(f, 0.0, m, kTol) + (m < pi ? q.integrate(f, m, pi, kTol) : 0.0)) / pi / r;
}

// Smallest eigenvalue of [[a, b], [b, d]] in closed form.
inline double min_eig_2x2(double a, double b, double d) {
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b * b);
}

}  // namespace oracle
