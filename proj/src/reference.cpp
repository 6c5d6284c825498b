#include "exciton/reference.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace exciton::reference {

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (n < 0 || a.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("jacobi: bad shape");
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += A(i, i) * A(i, i);
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        }
        if (off <= 1e-34 * diag || off == 0.0) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
                const double c = 1.0 / std::hypot(1.0, t), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double digamma(double x) { return boost::math::digamma(x); }

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / boost::math::tgamma(x);
}

double elliptic_k(double m) { return boost::math::ellint_1(std::sqrt(m)); }

double f_even(double alpha, double r) {
    constexpr double gamma = 0.577215664901532860606512090082402431;
    return digamma(1.0 - alpha) + 2.0 * gamma + 0.5 / alpha - std::log(alpha) + std::log(r);
}

double v_eff_trapezoid(double x, double r) {
    const double pi = 3.141592653589793238462643383279502884;
    auto g = [&](double u) {
        const double s = 2.0 * r * std::sin(0.5 * u);
        return 1.0 / std::sqrt(x * x + s * s);
    };
    long n = 16;
    double sum = 0.0;
    for (long j = 0; j < n; ++j) sum += g(2.0 * pi * j / n);
    double prev = sum / n;
    while (n < (1L << 24)) {
        for (long j = 0; j < n; ++j) sum += g(2.0 * pi * (j + 0.5) / n);
        n *= 2;
        const double cur = sum / n;
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace exciton::reference
