#include "exciton/specfun.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "exciton/types.hpp"

namespace exciton::specfun {

namespace {

std::atomic<double> g_digamma_bias{0.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Bernoulli numbers B_2 .. B_16.
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,     -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0};

// Stirling series for ln Gamma, x >= 15.
double lgamma_stirling(double x) {
    const double half_ln_2pi = 0.918938533204672741780329736406;
    double s = 0.0;
    double xp = x;
    const double x2 = x * x;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        const double n = 2.0 * (k + 1);
        s += kBernoulli[k] / (n * (n - 1.0) * xp);
        xp *= x2;
    }
    return (x - 0.5) * std::log(x) - x + half_ln_2pi + s;
}

double lgamma_positive(double x) {
    // x >= 0.5: shift up into the Stirling range.
    if (x >= 15.0) return lgamma_stirling(x);
    double prod = 1.0;
    while (x < 15.0) {
        prod *= x;
        x += 1.0;
    }
    return lgamma_stirling(x) - std::log(prod);
}

double digamma_unbiased(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("digamma pole at " + std::to_string(x));
    if (x < 0.0) return digamma_unbiased(1.0 - x) - pi * cot_pi(x);
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double s = 0.0;
    double p = inv2;
    for (std::size_t k = 0; k < 7; ++k) {
        const double n = 2.0 * (k + 1);
        s += kBernoulli[k] / n * p;
        p *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - s;
}

// x = n + f with n integer and |f| <= 1/2, both exact.
double reduce_half(double x, long long& n) {
    const double r = std::round(x);
    n = static_cast<long long>(std::fmod(r, 2.0));
    return x - r;
}

// --- Kummer U(a, 2, z) -----------------------------------------------------
// Internally we carry G = z U and G' because the log series for G has no
// 1/z pole and Taylor stepping is posed for the ODE  z G'' - z G' + (1-a) G = 0.

struct GPair {
    double g;
    double dg;
};

GPair g_series(double a, double z) {
    const double lnz = std::log(z);
    double psi_a = digamma(a);
    double psi_k1 = -euler_gamma;        // psi(k+1)
    double psi_k2 = 1.0 - euler_gamma;   // psi(k+2)
    double c = 1.0;                      // (a)_k / ((k+1)! k!)
    double zk = 1.0;                     // z^k
    double s = 0.0, ds = 0.0;
    int small = 0;
    for (int k = 0; k < 200; ++k) {
        const double bracket = lnz + psi_a - psi_k1 - psi_k2;
        const double term = c * zk * z * bracket;
        const double dterm = c * zk * ((k + 1) * bracket + 1.0);
        s += term;
        ds += dterm;
        if (std::abs(term) <= 1e-16 * std::abs(s) && std::abs(dterm) <= 1e-16 * std::abs(ds)) {
            if (++small == 2) break;
        } else {
            small = 0;
        }
        psi_a += 1.0 / (a + k);
        psi_k1 += 1.0 / (k + 1);
        psi_k2 += 1.0 / (k + 2);
        c *= (a + k) / ((k + 2.0) * (k + 1.0));
        zk *= z;
    }
    const double ra1 = rgamma(a - 1.0);
    return {rgamma(a) + ra1 * s, ra1 * ds};
}

// Asymptotic series; converged=false if the minimal term is too large.
GPair g_asymptotic(double a, double z, bool& converged) {
    double u = 1.0, s = 1.0, ds = 0.0;
    double prev = 1.0;
    converged = false;
    const double growth_end = std::abs(a) + std::abs(a - 1.0) + 2.0;
    for (int k = 0; k < 400; ++k) {
        const double next = u * (a + k) * (a - 1.0 + k) / (k + 1.0) * (-1.0 / z);
        if (next == 0.0) {
            converged = true;
            break;
        }
        if (k > growth_end && std::abs(next) > std::abs(prev)) break;
        u = next;
        prev = std::abs(u);
        s += u;
        ds += -(k + 1.0) * u / z;
        if (std::abs(u) < 1e-16 * std::abs(s)) {
            converged = true;
            break;
        }
    }
    if (!converged) converged = prev < 1e-15 * std::abs(s);
    const double zma = std::pow(z, -a);
    const double U = zma * s;
    const double dU = zma * (-a * s / z + ds);
    return {z * U, U + z * dU};
}

// One Taylor step of the G ODE from z0 by t (|t| <= z0/2).
GPair g_taylor_step(double alpha, double z0, GPair at, double t) {
    double gkm = at.g, gk = at.dg;  // g_0, g_1
    double val = gkm + gk * t;
    double der = gk;
    double tp = t;  // t^k for k = 1
    for (int k = 0; k < 400; ++k) {
        const double g2 = ((z0 - k) * (k + 1.0) * gk + (k - alpha) * gkm) / (z0 * (k + 2.0) * (k + 1.0));
        const double dv = (k + 2.0) * g2 * tp;
        tp *= t;
        const double v = g2 * tp;
        val += v;
        der += dv;
        if (std::abs(v) <= 1e-17 * std::abs(val) && std::abs(dv) <= 1e-17 * std::abs(der) && k > 4) break;
        gkm = gk;
        gk = g2;
    }
    return {val, der};
}

GPair g_value(double a, double z) {
    if (!(z > 0.0)) throw DomainError("kummer_u requires z > 0");
    if (is_nonpositive_integer(a)) {
        // U(-m, 2, z) = (-1)^m m! L_m^1(z); dL_m^1/dz = -L_{m-1}^2.
        const int m = static_cast<int>(-a);
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= i;
        const double sg = (m % 2 == 0) ? 1.0 : -1.0;
        const double U = sg * fact * laguerre_assoc(m, 1, z);
        const double dU = m > 0 ? -sg * fact * laguerre_assoc(m - 1, 2, z) : 0.0;
        return {z * U, U + z * dU};
    }
    constexpr double kSeriesMax = 12.0;
    if (z <= kSeriesMax) return g_series(a, z);

    double zs = 30.0;
    GPair start{};
    for (;;) {
        bool ok = false;
        const double zz = std::max(zs, z);
        start = g_asymptotic(a, zz, ok);
        if (ok) {
            zs = zz;
            break;
        }
        zs *= 1.5;
        if (zs > 1e4) throw ConvergenceError("kummer_u: asymptotic series did not converge", zs);
    }
    const double alpha = 1.0 - a;
    double zc = zs;
    while (zc > z) {
        const double t = -std::min(0.5 * zc, zc - z);
        start = g_taylor_step(alpha, zc, start, t);
        zc += t;
        if (zc - z < 1e-14 * z) break;
    }
    return start;
}

}  // namespace

double sin_pi(double x) {
    long long n = 0;
    const double f = reduce_half(x, n);
    const double s = std::sin(pi * f);
    return (n == 0) ? s : -s;
}

double cos_pi(double x) {
    long long n = 0;
    const double f = reduce_half(x, n);
    const double c = std::cos(pi * f);
    return (n == 0) ? c : -c;
}

double cot_pi(double x) {
    long long n = 0;
    const double f = reduce_half(x, n);  // cot has period 1
    if (f == 0.0) throw PoleError("cot_pi pole at " + std::to_string(x));
    return std::cos(pi * f) / std::sin(pi * f);
}

LogGamma log_gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
    if (is_nonpositive_integer(x)) throw PoleError("log_gamma pole at " + std::to_string(x));
    if (x >= 0.5) return {lgamma_positive(x), 1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    const double s = sin_pi(x);
    return {std::log(pi / std::abs(s)) - lgamma_positive(1.0 - x), s > 0 ? 1 : -1};
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return std::exp(-lgamma_positive(x));
    return sin_pi(x) * std::exp(lgamma_positive(1.0 - x)) / pi;
}

double digamma(double x) {
    if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
    const double v = digamma_unbiased(x);
    const double bias = g_digamma_bias.load(std::memory_order_relaxed);
    return bias == 0.0 ? v : v * (1.0 + bias);
}

double kummer_u(double a, double z) {
    if (!(z > 0.0)) throw DomainError("kummer_u requires z > 0, got " + std::to_string(z));
    return g_value(a, z).g / z;
}

double whittaker_w(double alpha, double z) {
    if (!(z >= 0.0)) throw DomainError("whittaker_w requires z >= 0");
    if (z == 0.0) return rgamma(1.0 - alpha);
    return std::exp(-0.5 * z) * g_value(1.0 - alpha, z).g;
}

ValueSlope whittaker_w_with_slope(double alpha, double z) {
    if (!(z > 0.0)) throw DomainError("whittaker_w slope requires z > 0");
    const GPair p = g_value(1.0 - alpha, z);
    const double e = std::exp(-0.5 * z);
    return {e * p.g, e * (p.dg - 0.5 * p.g)};
}

double laguerre_assoc(int n, int k, double z) {
    if (n < 0) throw DomainError("laguerre_assoc requires n >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double l = 1.0 + k - z;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - z) * l - (j + k) * lm) / (j + 1.0);
        lm = l;
        l = next;
    }
    return l;
}

namespace {
double agm(double a, double b) {
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return 0.5 * (a + b);
}
}  // namespace

double elliptic_k(double m) {
    if (!(m >= 0.0) || !(m < 1.0)) throw DomainError("elliptic_k requires 0 <= m < 1");
    return elliptic_k_complement(1.0 - m);
}

double elliptic_k_complement(double mc) {
    if (!(mc > 0.0) || !(mc <= 1.0)) throw DomainError("elliptic_k_complement requires 0 < mc <= 1");
    return pi / (2.0 * agm(1.0, std::sqrt(mc)));
}

double elliptic_e_complement(double mc) {
    if (!(mc > 0.0) || !(mc <= 1.0)) throw DomainError("elliptic_e_complement requires 0 < mc <= 1");
    double a = 1.0, b = std::sqrt(mc);
    double c2 = 1.0 - mc;  // c_0^2 = m
    double w = 0.5;        // 2^{n-1}
    double sum = w * c2;
    for (int i = 0; i < 64; ++i) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        w *= 2.0;
        sum += w * c * c;
        if (std::abs(c) <= 1e-17 * a) break;
    }
    return pi / (2.0 * a) * (1.0 - sum);
}

namespace testing {
void set_digamma_bias(double bias) { g_digamma_bias.store(bias, std::memory_order_relaxed); }
double digamma_bias() { return g_digamma_bias.load(std::memory_order_relaxed); }
}  // namespace testing

}  // namespace exciton::specfun
