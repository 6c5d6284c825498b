#pragma once

namespace exciton::specfun {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

struct LogGamma {
    double value;  // ln|Gamma(x)|
    int sign;      // sign of Gamma(x)
};

// sin(pi x), cos(pi x), cot(pi x) with exact argument reduction.
double sin_pi(double x);
double cos_pi(double x);
double cot_pi(double x);

LogGamma log_gamma(double x);
// 1/Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);
double digamma(double x);

// U(a, 2, z), z > 0.
double kummer_u(double a, double z);

struct ValueSlope {
    double value;
    double slope;
};

// W_{alpha,1/2}(z) = z e^{-z/2} U(1 - alpha, 2, z); W(0) = 1/Gamma(1 - alpha).
double whittaker_w(double alpha, double z);
ValueSlope whittaker_w_with_slope(double alpha, double z);

// Associated Laguerre L_n^k(z).
double laguerre_assoc(int n, int k, double z);
inline double laguerre_assoc(int n, double z) { return laguerre_assoc(n, 1, z); }

// Complete elliptic integrals in terms of the parameter m = k^2.
double elliptic_k(double m);
// Same integral addressed by the complementary parameter mc = 1 - m, which
// keeps full precision as m -> 1.
double elliptic_k_complement(double mc);
double elliptic_e_complement(double mc);

namespace testing {
// Fault injection for the validation suite: digamma returns psi(x)*(1 + bias).
void set_digamma_bias(double bias);
double digamma_bias();
}  // namespace testing

}  // namespace exciton::specfun
