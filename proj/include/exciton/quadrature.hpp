#pragma once

#include <functional>

namespace exciton::quad {

struct QuadResult {
    double value;
    double error;  // estimate of the absolute error
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
// Stops once the error estimate is below max(rel_tol |I|, abs_tol).
QuadResult adaptive(const Integrand& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                    int max_panels = 2000);

// Integrable (log or weak power) singularity at the left end a. Substitutes
// x = a + (b - a) s^4 so the transformed integrand vanishes like s^3 ln s.
QuadResult left_singular(const Integrand& f, double a, double b, double rel_tol, double abs_tol = 0.0);

// Fixed Gauss-Legendre rules, used for the millions of smooth cells.
template <class F>
double gauss_legendre4(F&& f, double a, double b) {
    constexpr double x1 = 0.3399810435848562648026658, w1 = 0.6521451548625461426269361;
    constexpr double x2 = 0.8611363115940525752239465, w2 = 0.3478548451374538573730639;
    const double c = 0.5 * (a + b), d = 0.5 * (b - a);
    return d * (w1 * (f(c - d * x1) + f(c + d * x1)) + w2 * (f(c - d * x2) + f(c + d * x2)));
}

template <class F>
double gauss_legendre8(F&& f, double a, double b) {
    constexpr double x[4] = {0.1834346424956498049394761, 0.5255324099163289858177390,
                             0.7966664774136267395915539, 0.9602898564975362316835609};
    constexpr double w[4] = {0.3626837833783619829651504, 0.3137066458778872873379622,
                             0.2223810344533744705443560, 0.1012285362903762591525314};
    const double c = 0.5 * (a + b), d = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += w[i] * (f(c - d * x[i]) + f(c + d * x[i]));
    return d * s;
}

}  // namespace exciton::quad
