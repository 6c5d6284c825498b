#pragma once

#include <vector>

// Independent implementations used as oracles by the validation suite and
// tests. Slow and simple on purpose; never called by the solvers.
namespace exciton::reference {

// Eigenvalues of a dense symmetric n x n matrix (row-major) by cyclic Jacobi
// rotations, ascending.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// Boost.Math evaluations.
double digamma(double x);
double rgamma(double x);
double elliptic_k(double m);

// psi(1 - alpha) + 2 gamma + 1/(2 alpha) - ln alpha + ln r with Boost's digamma.
double f_even(double alpha, double r);

// (1/2 pi r) int_{-pi r}^{pi r} dy / sqrt(x^2 + 4 r^2 sin^2(y/2r)) by the
// periodic trapezoid rule, doubling until settled.
double v_eff_trapezoid(double x, double r);

}  // namespace exciton::reference
