#pragma once

#include <vector>

#include "exciton/types.hpp"

namespace exciton {

// One bound state of H_C.
struct HcLevel {
    int k;  // index within its parity sector, from 1
    Parity parity;
    double alpha;
    double energy;  // -1/(2 alpha^2)
};

// psi(1 - alpha) + 2 gamma + 1/(2 alpha) - ln alpha + ln r
double f_even(double alpha, Radius r);

// Root of f_even(., r) in (k-1, k).
double even_alpha(int k, Radius r);

// Lowest `levels` levels of both sectors, ascending in energy.
std::vector<HcLevel> hc_spectrum(Radius r, int levels);

HcLevel odd_level(int n);
HcLevel even_level(int k, Radius r);

// -1/(2 ln r)
double ground_alpha_asymptotic(Radius r);

// Unnormalized eigenfunction in the rescaled variable z.
double hc_eigenfunction(const HcLevel& level, double z);

// (psi'(-eps) - psi'(eps))/2 + alpha (ln r - ln(alpha eps)) psi(0) for the
// even extension of W_{alpha,1/2}; zero for integer alpha (odd functions).
double boundary_residual(double alpha, Radius r, double eps);

}  // namespace exciton
