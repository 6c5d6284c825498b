#pragma once

#include <functional>
#include <vector>

#include "exciton/quadrature.hpp"
#include "exciton/types.hpp"

namespace exciton {

// Point on the cylinder R x rS^1; y is reduced to [-pi r, pi r).
struct CylinderPoint {
    CylinderPoint(double x, double y, Radius r);
    double x;
    double y;
    Radius r;
};

// 1/sqrt(x^2 + 4 r^2 sin^2(y/2r)). Attractive sign is carried by the Hamiltonians.
double coulomb_cylinder(const CylinderPoint& p);

// Angular average of coulomb_cylinder, via the complete elliptic integral.
double v_eff(double x, Radius r);
double y_comparison(double x, Radius r);

// Mean of v_eff over [a, b] (0 <= a < b), with the log singularity handled
// when a = 0.
double v_eff_cell_average(double a, double b, Radius r);

// Integral over the real line of V_eff^1 - Y_1; equals ln 4.
quad::QuadResult l1_gap_veff_y(double rel_tol = 1e-12);

// Transverse-mode coupling V_{m,n}^r(x); depends on |m - n| only.
double v_mode(int m, int n, double x, Radius r);
// All couplings V_k for k = 0..kmax at one x (shared work).
std::vector<double> mode_couplings(int kmax, double x, Radius r);

// Samples of a real function on the staggered grid and its mirror image.
// pos[i] = f(x_i), neg[i] = f(-x_i); same for the derivative.
struct SampledFunction {
    Grid1D grid;
    std::vector<double> pos, neg;
    std::vector<double> dpos, dneg;
    double at_zero;

    static SampledFunction sample(const Grid1D& g, const std::function<double(double)>& f,
                                  const std::function<double(double)>& df);
    SampledFunction even_part() const;
    SampledFunction odd_part() const;
};

// C_0(f, g) = -int_0^inf ln(2x) (fg)' dx + int_-inf^0 ln(-2x) (fg)' dx.
double c0_form(const SampledFunction& f, const SampledFunction& g);
double c0_form(const SampledFunction& f);

// Hadamard finite part of int |f|^2 / |x| dx.
double finite_part_inverse_abs(const SampledFunction& f);

struct FormExpansion {
    double lhs;  // <f, V_eff^r f>
    double rhs;  // -2 ln(r/2) |f(0)|^2 + fp int |f|^2/|x|
    double gap;
};

FormExpansion form_expansion_check(const SampledFunction& f, Radius r);

}  // namespace exciton
