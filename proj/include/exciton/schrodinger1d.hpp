#pragma once

#include <vector>

#include "exciton/tridiag.hpp"
#include "exciton/types.hpp"

namespace exciton {

// Half-length 60 and spacing min(0.01, r/16): the spacing has to resolve the
// length scale r of the potential's core, not just the orbit.
Grid1D default_grid(Radius r);

// Cell averages (1/h) int_cell V_eff^r for every cell of the half-line grid.
std::vector<double> heff_cell_potential(const Grid1D& grid, Radius r);

// -(1/2) d^2/dx^2 - V_eff^r on the half-line with the parity mirror at 0
// and a zero ghost beyond the last node.
TridiagonalOperator assemble_heff(const Grid1D& grid, Radius r, Parity parity);
TridiagonalOperator assemble_heff(const Grid1D& grid, const std::vector<double>& vbar, Parity parity,
                                  double shift = 0.0);

struct HeffLevel {
    double energy;
    Parity parity;
};

// Negative eigenvalues of both sectors, merged ascending, at most `levels`.
std::vector<HeffLevel> heff_spectrum(Radius r, int levels, const Grid1D& grid);

// Ground energy on h, h/2, h/4 and the self-convergence ratio
// |E(h) - E(h/2)| / |E(h/2) - E(h/4)|.
struct Richardson {
    double e_h, e_h2, e_h4;
    double ratio;
    double extrapolated;  // E(h/4) + (E(h/4) - E(h/2))/3
};
Richardson heff_ground_richardson(Radius r, const Grid1D& coarse);

}  // namespace exciton
