#pragma once

#include <vector>

#include "exciton/tridiag.hpp"
#include "exciton/types.hpp"

namespace exciton {

struct MassPair {
    MassPair(double m1, double m2);
    double m1, m2;
};

// Smaller eigenvalue of [[1/mu, -1/m2], [-1/m2, 1/m2]], mu = m1 m2/(m1 + m2).
double lambda_minus(const MassPair& masses);

// Transverse modes |n| <= mode_cut on a half-line grid, one parity sector.
// Vectors are laid out x-major: v[i * modes() + (n + mode_cut)].
struct ModeBlockOperator {
    int mode_cut;
    Grid1D grid;
    Radius r;
    Parity parity;
    // H_n = -(1/2) d^2/dx^2 + n^2/(2 r^2) - V_eff, one per mode
    std::vector<TridiagonalOperator> diag_blocks;
    // coupling[k][i]: cell average of V_k over cell i, k = 0..2 mode_cut.
    // Block (m, n) of the operator is -coupling[|m - n|] for m != n.
    std::vector<std::vector<double>> coupling;

    int modes() const { return 2 * mode_cut + 1; }
    long dimension() const { return static_cast<long>(grid.size()) * modes(); }
    // entry (m, n) of the x-local block at node i, including the diagonal
    double local_entry(int i, int a, int b) const;
    std::vector<double> apply(const std::vector<double>& v) const;
    // v'Hv with the kinetic part in difference form
    double quadratic_form(const std::vector<double>& v) const;
    TridiagonalOperator mode_block(int n) const { return diag_blocks.at(n + mode_cut); }
};

ModeBlockOperator assemble_full(Radius r, int mode_cut, const Grid1D& grid, Parity parity);

// Number of eigenvalues below sigma (block LDL' inertia).
long full_inertia(const ModeBlockOperator& op, double sigma);

struct FullEigen {
    double value;
    std::vector<double> vector;
};

// Lowest `levels` eigenvalues of one sector. The ground state comes from
// shift-invert Lanczos; higher levels from inverse iteration; every value is
// certified by an inertia count.
std::vector<FullEigen> full_eigenpairs(const ModeBlockOperator& op, int levels);
std::vector<double> full_spectrum(const ModeBlockOperator& op, int levels);

// Dense reference (Eigen), for dimension <= 2000.
std::vector<double> full_spectrum_dense(const ModeBlockOperator& op, int levels);

struct FullLevel {
    double energy;
    Parity parity;
};
// Both sectors merged; negative levels only.
std::vector<FullLevel> full_spectrum_merged(Radius r, int mode_cut, const Grid1D& grid, int levels);

struct SchurParams {
    double kinetic_eps = 0.25;  // fraction of p^2 kept in the substitute resolvent
    double split_eps = 0.1;     // couplings split at |x| = r^{1 - split_eps}
};

// lambda_r = K ln^2 r
double schur_lambda(Radius r, double K = 8.0);

// sup_m sum_{n != m} of the block-norm envelopes of the sandwiched couplings.
double offdiag_schur_bound(Radius r, int mode_cut, double lambda, const SchurParams& params = {});

// Default 2-D grid: spacing min(0.02, r/10); half-length 40 decay lengths of
// the `levels`-th H_C level, capped at 30.
Grid1D default_grid_2d(Radius r, int levels = 1);

}  // namespace exciton
