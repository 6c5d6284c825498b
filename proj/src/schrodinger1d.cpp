#include "exciton/schrodinger1d.hpp"

#include <algorithm>
#include <cmath>

#include "exciton/potential.hpp"
#include "parallel.hpp"

namespace exciton {

Grid1D default_grid(Radius r) {
    constexpr double L = 60.0;
    const double h = std::min(0.01, r / 16.0);
    return Grid1D(L, static_cast<int>(std::ceil(L / h)));
}

std::vector<double> heff_cell_potential(const Grid1D& grid, Radius r) {
    std::vector<double> v(grid.size());
    detail::parallel_for(grid.size(), [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) v[i] = v_eff_cell_average(grid.cell_lo(i), grid.cell_hi(i), r);
    });
    return v;
}

TridiagonalOperator assemble_heff(const Grid1D& grid, const std::vector<double>& vbar, Parity parity,
                                  double shift) {
    const int n = grid.size();
    if (static_cast<int>(vbar.size()) != n) throw DomainError("potential does not match the grid");
    const double h = grid.spacing();
    const double k = 1.0 / (h * h);
    TridiagonalOperator t;
    t.parity = parity;
    t.grid = grid;
    t.diag.resize(n);
    t.row_sum.resize(n);
    t.offdiag.assign(n - 1, -0.5 * k);
    for (int i = 0; i < n; ++i) {
        t.diag[i] = k + shift - vbar[i];
        t.row_sum[i] = shift - vbar[i];
    }
    // ghost at -x_0 equals +-u_0
    if (parity == Parity::Even) {
        t.diag[0] = 0.5 * k + shift - vbar[0];
    } else {
        t.diag[0] = 1.5 * k + shift - vbar[0];
        t.row_sum[0] += k;
    }
    t.row_sum[n - 1] += 0.5 * k;
    return t;
}

TridiagonalOperator assemble_heff(const Grid1D& grid, Radius r, Parity parity) {
    return assemble_heff(grid, heff_cell_potential(grid, r), parity);
}

namespace {

std::vector<HeffLevel> spectrum_from_potential(const Grid1D& grid, const std::vector<double>& vbar, int levels) {
    std::vector<HeffLevel> all;
    for (Parity p : {Parity::Even, Parity::Odd}) {
        const auto t = assemble_heff(grid, vbar, p);
        const int count = std::min(levels, t.size());
        for (const auto& pair : eig_tridiag(t, count))
            if (pair.value < 0.0) all.push_back({pair.value, p});
    }
    std::sort(all.begin(), all.end(), [](const HeffLevel& a, const HeffLevel& b) { return a.energy < b.energy; });
    if (static_cast<int>(all.size()) > levels) all.resize(levels);
    return all;
}

double ground_even(const Grid1D& grid, Radius r) {
    const auto t = assemble_heff(grid, r, Parity::Even);
    return eig_tridiag(t, 1).front().value;
}

}  // namespace

std::vector<HeffLevel> heff_spectrum(Radius r, int levels, const Grid1D& grid) {
    if (levels < 1) throw DomainError("heff_spectrum needs levels >= 1");
    return spectrum_from_potential(grid, heff_cell_potential(grid, r), levels);
}

Richardson heff_ground_richardson(Radius r, const Grid1D& coarse) {
    Richardson out{};
    out.e_h = ground_even(coarse, r);
    out.e_h2 = ground_even(coarse.refined(2), r);
    out.e_h4 = ground_even(coarse.refined(4), r);
    out.ratio = std::abs(out.e_h - out.e_h2) / std::abs(out.e_h2 - out.e_h4);
    out.extrapolated = out.e_h4 + (out.e_h4 - out.e_h2) / 3.0;
    return out;
}

}  // namespace exciton
