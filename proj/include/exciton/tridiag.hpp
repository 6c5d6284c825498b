#pragma once

#include <optional>
#include <vector>

#include "exciton/types.hpp"

namespace exciton {

// Symmetric tridiagonal matrix. `row_sum` holds d_i + e_{i-1} + e_i when the
// caller knows it exactly (discrete Laplacians, where forming it in floating
// point would cancel); quadratic forms are then evaluated as
//   v'Tv = sum c_i v_i^2 + sum (-e_i)(v_{i+1} - v_i)^2
// which keeps low eigenvalues accurate when the diagonal is ~1/h^2.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::vector<double> row_sum;
    Parity parity = Parity::Even;
    std::optional<Grid1D> grid;

    int size() const { return static_cast<int>(diag.size()); }
    double norm1() const;
    void validate() const;
    std::vector<double> apply(const std::vector<double>& v) const;
    double quadratic_form(const std::vector<double>& v) const;
};

struct EigenPair {
    double value;
    std::vector<double> vector;  // unit Euclidean norm
};

// Number of eigenvalues strictly below sigma.
int sturm_count(const TridiagonalOperator& t, double sigma);

// The `count` lowest eigenpairs: Sturm bisection, inverse iteration with
// reorthogonalization, Rayleigh-quotient polish.
std::vector<EigenPair> eig_tridiag(const TridiagonalOperator& t, int count);

// Only the eigenvalues, by bisection alone.
std::vector<double> eigvals_bisection(const TridiagonalOperator& t, int count);

double eigen_residual(const TridiagonalOperator& t, const EigenPair& p);

}  // namespace exciton
