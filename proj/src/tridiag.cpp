#include "exciton/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace exciton {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double TridiagonalOperator::norm1() const {
    const int n = size();
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = std::abs(diag[i]);
        if (i > 0) s += std::abs(offdiag[i - 1]);
        if (i + 1 < n) s += std::abs(offdiag[i]);
        best = std::max(best, s);
    }
    return best;
}

void TridiagonalOperator::validate() const {
    const int n = size();
    if (n < 1) throw DomainError("tridiagonal operator is empty");
    if (static_cast<int>(offdiag.size()) != n - 1) throw DomainError("offdiag must have n-1 entries");
    if (!row_sum.empty() && static_cast<int>(row_sum.size()) != n)
        throw DomainError("row_sum must have n entries");
    if (grid && grid->size() != n) throw DomainError("operator size differs from its grid");
    for (double d : diag)
        if (!std::isfinite(d)) throw DomainError("non-finite diagonal entry");
    for (double e : offdiag)
        if (!std::isfinite(e)) throw DomainError("non-finite off-diagonal entry");
}

std::vector<double> TridiagonalOperator::apply(const std::vector<double>& v) const {
    const int n = size();
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = diag[i] * v[i];
        if (i > 0) s += offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) s += offdiag[i] * v[i + 1];
        y[i] = s;
    }
    return y;
}

double TridiagonalOperator::quadratic_form(const std::vector<double>& v) const {
    const int n = size();
    double s = 0.0;
    if (row_sum.empty()) {
        for (int i = 0; i < n; ++i) {
            s += diag[i] * v[i] * v[i];
            if (i + 1 < n) s += 2.0 * offdiag[i] * v[i] * v[i + 1];
        }
        return s;
    }
    for (int i = 0; i < n; ++i) {
        s += row_sum[i] * v[i] * v[i];
        if (i + 1 < n) {
            const double d = v[i + 1] - v[i];
            s -= offdiag[i] * d * d;
        }
    }
    return s;
}

namespace {
int sturm_count_impl(const TridiagonalOperator& t, double sigma, double tiny) {
    const int n = t.size();
    int count = 0;
    double q = t.diag[0] - sigma;
    for (int i = 0;; ++i) {
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
        if (i + 1 == n) break;
        const double e = t.offdiag[i];
        q = t.diag[i + 1] - sigma - e * e / q;
    }
    return count;
}
}  // namespace

int sturm_count(const TridiagonalOperator& t, double sigma) {
    return sturm_count_impl(t, sigma, kEps * std::max(t.norm1(), 1e-300));
}

namespace {

struct Bracket {
    double lo, hi;
};

// j-th eigenvalue (0-based) by bisection between Gershgorin bounds.
// Sturm counts are only reliable to ~eps*||T||, so stop there.
Bracket bisect(const TridiagonalOperator& t, int j, double gl, double gu) {
    const double abs_tol = kEps * t.norm1();
    const double tiny = std::max(abs_tol, 1e-300);
    double lo = gl, hi = gu;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (hi - lo <= std::max(abs_tol, 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)))) break;
        if (sturm_count_impl(t, mid, tiny) > j)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

void gershgorin(const TridiagonalOperator& t, double& gl, double& gu) {
    const int n = t.size();
    gl = std::numeric_limits<double>::infinity();
    gu = -gl;
    for (int i = 0; i < n; ++i) {
        double rad = 0.0;
        if (i > 0) rad += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n) rad += std::abs(t.offdiag[i]);
        gl = std::min(gl, t.diag[i] - rad);
        gu = std::max(gu, t.diag[i] + rad);
    }
    const double pad = 2.0 * kEps * std::max({std::abs(gl), std::abs(gu), 1e-300}) * n + 1e-300;
    gl -= pad;
    gu += pad;
}

// Partially pivoted LU of T - sigma I, LAPACK gttrf layout.
struct TridiagLU {
    std::vector<double> dl, d, du, du2;
    std::vector<char> swapped;

    TridiagLU(const TridiagonalOperator& t, double sigma) {
        const int n = t.size();
        d.resize(n);
        for (int i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;
        dl = t.offdiag;
        du = t.offdiag;
        du2.assign(std::max(n - 2, 0), 0.0);
        swapped.assign(std::max(n - 1, 0), 0);
        const double tiny = kEps * std::max(t.norm1(), 1e-300);
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = tiny;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (d[n - 1] == 0.0) d[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const int n = static_cast<int>(d.size());
        for (int i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (int i = n - 3; i >= 0; --i) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void normalize(std::vector<double>& v) {
    const double nrm = std::sqrt(dot(v, v));
    for (double& x : v) x /= nrm;
}

}  // namespace

std::vector<double> eigvals_bisection(const TridiagonalOperator& t, int count) {
    t.validate();
    if (count < 1 || count > t.size()) throw DomainError("eigenvalue count must be in [1, n]");
    double gl = 0.0, gu = 0.0;
    gershgorin(t, gl, gu);
    std::vector<double> out;
    for (int j = 0; j < count; ++j) {
        const Bracket b = bisect(t, j, gl, gu);
        out.push_back(0.5 * (b.lo + b.hi));
        gl = b.lo;  // eigenvalue j+1 is not below eigenvalue j
    }
    return out;
}

double eigen_residual(const TridiagonalOperator& t, const EigenPair& p) {
    const auto tv = t.apply(p.vector);
    double s = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) {
        const double d = tv[i] - p.value * p.vector[i];
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<EigenPair> eig_tridiag(const TridiagonalOperator& t, int count) {
    t.validate();
    const int n = t.size();
    if (count < 1 || count > n) throw DomainError("eigenvalue count must be in [1, n]");
    const double tnorm = t.norm1();
    double gl = 0.0, gu = 0.0;
    gershgorin(t, gl, gu);

    std::vector<EigenPair> pairs;
    for (int j = 0; j < count; ++j) {
        const Bracket b = bisect(t, j, gl, gu);
        gl = b.lo;
        const double sigma = 0.5 * (b.lo + b.hi);

        TridiagLU lu(t, sigma);
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 7.3 * i + 0.37 * j);
        normalize(v);
        for (int it = 0; it < 4; ++it) {
            lu.solve(v);
            // two Gram-Schmidt sweeps against lower pairs handle close clusters
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& p : pairs) {
                    const double c = dot(v, p.vector);
                    for (int i = 0; i < n; ++i) v[i] -= c * p.vector[i];
                }
            normalize(v);
        }
        double lambda = t.quadratic_form(v);
        const double slack = std::max(1e3 * (b.hi - b.lo), 1e-8 * (std::abs(sigma) + tnorm));
        if (!(std::abs(lambda - sigma) <= slack)) lambda = sigma;

        // deterministic sign: largest component positive
        const auto big = std::max_element(v.begin(), v.end(), [](double a, double c) { return std::abs(a) < std::abs(c); });
        if (*big < 0.0)
            for (double& x : v) x = -x;

        EigenPair pair{lambda, std::move(v)};
        const double res = eigen_residual(t, pair);
        if (!(res <= 1e-8 * (std::abs(lambda) + tnorm)))
            throw ConvergenceError("inverse iteration stagnated for eigenvalue " + std::to_string(j), res);
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

}  // namespace exciton
