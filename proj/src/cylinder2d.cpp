#include "exciton/cylinder2d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exciton/potential.hpp"
#include "exciton/quadrature.hpp"
#include "exciton/schrodinger1d.hpp"
#include "exciton/solvable.hpp"
#include "parallel.hpp"

namespace exciton {

MassPair::MassPair(double a, double b) : m1(a), m2(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("masses must be positive and finite");
}

double lambda_minus(const MassPair& p) {
    const double a = 1.0 / p.m1 + 1.0 / p.m2, b = -1.0 / p.m2, d = 1.0 / p.m2;
    const double plus = 0.5 * (a + d) + std::hypot(0.5 * (a - d), b);
    return (1.0 / (p.m1 * p.m2)) / plus;  // det / lambda_+ avoids cancellation
}

Grid1D default_grid_2d(Radius r, int levels) {
    // long enough for the shallowest requested H_C level to decay ~40 lengths
    const auto hc = hc_spectrum(r, std::max(levels, 1));
    const double L = std::min(30.0, 40.0 / std::sqrt(2.0 * std::abs(hc.back().energy)));
    const double h = std::min(0.02, r / 10.0);
    return Grid1D(L, static_cast<int>(std::ceil(L / h)));
}

namespace {

// coupling[k][i] for k = 0..kmax
std::vector<std::vector<double>> cell_couplings(Radius r, int kmax, const Grid1D& grid) {
    const int n = grid.size();
    std::vector<std::vector<double>> c(kmax + 1, std::vector<double>(n));
    c[0] = heff_cell_potential(grid, r);
    if (kmax == 0) return c;
    const double h = grid.spacing();
    const double near = 8.0 * std::max(double(r), h);
    detail::parallel_for(n, [&](long lo, long hi) {
        std::vector<double> acc(kmax + 1);
        for (long i = lo; i < hi; ++i) {
            const double a = grid.cell_lo(i), b = grid.cell_hi(i);
            if (a < near) {
                // couplings far below V_0 only need absolute accuracy
                const double floor = 1e-15 * h * c[0][i];
                for (int k = 1; k <= kmax; ++k) {
                    auto f = [&](double x) { return v_mode(0, k, x, r); };
                    const auto q = (a == 0.0) ? quad::left_singular(f, a, b, 1e-12, floor)
                                              : quad::adaptive(f, a, b, 1e-12, floor);
                    c[k][i] = q.value / h;
                }
                continue;
            }
            std::fill(acc.begin(), acc.end(), 0.0);
            auto add = [&](double x, double w) {
                const auto v = mode_couplings(kmax, x, r);
                for (int k = 1; k <= kmax; ++k) acc[k] += w * v[k];
            };
            const double mid = 0.5 * (a + b), half = 0.5 * h;
            if (64.0 * h <= a) {
                constexpr double x1 = 0.3399810435848562648026658, w1 = 0.6521451548625461426269361;
                constexpr double x2 = 0.8611363115940525752239465, w2 = 0.3478548451374538573730639;
                for (double s : {-1.0, 1.0}) {
                    add(mid + s * half * x1, w1);
                    add(mid + s * half * x2, w2);
                }
            } else {
                constexpr double xs[4] = {0.1834346424956498049394761, 0.5255324099163289858177390,
                                          0.7966664774136267395915539, 0.9602898564975362316835609};
                constexpr double ws[4] = {0.3626837833783619829651504, 0.3137066458778872873379622,
                                          0.2223810344533744705443560, 0.1012285362903762591525314};
                for (double s : {-1.0, 1.0})
                    for (int j = 0; j < 4; ++j) add(mid + s * half * xs[j], ws[j]);
            }
            for (int k = 1; k <= kmax; ++k) c[k][i] = 0.5 * acc[k];
        }
    }, 256);
    return c;
}

ModeBlockOperator build(Radius r, int mode_cut, const Grid1D& grid, Parity parity,
                        const std::vector<std::vector<double>>& coupling) {
    ModeBlockOperator op{mode_cut, grid, r, parity, {}, coupling};
    const double inv2r2 = 0.5 / (double(r) * double(r));
    for (int n = -mode_cut; n <= mode_cut; ++n)
        op.diag_blocks.push_back(assemble_heff(grid, coupling[0], parity, n * n * inv2r2));
    return op;
}

double op_norm_estimate(const ModeBlockOperator& op) {
    double nrm = 0.0;
    for (const auto& t : op.diag_blocks) nrm = std::max(nrm, t.norm1());
    for (std::size_t k = 1; k < op.coupling.size(); ++k)
        nrm += 2.0 * *std::max_element(op.coupling[k].begin(), op.coupling[k].end());
    return nrm;
}

// Block LDL' of H - sigma for the x-major block-tridiagonal layout.
// Off-diagonal blocks are -c I with c = 1/(2h^2); the Schur complements
// S_i = A_i - sigma - c^2 S_{i-1}^{-1} are stored inverted.
class BlockFactor {
public:
    BlockFactor(const ModeBlockOperator& op, double sigma) : M_(op.modes()), n_(op.grid.size()) {
        const double h = op.grid.spacing();
        c_ = 0.5 / (h * h);
        inv_.resize(static_cast<std::size_t>(n_) * M_ * M_);
        Eigen::MatrixXd S(M_, M_);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M_, M_);
        Eigen::LDLT<Eigen::MatrixXd> ldlt;
        for (int i = 0; i < n_; ++i) {
            for (int a = 0; a < M_; ++a)
                for (int b = 0; b < M_; ++b) S(a, b) = op.local_entry(i, a, b);
            S.diagonal().array() -= sigma;
            if (i > 0) S -= c_ * c_ * block(i - 1);
            ldlt.compute(S);
            const auto& D = ldlt.vectorD();
            bool singular = ldlt.info() != Eigen::Success;
            for (int a = 0; a < M_; ++a) {
                if (D(a) < 0.0) ++negatives_;
                if (D(a) == 0.0) singular = true;
            }
            Eigen::Map<Eigen::MatrixXd> out(inv_.data() + static_cast<std::size_t>(i) * M_ * M_, M_, M_);
            if (singular) {
                // exactly singular pivot: nudge, as the scalar Sturm sequence does
                S.diagonal().array() -= std::numeric_limits<double>::epsilon() * (S.norm() + 1.0);
                ldlt.compute(S);
            }
            out = ldlt.solve(I);
        }
    }

    long negatives() const { return negatives_; }
    bool positive_definite() const { return negatives_ == 0; }

    void solve(std::vector<double>& b) const {
        using Vec = Eigen::Map<Eigen::VectorXd>;
        Eigen::VectorXd tmp(M_);
        for (int i = 1; i < n_; ++i) {
            Vec zi(b.data() + static_cast<std::size_t>(i) * M_, M_);
            Vec zp(b.data() + static_cast<std::size_t>(i - 1) * M_, M_);
            zi.noalias() += c_ * (block(i - 1) * zp);
        }
        for (int i = n_ - 1; i >= 0; --i) {
            Vec xi(b.data() + static_cast<std::size_t>(i) * M_, M_);
            tmp = xi;
            if (i + 1 < n_) tmp += c_ * Vec(b.data() + static_cast<std::size_t>(i + 1) * M_, M_);
            xi.noalias() = block(i) * tmp;
        }
    }

private:
    Eigen::Map<const Eigen::MatrixXd> block(int i) const {
        return Eigen::Map<const Eigen::MatrixXd>(inv_.data() + static_cast<std::size_t>(i) * M_ * M_, M_, M_);
    }

    int M_, n_;
    double c_ = 0.0;
    long negatives_ = 0;
    std::vector<double> inv_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double normalize(std::vector<double>& v) {
    const double nrm = std::sqrt(dot(v, v));
    for (double& x : v) x /= nrm;
    return nrm;
}

std::vector<double> start_vector(long dim, int seed) {
    std::vector<double> v(dim);
    for (long i = 0; i < dim; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 + 3.1 * i + 1.3 * seed);
    normalize(v);
    return v;
}

void deflate(std::vector<double>& v, const std::vector<FullEigen>& found) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : found) axpy(-dot(v, e.vector), e.vector, v);
}

// Shift-invert Lanczos with full reorthogonalization for the ground state.
FullEigen lanczos_ground(const ModeBlockOperator& op, double guess) {
    const long dim = op.dimension();
    double sigma = guess - std::max(1.0, 0.25 * std::abs(guess));
    for (int tries = 0;; ++tries) {
        if (BlockFactor(op, sigma).positive_definite()) break;
        sigma -= 2.0 * (std::abs(sigma) + 1.0);
        if (tries > 60) throw ConvergenceError("full_spectrum: no shift below the spectrum found", sigma);
    }
    const BlockFactor F(op, sigma);

    // basis memory: keep it under ~400 MB
    const long mem_cap = std::max<long>(40, 50000000L / dim);
    const int max_iter = static_cast<int>(std::min<long>({120L, dim, mem_cap}));
    std::vector<std::vector<double>> Q;
    std::vector<double> alpha, beta;
    Q.push_back(start_vector(dim, 0));
    double theta = 0.0;
    Eigen::VectorXd s;
    int seed = 1;
    double resid = std::numeric_limits<double>::infinity();
    for (int j = 0; j < max_iter; ++j) {
        std::vector<double> w = Q[j];
        F.solve(w);
        if (j > 0) axpy(-beta[j - 1], Q[j - 1], w);
        const double a = dot(w, Q[j]);
        axpy(-a, Q[j], w);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : Q) axpy(-dot(w, q), q, w);
        alpha.push_back(a);
        double b = std::sqrt(dot(w, w));

        const int m = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            T(k, k) = alpha[k];
            if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues()(m - 1);
        s = es.eigenvectors().col(m - 1);
        resid = std::abs(b * s(m - 1));
        if (resid <= 1e-13 * std::abs(theta) || m == dim) break;
        if (b <= 1e-14 * std::abs(theta)) {
            // invariant subspace without convergence: continue from a fresh direction
            w = start_vector(dim, seed++);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : Q) axpy(-dot(w, q), q, w);
            b = 0.0;
            normalize(w);
            beta.push_back(b);
            Q.push_back(std::move(w));
            continue;
        }
        beta.push_back(b);
        for (double& x : w) x /= b;
        Q.push_back(std::move(w));
    }
    if (!(resid <= 1e-10 * std::abs(theta)))
        throw ConvergenceError("full_spectrum: Lanczos did not converge", resid / std::abs(theta));
    std::vector<double> y(dim, 0.0);
    for (int k = 0; k < s.size(); ++k) axpy(s(k), Q[k], y);
    normalize(y);
    return {sigma + 1.0 / theta, std::move(y)};
}

FullEigen inverse_iteration(const ModeBlockOperator& op, double shift, const std::vector<FullEigen>& found, int seed) {
    const BlockFactor F(op, shift);
    std::vector<double> v = start_vector(op.dimension(), seed);
    deflate(v, found);
    normalize(v);
    for (int it = 0; it < 5; ++it) {
        F.solve(v);
        deflate(v, found);
        normalize(v);
    }
    return {op.quadratic_form(v), std::move(v)};
}

}  // namespace

double ModeBlockOperator::local_entry(int i, int a, int b) const {
    if (a == b) return diag_blocks[a].diag[i];
    return -coupling[std::abs(a - b)][i];
}

std::vector<double> ModeBlockOperator::apply(const std::vector<double>& v) const {
    const int M = modes(), n = grid.size();
    if (static_cast<long>(v.size()) != dimension()) throw DomainError("vector size does not match operator");
    std::vector<double> y(v.size(), 0.0);
    detail::parallel_for(n, [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i)
            for (int a = 0; a < M; ++a) {
                const auto& t = diag_blocks[a];
                double s = t.diag[i] * v[i * M + a];
                if (i > 0) s += t.offdiag[i - 1] * v[(i - 1) * M + a];
                if (i + 1 < n) s += t.offdiag[i] * v[(i + 1) * M + a];
                for (int b = 0; b < M; ++b)
                    if (b != a) s -= coupling[std::abs(a - b)][i] * v[i * M + b];
                y[i * M + a] = s;
            }
    });
    return y;
}

double ModeBlockOperator::quadratic_form(const std::vector<double>& v) const {
    const int M = modes(), n = grid.size();
    double s = 0.0;
    std::vector<double> vn(n);
    for (int a = 0; a < M; ++a) {
        for (int i = 0; i < n; ++i) vn[i] = v[static_cast<std::size_t>(i) * M + a];
        s += diag_blocks[a].quadratic_form(vn);
    }
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < M; ++a)
            for (int b = a + 1; b < M; ++b)
                s -= 2.0 * coupling[b - a][i] * v[static_cast<std::size_t>(i) * M + a] * v[static_cast<std::size_t>(i) * M + b];
    return s / dot(v, v);
}

ModeBlockOperator assemble_full(Radius r, int mode_cut, const Grid1D& grid, Parity parity) {
    if (mode_cut < 0) throw DomainError("mode_cut must be >= 0");
    return build(r, mode_cut, grid, parity, cell_couplings(r, 2 * mode_cut, grid));
}

long full_inertia(const ModeBlockOperator& op, double sigma) { return BlockFactor(op, sigma).negatives(); }

std::vector<FullEigen> full_eigenpairs(const ModeBlockOperator& op, int levels) {
    if (levels < 1 || levels > op.dimension()) throw DomainError("levels must be in [1, dimension]");
    // Cauchy interlacing: the mode-0 compression bounds each level from above.
    const auto upper = eig_tridiag(op.mode_block(0), std::min(levels, op.grid.size()));
    const double hnorm = op_norm_estimate(op);
    auto tol_of = [&](double lam) { return 1e-9 * std::max(1.0, std::abs(lam)) + 64.0 * std::numeric_limits<double>::epsilon() * hnorm; };

    std::vector<FullEigen> found;
    found.push_back(lanczos_ground(op, upper[0].value));
    found[0].value = op.quadratic_form(found[0].vector);

    for (int j = 1; j < levels; ++j) {
        const double lo0 = found[j - 1].value;
        const double hi0 = (j < static_cast<int>(upper.size()) ? upper[j].value : hnorm) + tol_of(hnorm);
        auto certified = [&](double lam) {
            const double d = tol_of(lam);
            return lam > lo0 && full_inertia(op, lam - d) == j && full_inertia(op, lam + d) > j;
        };
        FullEigen e = inverse_iteration(op, j < static_cast<int>(upper.size()) ? upper[j].value : hi0, found, j);
        if (!certified(e.value)) {
            // bisection on the inertia count, then inverse iteration from inside the bracket
            double lo = lo0, hi = hi0;
            while (hi - lo > 1e-6 * std::max(1.0, std::abs(hi))) {
                const double mid = 0.5 * (lo + hi);
                if (full_inertia(op, mid) > j)
                    hi = mid;
                else
                    lo = mid;
            }
            e = inverse_iteration(op, 0.5 * (lo + hi), found, j);
            if (!certified(e.value))
                throw ConvergenceError("full_spectrum: level " + std::to_string(j) + " failed its inertia check", e.value);
        }
        found.push_back(std::move(e));
    }
    if (op.dimension() <= 2000) {
        const auto dense = full_spectrum_dense(op, levels);
        for (int j = 0; j < levels; ++j)
            if (!(std::abs(dense[j] - found[j].value) <= tol_of(dense[j])))
                throw ConvergenceError("full_spectrum: dense cross-check failed at level " + std::to_string(j),
                                       std::abs(dense[j] - found[j].value));
    }
    return found;
}

std::vector<double> full_spectrum(const ModeBlockOperator& op, int levels) {
    std::vector<double> out;
    for (const auto& e : full_eigenpairs(op, levels)) out.push_back(e.value);
    return out;
}

std::vector<double> full_spectrum_dense(const ModeBlockOperator& op, int levels) {
    const long dim = op.dimension();
    if (dim > 2000) throw DomainError("dense reference limited to dimension 2000");
    Eigen::MatrixXd H(dim, dim);
    std::vector<double> e(dim, 0.0);
    for (long j = 0; j < dim; ++j) {
        e[j] = 1.0;
        const auto col = op.apply(e);
        for (long i = 0; i < dim; ++i) H(i, j) = col[i];
        e[j] = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    std::vector<double> out(levels);
    for (int j = 0; j < levels; ++j) out[j] = es.eigenvalues()(j);
    return out;
}

std::vector<FullLevel> full_spectrum_merged(Radius r, int mode_cut, const Grid1D& grid, int levels) {
    if (levels < 1) throw DomainError("levels must be >= 1");
    if (mode_cut < 0) throw DomainError("mode_cut must be >= 0");
    const auto coupling = cell_couplings(r, 2 * mode_cut, grid);
    std::vector<FullLevel> all;
    for (Parity p : {Parity::Even, Parity::Odd}) {
        const auto op = build(r, mode_cut, grid, p, coupling);
        const int count = static_cast<int>(std::min<long>(levels, op.dimension()));
        for (double v : full_spectrum(op, count))
            if (v < 0.0) all.push_back({v, p});
    }
    std::sort(all.begin(), all.end(), [](const FullLevel& a, const FullLevel& b) { return a.energy < b.energy; });
    if (static_cast<int>(all.size()) > levels) all.resize(levels);
    return all;
}

double schur_lambda(Radius r, double K) {
    const double l = std::log(double(r));
    return K * l * l;
}

double offdiag_schur_bound(Radius r, int mode_cut, double lambda, const SchurParams& params) {
    if (mode_cut < 1) return 0.0;
    if (!(lambda > 0.0)) throw DomainError("offdiag_schur_bound requires lambda > 0");
    if (!(params.kinetic_eps > 0.0 && params.kinetic_eps < 0.5)) throw DomainError("kinetic_eps must lie in (0, 1/2)");
    const int kmax = 2 * mode_cut;
    const double rr = r;
    const double X = std::pow(rr, -params.split_eps);  // R/r in scaled units
    const Radius one(1.0);
    // Scaled couplings: ||V_k^r chi_{|x|<=R}||_1 = 2 int_0^{R/r} V_k^1, sup_{|x|>R} V_k^r = V_k^1(R/r)/r.
    std::vector<double> l1(kmax + 1), sup(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        auto f = [&](double x) { return v_mode(0, k, x, one); };
        l1[k] = 2.0 * quad::left_singular(f, 0.0, X, 1e-10, 1e-16).value;
        sup[k] = v_mode(0, k, X, one) / rr;
    }
    auto c = [&](int m) { return 0.5 * lambda + 0.5 * m * m / (rr * rr); };
    const double e = params.kinetic_eps;
    double best = 0.0;
    for (int m = -mode_cut; m <= mode_cut; ++m) {
        double row = 0.0;
        for (int n = -mode_cut; n <= mode_cut; ++n) {
            if (n == m) continue;
            const int k = std::abs(m - n);
            const double cm = c(m), cn = c(n);
            row += l1[k] / (2.0 * std::sqrt(e) * std::pow(cm * cn, 0.25)) + sup[k] / std::sqrt(cm * cn);
        }
        best = std::max(best, row);
    }
    return best;
}

}  // namespace exciton
