#include "exciton/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exciton/specfun.hpp"

namespace exciton {

using specfun::pi;

CylinderPoint::CylinderPoint(double x_, double y_, Radius r_) : x(x_), y(y_), r(r_) {
    if (!std::isfinite(x_) || !std::isfinite(y_)) throw DomainError("cylinder point must be finite");
    const double period = 2.0 * pi * r;
    y = y_ - period * std::floor((y_ + pi * r) / period);
    if (y >= pi * r) y -= period;  // rounding at the seam
}

double coulomb_cylinder(const CylinderPoint& p) {
    const double s = 2.0 * p.r * std::sin(p.y / (2.0 * p.r));
    const double d2 = p.x * p.x + s * s;
    if (d2 == 0.0) throw DomainError("coulomb_cylinder is singular at the origin");
    return 1.0 / std::sqrt(d2);
}

namespace {

// K as a function of the complementary modulus kc = sqrt(1 - m).
double k_of_kc(double kc) {
    if (kc < 1e-150) return std::log(4.0 / kc);  // error O(kc^2 ln kc)
    return specfun::elliptic_k_complement(kc * kc);
}

}  // namespace

double v_eff(double x, Radius r) {
    if (x == 0.0) throw DomainError("v_eff has a logarithmic singularity at x = 0");
    const double s = std::hypot(x, 2.0 * r);
    return 2.0 / (pi * s) * k_of_kc(std::abs(x) / s);
}

double y_comparison(double x, Radius r) { return 1.0 / std::hypot(x, 2.0 * r); }

double v_eff_cell_average(double a, double b, Radius r) {
    if (!(a >= 0.0) || !(b > a)) throw DomainError("v_eff_cell_average needs 0 <= a < b");
    const double w = b - a;
    auto f = [&](double x) { return v_eff(x, r); };
    if (a == 0.0) return quad::left_singular(f, a, b, 1e-14).value / w;
    if (a < 8.0 * std::max(double(r), w)) return quad::adaptive(f, a, b, 1e-14).value / w;
    if (64.0 * w <= a) return quad::gauss_legendre4(f, a, b) / w;
    return quad::gauss_legendre8(f, a, b) / w;
}

quad::QuadResult l1_gap_veff_y(double rel_tol) {
    const Radius one(1.0);
    auto diff = [&](double x) { return v_eff(x, one) - y_comparison(x, one); };
    // Integrate 0..X numerically; beyond X the difference is
    // (x^2+4)^{-3/2} + (9/4)(x^2+4)^{-5/2} + O(x^-7), integrated in closed form.
    constexpr double X = 1000.0;
    const double edges[] = {1.0, 10.0, 100.0, X};
    quad::QuadResult acc = quad::left_singular(diff, 0.0, edges[0], rel_tol);
    for (int i = 0; i + 1 < 4; ++i) {
        const auto part = quad::adaptive(diff, edges[i], edges[i + 1], rel_tol);
        acc.value += part.value;
        acc.error += part.error;
    }
    const double tail = 0.25 * (1.0 - X / std::hypot(X, 2.0)) + 9.0 / 16.0 / std::pow(X, 4);
    acc.value = 2.0 * (acc.value + tail);
    acc.error = 2.0 * acc.error + 2.0 / std::pow(X, 6);
    if (!(acc.error <= std::max(rel_tol, 1e-15) * 100.0 * acc.value))
        throw ConvergenceError("l1_gap_veff_y: quadrature did not converge", acc.error);
    return acc;
}

namespace {

// Q_{k-1/2}(1 + X^2/2) for k = 0..kmax by forward recurrence. Stable while
// the dominant solution grows by less than ~1e3 over the range.
void legendre_q_half(int kmax, double X, std::vector<double>& q) {
    const double z = 1.0 + 0.5 * X * X;
    const double mc = X * X / (4.0 + X * X);
    const double pref = 2.0 / std::sqrt(4.0 + X * X);  // sqrt(2/(z+1))
    const double K = specfun::elliptic_k_complement(mc);
    q[0] = pref * K;
    if (kmax == 0) return;
    const double E = specfun::elliptic_e_complement(mc);
    q[1] = z * q[0] - std::sqrt(2.0 * (z + 1.0)) * E;
    for (int k = 1; k < kmax; ++k)
        q[k + 1] = (2.0 * k * z * q[k] - (k - 0.5) * q[k - 1]) / (k + 0.5);
}

bool recurrence_stable(int kmax, double X) { return X < 0.25 && 4.0 * kmax * std::asinh(0.5 * X) < 6.9; }

// (1/2pi) int cos(k u) / sqrt(X^2 + 4 sin^2(u/2)) du by the periodic
// trapezoid rule, doubling until every k has settled.
void trapezoid_modes(int kmax, double X, std::vector<double>& out) {
    std::vector<double> sums(kmax + 1, 0.0), prev(kmax + 1, 0.0);
    auto add_node = [&](double u) {
        const double s = 2.0 * std::sin(0.5 * u);
        const double g = 1.0 / std::sqrt(X * X + s * s);
        const double c1 = std::cos(u);
        double cm = 1.0, c = c1;
        sums[0] += g;
        for (int k = 1; k <= kmax; ++k) {
            sums[k] += g * c;
            const double cn = 2.0 * c1 * c - cm;
            cm = c;
            c = cn;
        }
    };
    long n = 64;
    while (n < 8L * (kmax + 1)) n *= 2;
    for (long j = 0; j < n; ++j) add_node(2.0 * pi * j / n);
    for (int k = 0; k <= kmax; ++k) prev[k] = sums[k] / n;
    constexpr long kMaxNodes = 1L << 20;
    for (;;) {
        for (long j = 0; j < n; ++j) add_node(2.0 * pi * (j + 0.5) / n);
        n *= 2;
        bool done = true;
        double worst = 0.0;
        // the cosine recurrence loses about k ulps of V_0
        const double floor = 4.0 * (kmax + 1) * std::numeric_limits<double>::epsilon() * sums[0] / n;
        for (int k = 0; k <= kmax; ++k) {
            const double v = sums[k] / n;
            const double d = std::abs(v - prev[k]);
            if (d > 1e-10 * std::abs(v) && d > floor) {
                done = false;
                worst = std::max(worst, d / std::max(std::abs(v), 1e-300));
            }
            prev[k] = v;
        }
        if (done) break;
        if (n >= kMaxNodes)
            throw ConvergenceError("v_mode: trapezoid rule did not settle at 2^20 nodes", worst);
    }
    out = prev;
}

}  // namespace

std::vector<double> mode_couplings(int kmax, double x, Radius r) {
    if (kmax < 0) throw DomainError("mode_couplings needs kmax >= 0");
    if (x == 0.0) throw DomainError("mode couplings are singular at x = 0");
    const double X = std::abs(x) / r;
    std::vector<double> v(kmax + 1);
    if (recurrence_stable(kmax, X)) {
        legendre_q_half(kmax, X, v);
        for (auto& q : v) q /= pi * r;
    } else {
        trapezoid_modes(kmax, X, v);
        for (auto& q : v) q /= r;
    }
    v[0] = v_eff(x, r);
    return v;
}

double v_mode(int m, int n, double x, Radius r) {
    const int k = std::abs(m - n);
    if (k == 0) return v_eff(x, r);
    return mode_couplings(k, x, r)[k];
}

SampledFunction SampledFunction::sample(const Grid1D& g, const std::function<double(double)>& f,
                                        const std::function<double(double)>& df) {
    SampledFunction s{g, {}, {}, {}, {}, f(0.0)};
    const int n = g.size();
    s.pos.resize(n);
    s.neg.resize(n);
    s.dpos.resize(n);
    s.dneg.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = g.node(i);
        s.pos[i] = f(x);
        s.neg[i] = f(-x);
        s.dpos[i] = df(x);
        s.dneg[i] = df(-x);
    }
    return s;
}

SampledFunction SampledFunction::even_part() const {
    SampledFunction e = *this;
    for (int i = 0; i < grid.size(); ++i) {
        e.pos[i] = e.neg[i] = 0.5 * (pos[i] + neg[i]);
        e.dpos[i] = 0.5 * (dpos[i] - dneg[i]);
        e.dneg[i] = -e.dpos[i];
    }
    return e;
}

SampledFunction SampledFunction::odd_part() const {
    SampledFunction o = *this;
    for (int i = 0; i < grid.size(); ++i) {
        o.pos[i] = 0.5 * (pos[i] - neg[i]);
        o.neg[i] = -o.pos[i];
        o.dpos[i] = o.dneg[i] = 0.5 * (dpos[i] + dneg[i]);
    }
    o.at_zero = 0.0;
    return o;
}

namespace {

void check_decay(const SampledFunction& f) {
    const auto n = f.pos.size();
    if (n == 0 || f.neg.size() != n || f.dpos.size() != n || f.dneg.size() != n ||
        static_cast<int>(n) != f.grid.size())
        throw DomainError("sampled function does not match its grid");
    const double edge = std::max(std::abs(f.pos.back()), std::abs(f.neg.back()));
    if (!(edge < 1e-8))
        throw DomainError("sampled function must decay at the grid ends (|f| = " + std::to_string(edge) + ")");
}

// int_cell ln(2x) dx
double log_weight(int i, double h) {
    auto F = [](double x) { return x > 0.0 ? x * std::log(2.0 * x) - x : 0.0; };
    return F((i + 1) * h) - F(i * h);
}

}  // namespace

double c0_form(const SampledFunction& f, const SampledFunction& g) {
    check_decay(f);
    check_decay(g);
    if (f.grid.size() != g.grid.size() || f.grid.spacing() != g.grid.spacing())
        throw DomainError("c0_form: functions live on different grids");
    const double h = f.grid.spacing();
    double s = 0.0;
    for (int i = 0; i < f.grid.size(); ++i) {
        const double dp = f.dpos[i] * g.pos[i] + f.pos[i] * g.dpos[i];
        const double dn = f.dneg[i] * g.neg[i] + f.neg[i] * g.dneg[i];
        s += log_weight(i, h) * (dn - dp);
    }
    return s;
}

double c0_form(const SampledFunction& f) { return c0_form(f, f); }

double finite_part_inverse_abs(const SampledFunction& f) {
    check_decay(f);
    const double h = f.grid.spacing();
    auto g = [&](int i) { return f.pos[i] * f.pos[i] + f.neg[i] * f.neg[i]; };
    // fp int_0^h dx/x = ln h; exact log weights on the remaining cells
    double s = g(0) * std::log(h);
    for (int i = 1; i < f.grid.size(); ++i) s += g(i) * std::log1p(1.0 / i);
    return s;
}

FormExpansion form_expansion_check(const SampledFunction& f, Radius r) {
    if (!(r < 1.0)) throw DomainError("form_expansion_check requires r < 1");
    check_decay(f);
    const Grid1D& grid = f.grid;
    double lhs = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double w = grid.spacing() * v_eff_cell_average(grid.cell_lo(i), grid.cell_hi(i), r);
        lhs += w * (f.pos[i] * f.pos[i] + f.neg[i] * f.neg[i]);
    }
    const double f0 = f.at_zero;
    const double rhs = -2.0 * std::log(r / 2.0) * f0 * f0 + finite_part_inverse_abs(f);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace exciton
