#include "exciton/solvable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exciton/specfun.hpp"

namespace exciton {

double f_even(double alpha, Radius r) {
    if (!(alpha > 0.0)) throw DomainError("f_even requires alpha > 0");
    if (alpha == std::floor(alpha)) throw PoleError("f_even has a pole at integer alpha");
    return specfun::digamma(1.0 - alpha) + 2.0 * specfun::euler_gamma + 0.5 / alpha - std::log(alpha) +
           std::log(double(r));
}

double even_alpha(int k, Radius r) {
    if (k < 1) throw DomainError("even_alpha requires k >= 1");
    const double base = k - 1.0;
    double delta = 1e-3;
    double lo = 0.0, hi = 0.0;
    for (;;) {
        lo = base + delta;
        hi = k - delta;
        if (lo > base && hi < k && f_even(lo, r) > 0.0 && f_even(hi, r) < 0.0) break;
        delta *= 0.1;
        if (lo <= base || hi >= k || delta < 1e-300)
            throw ConvergenceError("even_alpha: no sign change bracket for k = " + std::to_string(k), delta);
    }
    double flo = f_even(lo, r), fhi = f_even(hi, r);
    for (int it = 0; it < 2000; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const double fm = f_even(mid, r);
        if (fm == 0.0) return mid;
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

HcLevel odd_level(int n) {
    if (n < 1) throw DomainError("odd levels start at N = 1");
    const double a = n;
    return {n, Parity::Odd, a, -0.5 / (a * a)};
}

HcLevel even_level(int k, Radius r) {
    const double a = even_alpha(k, r);
    return {k, Parity::Even, a, -0.5 / (a * a)};
}

std::vector<HcLevel> hc_spectrum(Radius r, int levels) {
    if (levels < 1) throw DomainError("hc_spectrum needs levels >= 1");
    std::vector<HcLevel> all;
    all.reserve(2 * levels);
    // Even alpha_k lies in (k-1, k), so the sectors interlace and the lowest
    // `levels` states use at most (levels+1)/2 of each.
    const int per_sector = (levels + 1) / 2 + 1;
    for (int k = 1; k <= per_sector; ++k) {
        all.push_back(even_level(k, r));
        all.push_back(odd_level(k));
    }
    std::sort(all.begin(), all.end(), [](const HcLevel& a, const HcLevel& b) { return a.energy < b.energy; });
    all.resize(levels);
    for (std::size_t i = 1; i < all.size(); ++i)
        if (!(all[i].energy > all[i - 1].energy))
            throw ConvergenceError("hc_spectrum: degenerate levels found", all[i].energy);
    return all;
}

double ground_alpha_asymptotic(Radius r) {
    if (!(r < 1.0)) throw DomainError("ground_alpha_asymptotic requires r < 1");
    return -0.5 / std::log(double(r));
}

double hc_eigenfunction(const HcLevel& level, double z) {
    const double az = std::abs(z);
    if (level.parity == Parity::Odd) {
        const int n = static_cast<int>(std::lround(level.alpha));
        const double v = std::exp(-0.5 * az) * az * specfun::laguerre_assoc(n - 1, 1, az) / n;
        return z < 0.0 ? -v : v;
    }
    return specfun::whittaker_w(level.alpha, az);
}

double boundary_residual(double alpha, Radius r, double eps) {
    if (!(eps > 0.0 && eps < 0.1)) throw DomainError("boundary_residual requires 0 < eps < 0.1");
    if (!(alpha > 0.0)) throw DomainError("boundary_residual requires alpha > 0");
    if (alpha == std::floor(alpha)) return 0.0;  // odd eigenfunction: psi(0) = 0, psi' even
    const auto w = specfun::whittaker_w_with_slope(alpha, eps);
    const double w0 = specfun::rgamma(1.0 - alpha);
    return -w.slope + alpha * (std::log(double(r)) - std::log(alpha * eps)) * w0;
}

}  // namespace exciton
