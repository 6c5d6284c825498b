#include "exciton/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace exciton::quad {

namespace {

// Kronrod 15 / Gauss 7 nodes on [-1, 1].
constexpr double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wk[7] * fc, g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double s = f(c - h * xk[j]) + f(c + h * xk[j]);
        k += wk[j] * s;
        if (j % 2 == 1) g += wg[j / 2] * s;
    }
    k *= h;
    g *= h;
    const double err = std::max(std::abs(k - g), 10.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
    return {a, b, k, err};
}

}  // namespace

QuadResult adaptive(const Integrand& f, double a, double b, double rel_tol, double abs_tol, int max_panels) {
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    double total = first.value, err = first.error;
    heap.push(first);
    while (err > std::max(rel_tol * std::abs(total), abs_tol) && static_cast<int>(heap.size()) < max_panels) {
        const Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {  // cannot split further
            heap.push({p.a, p.b, p.value, 0.0});
            err -= p.error;
            continue;
        }
        const Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
    }
    // recompute sums to drop accumulated drift
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {total, err};
}

QuadResult left_singular(const Integrand& f, double a, double b, double rel_tol, double abs_tol) {
    const double w = b - a;
    auto g = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double s2 = s * s;
        return f(a + w * s2 * s2) * 4.0 * w * s2 * s;
    };
    return adaptive(g, 0.0, 1.0, rel_tol, abs_tol);
}

}  // namespace exciton::quad
