// Python surface: plain floats in, tuples/dicts out.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exciton/acceptance.hpp"
#include "exciton/cylinder2d.hpp"
#include "exciton/potential.hpp"
#include "exciton/report.hpp"
#include "exciton/schrodinger1d.hpp"
#include "exciton/solvable.hpp"
#include "exciton/specfun.hpp"

namespace py = pybind11;
using namespace exciton;

namespace {

Grid1D pick_grid(double r, double half_length, int points, bool two_d, int levels) {
    const GridPolicy p{half_length, points};
    return two_d ? grid_2d(Radius(r), p, levels) : grid_1d(Radius(r), p);
}

py::dict level(double energy, Parity parity) {
    py::dict d;
    d["parity"] = std::string(to_string(parity));
    d["energy"] = energy;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Excitons on a thin cylinder: effective potential and spectra";

    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            py::set_error(domain_error, e.what());
        } catch (const ConvergenceError& e) {
            py::set_error(convergence_error, e.what());
        }
    });

    m.def("digamma", &specfun::digamma, py::arg("x"));
    m.def("kummer_u", &specfun::kummer_u, py::arg("a"), py::arg("z"), "U(a, 2, z)");
    m.def("whittaker_w", &specfun::whittaker_w, py::arg("alpha"), py::arg("z"), "W_{alpha,1/2}(z)");
    m.def("elliptic_k", &specfun::elliptic_k, py::arg("m"));

    m.def("v_eff", [](double x, double r) { return v_eff(x, Radius(r)); }, py::arg("x"), py::arg("r"));
    m.def("y_comparison", [](double x, double r) { return y_comparison(x, Radius(r)); }, py::arg("x"),
          py::arg("r"));
    m.def(
        "l1_gap",
        [](double rel_tol) {
            const auto q = l1_gap_veff_y(rel_tol);
            return py::make_tuple(q.value, q.error);
        },
        py::arg("rel_tol") = 1e-12, "(value, error) of the L1 distance between V_eff and the comparison potential");

    m.def(
        "hc_spectrum",
        [](double r, int levels) {
            py::list out;
            for (const auto& l : hc_spectrum(Radius(r), levels)) {
                py::dict d = level(l.energy, l.parity);
                d["k"] = l.k;
                d["alpha"] = l.alpha;
                out.append(d);
            }
            return out;
        },
        py::arg("r"), py::arg("levels"));
    m.def("even_alpha", [](int k, double r) { return even_alpha(k, Radius(r)); }, py::arg("k"), py::arg("r"));

    m.def(
        "heff_spectrum",
        [](double r, int levels, double half_length, int points) {
            py::list out;
            for (const auto& l : heff_spectrum(Radius(r), levels, pick_grid(r, half_length, points, false, levels)))
                out.append(level(l.energy, l.parity));
            return out;
        },
        py::arg("r"), py::arg("levels"), py::arg("half_length") = 0.0, py::arg("points") = 0,
        "zero half_length/points pick the default grid");
    m.def(
        "full_spectrum",
        [](double r, int levels, int mode_cut, double half_length, int points) {
            py::list out;
            const auto g = pick_grid(r, half_length, points, true, levels);
            py::gil_scoped_release nogil;
            const auto s = full_spectrum_merged(Radius(r), mode_cut, g, levels);
            py::gil_scoped_acquire gil;
            for (const auto& l : s) out.append(level(l.energy, l.parity));
            return out;
        },
        py::arg("r"), py::arg("levels"), py::arg("mode_cut") = 4, py::arg("half_length") = 0.0,
        py::arg("points") = 0);
    m.def(
        "schur_bound",
        [](double r, int mode_cut) { return offdiag_schur_bound(Radius(r), mode_cut, schur_lambda(Radius(r))); },
        py::arg("r"), py::arg("mode_cut"));

    m.def(
        "convergence_report",
        [](std::vector<double> radii, int levels, int mode_cut, double half_length, int points) {
            py::gil_scoped_release nogil;
            return report_to_json(convergence_report(radii, levels, GridPolicy{half_length, points}, mode_cut));
        },
        py::arg("radii"), py::arg("levels"), py::arg("mode_cut") = 4, py::arg("half_length") = 0.0,
        py::arg("points") = 0, "JSON text, same layout as `exciton converge --format json`");

    m.def("criteria", [] {
        py::list out;
        for (const auto& c : acceptance::criteria()) out.append(py::make_tuple(c.id, c.name, c.budget_seconds));
        return out;
    });
    m.def(
        "run_criterion",
        [](int id) {
            acceptance::Outcome o;
            {
                py::gil_scoped_release nogil;
                o = acceptance::run(id);
            }
            py::dict d;
            d["id"] = o.id;
            d["pass"] = o.pass;
            d["seconds"] = o.seconds;
            d["detail"] = o.detail;
            return d;
        },
        py::arg("id"));
}
