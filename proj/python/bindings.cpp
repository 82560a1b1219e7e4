#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knotfield/fields.hpp"
#include "knotfield/observables.hpp"
#include "knotfield/quantumstate.hpp"
#include "knotfield/spectral.hpp"
#include "knotfield/topology.hpp"

namespace py = pybind11;
namespace kf = knotfield;

namespace {

kf::Vec3 to_vec3(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

py::array_t<double> vec_to_array(const kf::Vec3& v) {
    py::array_t<double> out({static_cast<py::ssize_t>(3)});
    auto r = out.mutable_unchecked<1>();
    r(0) = v.x;
    r(1) = v.y;
    r(2) = v.z;
    return out;
}

py::array_t<std::complex<double>> cvec_to_array(const kf::Vec3C& v) {
    py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(3)});
    auto r = out.mutable_unchecked<1>();
    r(0) = v.x;
    r(1) = v.y;
    r(2) = v.z;
    return out;
}

} // namespace

PYBIND11_MODULE(_knotfield, m) {
    m.doc() = "knotted electromagnetic fields: closed forms, spectra, observables";

    py::register_exception<kf::Error>(m, "KnotfieldError");

    py::class_<kf::KnotIndices>(m, "KnotIndices")
        .def(py::init([](int n, int mm, int l, int s) {
                 return kf::KnotIndices::validated(n, mm, l, s);
             }),
             py::arg("n"), py::arg("m"), py::arg("l"), py::arg("s"))
        .def_readonly("n", &kf::KnotIndices::n)
        .def_readonly("m", &kf::KnotIndices::m)
        .def_readonly("l", &kf::KnotIndices::l)
        .def_readonly("s", &kf::KnotIndices::s)
        .def("sum_of_squares", &kf::KnotIndices::sum_of_squares)
        .def("helicity_combination", &kf::KnotIndices::helicity_combination);

    py::class_<kf::PhysicalScales>(m, "PhysicalScales")
        .def_static("natural", &kf::PhysicalScales::natural, py::arg("a") = 1.0,
                    py::arg("L0") = 1.0)
        .def_readonly("a", &kf::PhysicalScales::a)
        .def_readonly("L0", &kf::PhysicalScales::L0);

    m.def(
        "field_at",
        [](const std::array<double, 3>& x, double T, const kf::KnotIndices& k,
           const kf::PhysicalScales& s) {
            const auto fs = kf::fields::field_at({x[0], x[1], x[2], T}, k, s);
            return py::make_tuple(vec_to_array(fs.E), vec_to_array(fs.B));
        },
        py::arg("x"), py::arg("T"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural(),
        "E and B at a dimensionless spacetime point");

    m.def(
        "maxwell_residual",
        [](const std::array<double, 3>& x, double T, const kf::KnotIndices& k,
           const kf::PhysicalScales& s) {
            return kf::fields::maxwell_residual({x[0], x[1], x[2], T}, k, s).max_relative();
        },
        py::arg("x"), py::arg("T"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "w_vector",
        [](const std::array<double, 3>& K, const kf::KnotIndices& k) {
            return cvec_to_array(kf::spectral::w_vector(to_vec3(K), k));
        },
        py::arg("K"), py::arg("indices"));

    m.def(
        "alpha",
        [](const std::array<double, 3>& K, int lambda_sign, const kf::KnotIndices& k,
           const kf::PhysicalScales& s) {
            const auto lam = lambda_sign >= 0 ? kf::spectral::Polarization::Plus
                                              : kf::spectral::Polarization::Minus;
            return kf::spectral::alpha(to_vec3(K), lam, k, s);
        },
        py::arg("K"), py::arg("lambda_sign"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "observable_report_json",
        [](const kf::KnotIndices& k, const kf::PhysicalScales& s) {
            return kf::observables::to_json(kf::observables::observable_report(k, s));
        },
        py::arg("indices"), py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "energy_expectation",
        [](const kf::KnotIndices& k, const kf::PhysicalScales& s) {
            return kf::observables::energy_expectation(k, s).value;
        },
        py::arg("indices"), py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "spin_helicity_expectation",
        [](const kf::KnotIndices& k, const kf::PhysicalScales& s) {
            return kf::observables::spin_helicity_expectation(k, s).value;
        },
        py::arg("indices"), py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "trace_fieldline",
        [](const std::string& which, const std::array<double, 3>& seed, const kf::KnotIndices& k,
           const kf::PhysicalScales& s) {
            const auto kind =
                which == "E" ? kf::topology::FieldKind::E : kf::topology::FieldKind::B;
            const auto c = kf::topology::trace_fieldline(kind, to_vec3(seed), k, s);
            py::array_t<double> pts({static_cast<py::ssize_t>(c.points.size()),
                                     static_cast<py::ssize_t>(3)});
            auto r = pts.mutable_unchecked<2>();
            for (size_t i = 0; i < c.points.size(); ++i) {
                r(i, 0) = c.points[i].x;
                r(i, 1) = c.points[i].y;
                r(i, 2) = c.points[i].z;
            }
            return py::make_tuple(pts, c.closed, c.arc_length, c.closure_gap);
        },
        py::arg("which"), py::arg("seed"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "linking_number",
        [](py::array_t<double> a, py::array_t<double> b) {
            auto load = [](py::array_t<double>& arr) {
                kf::topology::Curve c;
                auto r = arr.unchecked<2>();
                double arc = 0.0;
                for (py::ssize_t i = 0; i < r.shape(0); ++i) {
                    const kf::Vec3 p{r(i, 0), r(i, 1), r(i, 2)};
                    if (!c.points.empty()) arc += (p - c.points.back()).norm();
                    c.points.push_back(p);
                    c.arc.push_back(arc);
                }
                c.closed = true;
                return c;
            };
            auto ca = load(a), cb = load(b);
            const auto lk = kf::topology::linking_number(ca, cb);
            return py::make_tuple(lk.value, lk.raw, lk.residual);
        },
        py::arg("curve_a"), py::arg("curve_b"),
        "Gauss linking number of two closed polylines ((N,3) arrays)");

    m.def(
        "g1",
        [](const std::array<double, 3>& x, double tx, const std::array<double, 3>& y, double ty,
           const kf::KnotIndices& k, const kf::PhysicalScales& s) {
            return kf::quantumstate::g1({to_vec3(x), tx}, {to_vec3(y), ty}, k, s);
        },
        py::arg("x"), py::arg("tx"), py::arg("y"), py::arg("ty"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural());

    m.def(
        "g2",
        [](const std::array<double, 3>& x, double tx, const std::array<double, 3>& y, double ty,
           const kf::KnotIndices& k, const kf::PhysicalScales& s) {
            return kf::quantumstate::g2({to_vec3(x), tx}, {to_vec3(y), ty}, k, s);
        },
        py::arg("x"), py::arg("tx"), py::arg("y"), py::arg("ty"), py::arg("indices"),
        py::arg("scales") = kf::PhysicalScales::natural());
}
