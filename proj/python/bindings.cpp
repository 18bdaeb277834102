#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qspectral/drazin.hpp"
#include "qspectral/geninv.hpp"
#include "qspectral/scalc.hpp"
#include "qspectral/sspec.hpp"

namespace py = pybind11;
using namespace qspectral;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Matrices cross the boundary as float64 arrays of shape (n, n, 4).
HMatrix to_hmatrix(const Array& x) {
  if (x.ndim() != 3 || x.shape(0) != x.shape(1) || x.shape(2) != 4)
    throw DimensionError("expected an array of shape (n, n, 4)");
  const auto n = static_cast<std::size_t>(x.shape(0));
  const auto r = x.unchecked<3>();
  HMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto si = static_cast<py::ssize_t>(i);
      const auto sj = static_cast<py::ssize_t>(j);
      a(i, j) = {r(si, sj, 0), r(si, sj, 1), r(si, sj, 2), r(si, sj, 3)};
    }
  return a;
}

Array to_array(const HMatrix& a) {
  const auto n = static_cast<py::ssize_t>(a.size());
  Array out({n, n, py::ssize_t{4}});
  auto w = out.mutable_unchecked<3>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) {
      const Quaternion& q = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      w(i, j, 0) = q.a;
      w(i, j, 1) = q.b;
      w(i, j, 2) = q.c;
      w(i, j, 3) = q.d;
    }
  return out;
}

Quaternion to_quaternion(const std::vector<double>& q) {
  if (q.size() != 4) throw DimensionError("expected a quaternion [a, b, c, d]");
  return {q[0], q[1], q[2], q[3]};
}

py::list spheres(const Spectrum& s) {
  py::list out;
  for (const auto& e : s.spheres) out.append(py::make_tuple(e.sphere.u, e.sphere.v, e.mult));
  return out;
}

ContourOptions contour(std::optional<double> radius, int nodes) {
  ContourOptions o;
  o.radius = radius;
  o.nodes = nodes;
  return o;
}

py::dict drazin_dict(const DrazinResult& r) {
  py::dict d;
  d["inverse"] = to_array(r.inverse);
  d["index"] = r.index;
  d["projection"] = to_array(r.projection);
  d["route"] = r.route;
  d["deferred"] = r.deferred;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quaternionic matrix spectra, S-functional calculus and generalized inverses";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto math = py::register_exception<MathError>(m, "MathError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  (void)math;

  m.def("s_spectrum", [](const Array& a) { return spheres(s_spectrum(to_hmatrix(a))); }, py::arg("a"),
        "Spheres (u, v, multiplicity) of the S-spectrum, sorted by (u, v).");
  m.def("complex_adjoint", [](const Array& a) { return complex_adjoint(to_hmatrix(a)).matrix(); }, py::arg("a"));
  m.def("operator_norm", [](const Array& a) { return operator_norm(to_hmatrix(a)); }, py::arg("a"));
  m.def("rank", [](const Array& a) { return rank(to_hmatrix(a)); }, py::arg("a"));
  m.def("matmul", [](const Array& a, const Array& b) { return to_array(to_hmatrix(a) * to_hmatrix(b)); });

  m.def("s_resolvent_left",
        [](const std::vector<double>& s, const Array& a) { return to_array(s_resolvent_left(to_quaternion(s), to_hmatrix(a))); },
        py::arg("s"), py::arg("a"));
  m.def("pseudo_resolvent_series",
        [](const std::vector<double>& q, const Array& a, double tol) {
          const SeriesResult r = pseudo_resolvent_series(to_quaternion(q), to_hmatrix(a), tol);
          return py::make_tuple(to_array(r.value), r.terms);
        },
        py::arg("q"), py::arg("a"), py::arg("tol") = 1e-16, "Returns (sum, terms used).");
  m.def("gelfand",
        [](const Array& a, unsigned n_max) {
          const GelfandSequence g = spectral_radius_gelfand(to_hmatrix(a), n_max);
          py::list out;
          for (std::size_t i = 0; i < g.exponents.size(); ++i) out.append(py::make_tuple(g.exponents[i], g.estimates[i]));
          return out;
        },
        py::arg("a"), py::arg("n_max") = 256, "Pairs (k, ||A^k||^(1/k)) for k = 1, 2, 4, ...");

  m.def("func_calc",
        [](const Array& a, const std::string& f, std::optional<double> radius, int nodes) {
          return to_array(func_calc(fn::parse(f), to_hmatrix(a), contour(radius, nodes)));
        },
        py::arg("a"), py::arg("fn"), py::arg("radius") = py::none(), py::arg("nodes") = 64,
        "f(A) for f given as 'poly:c0,c1,...', 'recip', 'exp', 'id' or 'one'.");
  m.def("riesz",
        [](const Array& a, const std::vector<std::pair<double, double>>& subset) {
          std::vector<EigenSphere> s;
          for (const auto& [u, v] : subset) s.push_back({u, v});
          return to_array(riesz_projection(to_hmatrix(a), s));
        },
        py::arg("a"), py::arg("spheres"));

  m.def("moore_penrose", [](const Array& a) { return to_array(moore_penrose(to_hmatrix(a))); }, py::arg("a"));
  m.def("group_inverse", [](const Array& a) { return to_array(group_inverse(to_hmatrix(a))); }, py::arg("a"));
  m.def("index", [](const Array& a) { return index(to_hmatrix(a)); }, py::arg("a"));
  m.def("drazin",
        [](const Array& a, const std::string& route) { return drazin_dict(drazin(to_hmatrix(a), parse_route(route))); },
        py::arg("a"), py::arg("route") = "algebraic");
  m.def("verify_drazin",
        [](const Array& a, const Array& b, unsigned k) {
          const DrazinResiduals r = verify_drazin(to_hmatrix(a), to_hmatrix(b), k);
          py::dict d;
          d["commute"] = r.commute;
          d["square"] = r.square;
          d["power"] = r.power;
          d["nilpotent"] = r.nilpotent;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("k"));
}
