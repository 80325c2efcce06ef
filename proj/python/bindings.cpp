#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopfgauge/cli.hpp"
#include "hopfgauge/gauge.hpp"

namespace py = pybind11;
using namespace hg;

namespace {

std::vector<std::string> row_strings(const Matrix& m) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(0, c).to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hopf-Galois computations over cyclotomic fields";

  py::register_exception<Error>(m, "HopfGaugeError");

  py::class_<Scalar>(m, "Scalar")
      .def(py::init([](const std::string& text, int conductor) {
             return Scalar::parse(text, &CyclotomicField::get(conductor));
           }),
           py::arg("text"), py::arg("conductor") = 1)
      .def(py::init<long>())
      .def_static("zeta", [](int conductor, long k) { return Scalar::zeta(CyclotomicField::get(conductor), k); })
      .def("inverse", &Scalar::inverse)
      .def("pow", &Scalar::pow)
      .def("is_zero", &Scalar::is_zero)
      .def("coefficients", [](const Scalar& s, int conductor) { return s.to_strings(&CyclotomicField::get(conductor)); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &Scalar::to_string)
      .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.to_string() + "')"; });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        CliResult r;
        {
          py::gil_scoped_release release;
          r = run_cli(args);
        }
        return py::make_tuple(r.exit_code, r.out, r.err);
      },
      py::arg("args"), "Runs one hopfgauge command; returns (exit_code, stdout, stderr).");

  m.def(
      "verify_taft",
      [](int n, int q_index) {
        return verify_hopf(build_taft(CyclotomicField::get(n), n, q_index)).ok();
      },
      py::arg("n"), py::arg("q_index") = 1);

  m.def(
      "taft_characters",
      [](int n) {
        std::vector<std::vector<std::string>> out;
        for (const auto& chi : enumerate_characters(build_taft(CyclotomicField::get(n), n, 1))) out.push_back(row_strings(chi));
        return out;
      },
      py::arg("n"), "Character values on the basis x^i g^j of T_N.");

  m.def(
      "taft_gauge_parameters",
      [](int n, const std::string& s) {
        const auto& f = CyclotomicField::get(n);
        auto ext = build_galois(build_taft_galois(f, n, 1, Scalar::parse(s, &f)));
        return solve_extended_gauge(ext).free_parameters();
      },
      py::arg("n"), py::arg("s") = "1");
}
