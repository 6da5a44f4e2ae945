#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magnonspec/dynamics.hpp"
#include "magnonspec/spectral.hpp"

namespace py = pybind11;
using namespace magnonspec;

namespace {

Eigen::VectorXd to_array(const SpectrumSet& s) {
  return Eigen::Map<const Eigen::VectorXd>(s.values().data(), static_cast<Eigen::Index>(s.size()));
}

ShiftSymbol symbol_from_dict(int dim, const std::map<std::vector<Coord>, Complex>& entries) {
  ShiftSymbol rho(dim);
  for (const auto& [eta, v] : entries) rho.add(eta, v);
  return rho;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toeplitz-plus-potential operators on ordered lattices";
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("theta", [](const Point& y) { return theta(OrderedConfig(y)).point(); }, py::arg("y"),
        "Gap coordinates (y1, y2 - y1, ...) of a strictly increasing configuration.");
  m.def("theta_inv", [](const Point& z) { return theta_inv(GapCoord(z)).point(); }, py::arg("z"));

  py::class_<ShiftSymbol>(m, "ShiftSymbol")
      .def(py::init<int>(), py::arg("dim"))
      .def(py::init(&symbol_from_dict), py::arg("dim"), py::arg("entries"))
      .def_property_readonly("dim", &ShiftSymbol::dim)
      .def_property_readonly("labels", &ShiftSymbol::labels)
      .def_property_readonly("entries", [](const ShiftSymbol& s) {
        std::map<std::vector<Coord>, Complex> out(s.entries().begin(), s.entries().end());
        return out;
      })
      .def("__getitem__", [](const ShiftSymbol& s, const Point& eta) { return s.at(eta); })
      .def("__len__", &ShiftSymbol::support_size)
      .def("is_hermitian", &ShiftSymbol::is_hermitian, py::arg("tol") = 1e-12)
      .def("__add__", [](const ShiftSymbol& a, const ShiftSymbol& b) { return a + b; })
      .def("__neg__", [](const ShiftSymbol& a) { return -a; })
      .def("__rmul__", [](const ShiftSymbol& a, Complex c) { return c * a; });

  m.def("heisenberg_symbols", &heisenberg_symbols, py::arg("a"), py::arg("b"), py::arg("N"));
  m.def("unit_vector_indicator", &unit_vector_indicator, py::arg("N"));
  m.def("mu", [](double tau, const ShiftSymbol& rho) { return mu(tau, rho); }, py::arg("tau"), py::arg("rho"));
  m.def("nu_j", [](int j, double tp, const ShiftSymbol& rho) { return nu_j(j, tp, rho); }, py::arg("j"),
        py::arg("tau_prime"), py::arg("rho"));
  m.def("full_fourier", [](const ShiftSymbol& rho, const std::vector<double>& tau) { return full_fourier(rho, tau); },
        py::arg("rho"), py::arg("tau"));

  py::class_<LatticeDomain>(m, "LatticeDomain")
      .def_static("full_ordered", &LatticeDomain::full_ordered, py::arg("N"))
      .def_static("fiber", py::overload_cast<int>(&LatticeDomain::fiber), py::arg("d"))
      .def_static("whole_group", &LatticeDomain::whole_group, py::arg("d"))
      .def_static("ring_cross_fiber", &LatticeDomain::ring_cross_fiber, py::arg("N"), py::arg("L1"))
      .def_property_readonly("kind", [](const LatticeDomain& d) { return std::string(to_string(d.kind)); })
      .def_readonly("dim", &LatticeDomain::dim);

  py::class_<TruncationBox>(m, "TruncationBox")
      .def_static("full", [](int N, Coord lo, Coord hi, Coord gap_max) { return TruncationBox::full(N, {lo, hi}, gap_max); },
                  py::arg("N"), py::arg("lo"), py::arg("hi"), py::arg("gap_max"))
      .def_static("fiber", &TruncationBox::fiber, py::arg("N"), py::arg("gap_max"))
      .def_property_readonly("size", &TruncationBox::size);

  py::class_<CompressedOperator>(m, "CompressedOperator")
      .def_property_readonly("size", &CompressedOperator::size)
      .def_property_readonly("label", &CompressedOperator::label)
      .def_property_readonly("points", [](const CompressedOperator& op) { return op.index().points(); })
      .def("dense", &CompressedOperator::dense)
      .def("apply", &CompressedOperator::apply, py::arg("f"))
      .def("hermiticity_defect", &CompressedOperator::hermiticity_defect)
      .def("gershgorin_bound", &CompressedOperator::gershgorin_bound);

  m.def("compress_toeplitz", &compress_toeplitz, py::arg("phi"), py::arg("domain"), py::arg("box"));
  m.def("compress_potential", &compress_potential, py::arg("psi"), py::arg("domain"), py::arg("box"));
  m.def("compress_toeplitz_plus_potential", &compress_toeplitz_plus_potential, py::arg("phi"), py::arg("psi"),
        py::arg("domain"), py::arg("box"));
  m.def("cayley_laplacian", &cayley_laplacian, py::arg("M"), py::arg("domain"), py::arg("box"));
  m.def("build_heisenberg_direct", &build_heisenberg_direct, py::arg("N"), py::arg("a"), py::arg("b"), py::arg("box"));

  m.def("eig_dense", [](const CompressedOperator& op) { return to_array(eig_dense(op)); }, py::arg("op"));
  m.def("fiber_hamiltonian",
        [](double tau, const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L) {
          return fiber_hamiltonian(tau, phi, psi, L);
        },
        py::arg("tau"), py::arg("phi"), py::arg("psi"), py::arg("L"));
  m.def("sigma_j",
        [](int j, double tau, double tp, const ShiftSymbol& phi, const ShiftSymbol& psi, Coord L) {
          return to_array(sigma_j(j, tau, tp, phi, psi, L));
        },
        py::arg("j"), py::arg("tau"), py::arg("tau_prime"), py::arg("phi"), py::arg("psi"), py::arg("L"));
  m.def("essential_spectrum_fiber",
        [](double tau, const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid, Coord L) {
          return to_array(essential_spectrum_fiber(tau, phi, psi, grid, L));
        },
        py::arg("tau"), py::arg("phi"), py::arg("psi"), py::arg("grid_size") = 64, py::arg("L") = 8);
  m.def("full_spectrum_union",
        [](const ShiftSymbol& phi, const ShiftSymbol& psi, std::size_t grid, Coord L) {
          return to_array(full_spectrum_union(phi, psi, grid, L));
        },
        py::arg("phi"), py::arg("psi"), py::arg("grid_size") = 64, py::arg("L") = 50);
  m.def("continuum_part", [](const CompressedOperator& op) { return to_array(continuum_part(op)); }, py::arg("op"));
  m.def("bloch_check", &bloch_check, py::arg("phi"), py::arg("psi"), py::arg("L1"), py::arg("L"));
  m.def("hausdorff",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return hausdorff(SpectrumSet(a), SpectrumSet(b));
        },
        py::arg("a"), py::arg("b"));
  m.def("hausdorff_interval",
        [](const std::vector<double>& a, double lo, double hi) { return hausdorff(SpectrumSet(a), Interval{lo, hi}); },
        py::arg("a"), py::arg("lo"), py::arg("hi"));

  py::class_<EnergyWindow>(m, "EnergyWindow")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def("__call__", &EnergyWindow::operator())
      .def_property_readonly("support", [](const EnergyWindow& w) { return std::pair{w.support().lo, w.support().hi}; });

  m.def("functional_calculus",
        [](const CompressedOperator& op, const EnergyWindow& w) { return functional_calculus(op, w); },
        py::arg("op"), py::arg("window"));
  m.def("evolve", &evolve, py::arg("op"), py::arg("f"), py::arg("t"));
  m.def("nonprop_norm",
        [](const CompressedOperator& op, int j, Coord n, const EnergyWindow& w) { return nonprop_norm(op, j, n, w); },
        py::arg("op"), py::arg("j"), py::arg("n"), py::arg("window"));
  m.def("nonprop_dynamical",
        [](const CompressedOperator& op, int j, Coord n, const Vector& f, const std::vector<double>& t) {
          return nonprop_dynamical(op, j, n, f, t);
        },
        py::arg("op"), py::arg("j"), py::arg("n"), py::arg("f"), py::arg("t_grid"));
}
