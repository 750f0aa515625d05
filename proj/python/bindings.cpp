#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relinc/emulation.hpp"
#include "relinc/error.hpp"
#include "relinc/io.hpp"
#include "relinc/majorization.hpp"
#include "relinc/monotones.hpp"
#include "relinc/parent.hpp"
#include "relinc/uncertainty.hpp"

namespace py = pybind11;
using namespace relinc;

namespace {

ConvexFunctional builtin_named(int d, const std::string& name) {
  for (auto& phi : functionals::builtins(d))
    if (phi.name == name) return phi;
  throw InvalidArgument("unknown functional '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_relinc, m) {
  m.doc() = "Relative incompatibility of quantum measurements";

  auto error = py::register_exception<Error>(m, "RelincError", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<Indeterminate>(m, "Indeterminate", error.ptr());
  py::register_exception<DecompositionFailure>(m, "DecompositionFailure", error.ptr());
  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<Stochasticity>(m, "Stochasticity")
      .value("Bistochastic", Stochasticity::Bistochastic)
      .value("ColumnStochastic", Stochasticity::ColumnStochastic);
  py::enum_<CoherenceKind>(m, "CoherenceKind")
      .value("RelEntropy", CoherenceKind::RelEntropy)
      .value("TwoCoherence", CoherenceKind::TwoCoherence);

  py::class_<Basis>(m, "Basis")
      .def_static("from_unitary", [](const ComplexMatrix& u) { return Basis::from_unitary(u); })
      .def_static("computational", &Basis::computational)
      .def_property_readonly("dim", &Basis::dim)
      .def_property_readonly("unitary", &Basis::unitary)
      .def("projector", &Basis::projector);

  py::class_<Povm>(m, "Povm")
      .def_static("from_effects", [](std::vector<ComplexMatrix> e) { return Povm::from_effects(std::move(e)); })
      .def_static("from_basis", &Povm::from_basis)
      .def_property_readonly("dim", &Povm::dim)
      .def_property_readonly("size", &Povm::size)
      .def_property_readonly("effects", &Povm::effects)
      .def("padded", &Povm::padded);

  py::class_<DensityState>(m, "DensityState")
      .def_static("from_matrix", [](const ComplexMatrix& rho) { return DensityState::from_matrix(rho); })
      .def_static("maximally_mixed", &DensityState::maximally_mixed)
      .def_static("pure", &DensityState::pure)
      .def_property_readonly("dim", &DensityState::dim)
      .def_property_readonly("matrix", &DensityState::matrix);

  py::class_<OverlapMatrix>(m, "OverlapMatrix")
      .def_static("from_matrix", [](const RealMatrix& x, Stochasticity s) { return OverlapMatrix::from_matrix(x, s); })
      .def_property_readonly("matrix", &OverlapMatrix::matrix)
      .def_property_readonly("stochasticity", &OverlapMatrix::stochasticity)
      .def("transposed", &OverlapMatrix::transposed);

  m.def("overlap_matrix", &overlap_matrix, py::arg("b1"), py::arg("b0"));
  m.def("overlap_matrix_povm", &overlap_matrix_povm, py::arg("f"), py::arg("b0"));
  m.def("fourier_basis", &fourier_basis);
  m.def("qubit_rotated_basis", &qubit_rotated_basis);
  m.def("haar_random_basis", &haar_random_basis, py::arg("d"), py::arg("seed"));
  m.def("random_povm", &random_povm, py::arg("d"), py::arg("n_effects"), py::arg("seed"));
  m.def("random_density_state", &random_density_state, py::arg("d"), py::arg("seed"));
  m.def("dephase", &dephase);

  py::class_<PiecewiseLinearConvex>(m, "PiecewiseLinearConvex")
      .def("__call__", &PiecewiseLinearConvex::operator())
      .def("sum_over_rows", &PiecewiseLinearConvex::sum_over_rows)
      .def_property_readonly("pieces", &PiecewiseLinearConvex::pieces)
      .def_property_readonly("homogeneous", &PiecewiseLinearConvex::homogeneous)
      .def_property_readonly("slopes", &PiecewiseLinearConvex::slopes)
      .def_property_readonly("offsets", &PiecewiseLinearConvex::offsets);

  py::class_<MajorizationDecision>(m, "MajorizationDecision")
      .def_readonly("holds", &MajorizationDecision::holds)
      .def_readonly("cls", &MajorizationDecision::cls)
      .def_readonly("m", &MajorizationDecision::m)
      .def_readonly("witness", &MajorizationDecision::witness)
      .def_readonly("separation", &MajorizationDecision::separation);

  m.def(
      "matrix_majorizes",
      [](const OverlapMatrix& x1, const OverlapMatrix& x2, Stochasticity cls) { return matrix_majorizes(x1, x2, cls); },
      py::arg("x1"), py::arg("x2"), py::arg("cls") = Stochasticity::Bistochastic);
  m.def("vector_majorizes", py::overload_cast<const RealVector&, const RealVector&, double>(&vector_majorizes),
        py::arg("p"), py::arg("q"), py::arg("tol") = 1e-9);
  m.def("qubit_bloch_angle", &qubit_bloch_angle);

  py::class_<TTransform>(m, "TTransform")
      .def(py::init([](int i, int j, double t) { return TTransform{i, j, t}; }))
      .def_readonly("i", &TTransform::i)
      .def_readonly("j", &TTransform::j)
      .def_readonly("t", &TTransform::t)
      .def("matrix", &TTransform::matrix);
  m.def("ttransform_decompose", &ttransform_decompose, py::arg("m"), py::arg("tol") = 1e-9);
  m.def("ttransform_product", &ttransform_product);

  py::class_<ConvexFunctional>(m, "ConvexFunctional")
      .def_readonly("name", &ConvexFunctional::name)
      .def_readonly("homogeneous", &ConvexFunctional::homogeneous)
      .def("__call__", &ConvexFunctional::operator());
  m.def("builtin_functionals", &functionals::builtins, py::arg("d"), py::arg("seed") = 7);
  m.def("f_phi", &f_phi);
  m.def(
      "f_phi_builtin", [](const OverlapMatrix& x, const std::string& name) { return f_phi(x, builtin_named(x.cols(), name)); },
      py::arg("x"), py::arg("name"));
  m.def("subentropy", py::overload_cast<const RealVector&, double>(&subentropy), py::arg("p"),
        py::arg("delta_deg") = 1e-6);
  m.def("rel_entropy_coherence", &rel_entropy_coherence);
  m.def("two_coherence", &two_coherence);

  py::class_<CoherenceAverage>(m, "CoherenceAverage")
      .def_readonly("value", &CoherenceAverage::value)
      .def_readonly("std_error", &CoherenceAverage::std_error)
      .def_readonly("samples", &CoherenceAverage::samples);
  m.def(
      "coherence_average",
      [](const Basis& b, const Basis& b0, CoherenceKind kind, int samples, std::uint64_t seed) {
        if (samples <= 0) return coherence_average(b, b0, kind, Analytic{});
        return coherence_average(b, b0, kind, MonteCarlo{samples, seed});
      },
      py::arg("b"), py::arg("b0"), py::arg("kind"), py::arg("samples") = 0, py::arg("seed") = 0);

  m.def("renyi_entropy", py::overload_cast<const RealVector&, double>(&renyi_entropy));
  m.def("mu_bound", &mu_bound);
  m.def("q_bound", &q_bound);
  m.def("q_exact", &q_exact);
  m.def("variance_sum_sup", &variance_sum_sup);

  py::class_<ParentDecision>(m, "ParentDecision")
      .def_readonly("is_parent", &ParentDecision::is_parent)
      .def_readonly("m", &ParentDecision::m)
      .def_readonly("residual", &ParentDecision::residual);
  m.def("is_parent", [](const Povm& f, const Povm& g) { return is_parent(f, g); });
  m.def("parent_residual", &parent_residual);

  py::class_<DephasingSequence>(m, "DephasingSequence")
      .def_readonly("aux_bases", &DephasingSequence::aux_bases)
      .def_readonly("u", &DephasingSequence::u)
      .def_readonly("m", &DephasingSequence::m)
      .def_readonly("factors", &DephasingSequence::factors);
  m.def(
      "build_emulation",
      [](const Basis& b0, const Basis& b1, const Basis& b2, double tol) { return build_emulation(b0, b1, b2, tol); },
      py::arg("b0"), py::arg("b1"), py::arg("b2"), py::arg("tol") = 1e-9);
  m.def("emulation_residual", &emulation_residual);

  m.def("loads", [](const std::string& text) {
    return std::visit([](auto&& o) { return py::cast(o); }, io::parse_object_text(text));
  });
  m.def("dumps", [](const Basis& b) { return io::to_json(b).dump(); });
  m.def("dumps", [](const Povm& f) { return io::to_json(f).dump(); });
  m.def("dumps", [](const DensityState& s) { return io::to_json(s).dump(); });
}
