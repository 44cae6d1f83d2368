#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepcert/io.hpp"
#include "sepcert/version.hpp"

namespace py = pybind11;
using namespace sepcert;

namespace {

using PyMat = std::vector<std::vector<cplx>>;

CMat mat_from_py(const PyMat& rows) {
    const int r = static_cast<int>(rows.size());
    if (r == 0) throw Error(Error::Kind::Shape, "invalid-shape error: empty matrix");
    const int c = static_cast<int>(rows[0].size());
    CMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
            throw Error(Error::Kind::Shape, "invalid-shape error: ragged rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

PyMat mat_to_py(const CMat& m) {
    PyMat rows(static_cast<size_t>(m.rows()), std::vector<cplx>(static_cast<size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_sepcert, m) {
    m.doc() = "Two-qubit separability certification: chiral frame criterion, PPT, "
              "concurrence and CHSH diagnostics";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "SepcertError");

    py::class_<PureState>(m, "PureState")
        .def(py::init<std::array<cplx, 4>, double>(), py::arg("amplitudes"),
             py::arg("tol") = 1e-8)
        .def_property_readonly("amplitudes", &PureState::amplitudes)
        .def_static("basis", &PureState::basis, py::arg("index"))
        .def_static("singlet", &PureState::singlet);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("matrix", [](const DensityMatrix& d) { return mat_to_py(d.matrix()); })
        .def_property_readonly("min_eigenvalue", &DensityMatrix::min_eigenvalue)
        .def_property_readonly("renormalized", &DensityMatrix::renormalized);

    py::class_<SchmidtForm>(m, "SchmidtForm")
        .def_readonly("s1", &SchmidtForm::s1)
        .def_readonly("s2", &SchmidtForm::s2)
        .def_readonly("delta", &SchmidtForm::delta)
        .def_property_readonly("u", [](const SchmidtForm& s) { return mat_to_py(s.u); })
        .def_property_readonly("v", [](const SchmidtForm& s) { return mat_to_py(s.v); })
        .def("reconstruct", &SchmidtForm::reconstruct);

    py::class_<LocalFrame>(m, "LocalFrame")
        .def_static("from_angles", &LocalFrame::from_angles, py::arg("angles_u"),
                    py::arg("angles_v"))
        .def_static("identity", &LocalFrame::identity)
        .def_property_readonly("angles_u", &LocalFrame::angles_u)
        .def_property_readonly("angles_v", &LocalFrame::angles_v)
        .def_property_readonly("u", [](const LocalFrame& f) { return mat_to_py(f.u()); })
        .def_property_readonly("v", [](const LocalFrame& f) { return mat_to_py(f.v()); });

    py::class_<HefeiExpectations>(m, "HefeiExpectations")
        .def_readonly("p_minus", &HefeiExpectations::p_minus)
        .def_readonly("p_plus", &HefeiExpectations::p_plus)
        .def_readonly("g3_minus", &HefeiExpectations::g3_minus)
        .def_readonly("g3_plus", &HefeiExpectations::g3_plus)
        .def_readonly("g2_minus", &HefeiExpectations::g2_minus)
        .def_readonly("g2_plus", &HefeiExpectations::g2_plus)
        .def_readonly("g1_minus", &HefeiExpectations::g1_minus)
        .def_readonly("g1_plus", &HefeiExpectations::g1_plus);

    py::class_<HefeiMargins>(m, "HefeiMargins")
        .def_readonly("m_minus", &HefeiMargins::m_minus)
        .def_readonly("m_plus", &HefeiMargins::m_plus)
        .def_readonly("m_plus_all", &HefeiMargins::m_plus_all)
        .def_readonly("expectations", &HefeiMargins::expectations);

    py::class_<PptResult>(m, "PptResult")
        .def_readonly("min_eigenvalue", &PptResult::min_eigenvalue)
        .def_readonly("spectrum", &PptResult::spectrum)
        .def_property_readonly("verdict",
                               [](const PptResult& p) { return to_string(p.verdict); });

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("grid_points_per_angle", &SearchConfig::grid_points_per_angle)
        .def_readwrite("refinement_iterations", &SearchConfig::refinement_iterations)
        .def_readwrite("refinement_tolerance", &SearchConfig::refinement_tolerance)
        .def_readwrite("violation_threshold", &SearchConfig::violation_threshold)
        .def_readwrite("seed_frames_from_correlation", &SearchConfig::seed_frames_from_correlation);

    py::class_<CriterionReport>(m, "CriterionReport")
        .def_property_readonly("verdict",
                               [](const CriterionReport& r) { return to_string(r.verdict); })
        .def_readonly("min_m_plus", &CriterionReport::min_m_plus)
        .def_readonly("witness_frame", &CriterionReport::witness_frame)
        .def_readonly("min_m_minus_observed", &CriterionReport::min_m_minus_observed)
        .def_readonly("ppt", &CriterionReport::ppt)
        .def_readonly("agreement", &CriterionReport::agreement)
        .def_readonly("converged", &CriterionReport::converged);

    py::class_<ExpansionCoefficients>(m, "ExpansionCoefficients")
        .def_readonly("a1", &ExpansionCoefficients::a1)
        .def_readonly("a2", &ExpansionCoefficients::a2)
        .def_readonly("a3", &ExpansionCoefficients::a3)
        .def_readonly("residual", &ExpansionCoefficients::residual);

    m.def("validate_density",
          [](const PyMat& rows, double tol) { return validate_density(mat_from_py(rows), tol); },
          py::arg("matrix"), py::arg("tol") = 1e-9);
    m.def("pure_to_density", &pure_to_density, py::arg("state"));
    m.def("schmidt_decompose", &schmidt_decompose, py::arg("state"));
    m.def("partial_transpose",
          [](const DensityMatrix& rho) { return mat_to_py(partial_transpose(rho)); },
          py::arg("rho"));
    m.def("partial_time_reversal",
          [](const DensityMatrix& rho) { return mat_to_py(partial_time_reversal(rho)); },
          py::arg("rho"));
    m.def("werner", &werner, py::arg("beta"));
    m.def("random_pure", py::overload_cast<uint64_t>(&random_pure), py::arg("seed"));
    m.def("random_mixed", py::overload_cast<uint64_t, int>(&random_mixed), py::arg("seed"),
          py::arg("rank") = 4);
    m.def("random_separable", py::overload_cast<uint64_t, int>(&random_separable),
          py::arg("seed"), py::arg("terms") = 2);

    m.def("ppt_test", &ppt_test, py::arg("rho"), py::arg("tol") = 1e-9);
    m.def("hefei_margins", &hefei_margins, py::arg("rho"), py::arg("frame"));
    m.def("concurrence", &concurrence, py::arg("rho"));
    m.def("chsh_max", &chsh_max, py::arg("rho"));
    m.def("correlation_matrix", &correlation_matrix, py::arg("rho"));
    m.def("expansion_coefficients", &expansion_coefficients, py::arg("rho_pure"),
          py::arg("frame"));
    m.def("verify_algebra",
          [](const LocalFrame& f) {
              const AlgebraReport rep = verify_algebra(f);
              py::dict d;
              d["clifford"] = rep.clifford;
              d["gamma5_product"] = rep.gamma5_product;
              d["gamma5_anticommute"] = rep.gamma5_anticommute;
              d["gamma5_commute"] = rep.gamma5_commute;
              d["gk_g0_identities"] = rep.gk_g0_identities;
              d["duality"] = rep.duality;
              d["duality_projected"] = rep.duality_projected;
              d["projectors"] = rep.projectors;
              d["b_conjugation"] = rep.b_conjugation;
              d["su2_structure"] = rep.su2_structure;
              d["ab_commutators"] = rep.ab_commutators;
              d["max_residual"] = rep.max_residual();
              return d;
          },
          py::arg("frame"));

    m.def("seed_frames", &seed_frames, py::arg("rho"));
    m.def("certify", &certify, py::arg("rho"), py::arg("config") = SearchConfig{});
}
