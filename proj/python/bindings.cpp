#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qqpovm/errors.hpp"
#include "qqpovm/measurement.hpp"
#include "qqpovm/model_io.hpp"
#include "qqpovm/montecarlo.hpp"
#include "qqpovm/neumark.hpp"
#include "qqpovm/qq.hpp"
#include "qqpovm/reference_model.hpp"

namespace py = pybind11;
using namespace qqpovm;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    std::vector<Complex> data(a.data(), a.data() + rows * cols);
    return ComplexMatrix(rows, cols, std::move(data));
}

CArray to_array(const ComplexMatrix& m) {
    CArray out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
    return out;
}

py::dict table_dict(const OutcomeTable& t) {
    py::array_t<double> p({2, 2});
    auto v = p.mutable_unchecked<2>();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v(i, j) = t.p[i][j];
    py::dict d;
    d["order"] = t.order;
    d["convention"] = t.convention;
    d["p"] = p;
    d["normalization_defect"] = t.normalization_defect;
    return d;
}

py::dict certificate_dict(const DilationCertificate& c) {
    py::dict d;
    d["passed"] = c.passed();
    d["isometry_residual"] = c.isometry_residual;
    d["idempotence_residual"] = c.idempotence_residual;
    d["hermiticity_residual"] = c.hermiticity_residual;
    d["completeness_residual"] = c.completeness_residual;
    d["compression_residual"] = c.compression_residual;
    d["probability_residual"] = c.probability_residual;
    d["probability_samples"] = c.probability_samples;
    return d;
}

Effect effect_of(const CArray& a) { return Effect{to_matrix(a), {}}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Order effects of binary POVM questions: QQ statistic, zero states, Neumark liftings";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NotPsdError>(m, "NotPsdError", PyExc_ValueError);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
    py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError", PyExc_ValueError);
    py::register_exception<InvalidMeasurementError>(m, "InvalidMeasurementError", PyExc_ValueError);
    py::register_exception<UnsupportedConventionError>(m, "UnsupportedConventionError", PyExc_ValueError);
    py::register_exception<ModelParseError>(m, "ModelParseError", PyExc_ValueError);

    py::enum_<Convention>(m, "Convention")
        .value("LITERAL", Convention::Literal)
        .value("SQRT", Convention::Sqrt);
    py::enum_<Order>(m, "Order")
        .value("A_FIRST", Order::AFirst)
        .value("B_FIRST", Order::BFirst);

    py::class_<BinaryMeasurement>(m, "BinaryMeasurement")
        .def(py::init([](const CArray& yes, const CArray& no, std::string name) {
                 return BinaryMeasurement::from_pair(to_matrix(yes), to_matrix(no), std::move(name));
             }),
             py::arg("yes"), py::arg("no"), py::arg("name") = "")
        .def_static("from_yes",
                    [](const CArray& yes, std::string name) {
                        return BinaryMeasurement::from_yes(to_matrix(yes), std::move(name));
                    },
                    py::arg("yes"), py::arg("name") = "")
        .def_property_readonly("yes", [](const BinaryMeasurement& b) { return to_array(b.yes.matrix); })
        .def_property_readonly("no", [](const BinaryMeasurement& b) { return to_array(b.no.matrix); })
        .def_readonly("name", &BinaryMeasurement::name)
        .def_property_readonly("dim", &BinaryMeasurement::dim)
        .def("__repr__", [](const BinaryMeasurement& b) {
            return "<BinaryMeasurement '" + b.name + "' dim=" + std::to_string(b.dim()) + ">";
        });

    py::class_<QuantumState>(m, "QuantumState")
        .def_static("from_density",
                    [](const CArray& rho, double tol) { return QuantumState::from_density(to_matrix(rho), Tolerance(tol)); },
                    py::arg("rho"), py::arg("tol") = 1e-10)
        .def_static("pure", &QuantumState::pure, py::arg("alpha"), py::arg("beta"))
        .def_static("from_amplitudes",
                    [](const std::vector<Complex>& amps) { return QuantumState::from_amplitudes(amps); })
        .def_static("mixture", &QuantumState::mixture, py::arg("a"), py::arg("b"), py::arg("weight"))
        .def_property_readonly("rho", [](const QuantumState& s) { return to_array(s.rho()); })
        .def_property_readonly("dim", &QuantumState::dim);

    m.def("is_hermitian", [](const CArray& a, double tol) { return is_hermitian(to_matrix(a), Tolerance(tol)); },
          py::arg("m"), py::arg("tol") = 1e-10);
    m.def("eig_hermitian",
          [](const CArray& a) {
              const auto e = eig_hermitian(to_matrix(a));
              return py::make_tuple(e.values, to_array(e.vectors));
          });
    m.def("principal_sqrt", [](const CArray& a, double tol) { return to_array(principal_sqrt(to_matrix(a), Tolerance(tol))); },
          py::arg("m"), py::arg("tol") = 1e-10);

    m.def("validate_measurement",
          [](const BinaryMeasurement& b, double tol) {
              const auto r = validate_measurement(b, Tolerance(tol));
              py::dict d;
              d["valid"] = r.valid();
              d["hermitian"] = r.hermitian;
              d["positive"] = r.positive;
              d["complete"] = r.complete;
              d["projective"] = r.projective;
              d["hermiticity_residual"] = r.hermiticity_residual;
              d["min_eigenvalue"] = r.min_eigenvalue;
              d["completeness_residual"] = r.completeness_residual;
              d["idempotence_residual"] = r.idempotence_residual;
              return d;
          },
          py::arg("measurement"), py::arg("tol") = 1e-10);
    m.def("update_operator",
          [](const CArray& e, Convention c, double tol) { return to_array(update_operator(effect_of(e), c, Tolerance(tol))); },
          py::arg("effect"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("post_state",
          [](const QuantumState& s, const CArray& e, Convention c, double tol) {
              return post_state(s, effect_of(e), c, Tolerance(tol));
          },
          py::arg("state"), py::arg("effect"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("sequential_joint_prob",
          [](const QuantumState& s, const CArray& first, const CArray& second, Convention c, double tol) {
              return sequential_joint_prob(s, effect_of(first), effect_of(second), c, Tolerance(tol));
          },
          py::arg("state"), py::arg("first"), py::arg("second"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("outcome_distribution",
          [](const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b, Order o, Convention c,
             double tol) { return table_dict(outcome_distribution(s, a, b, o, c, Tolerance(tol))); },
          py::arg("state"), py::arg("a"), py::arg("b"), py::arg("order"), py::arg("convention"), py::arg("tol") = 1e-10);

    m.def("qq_operator",
          [](const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, double tol) {
              return to_array(qq_operator(a, b, c, Tolerance(tol)));
          },
          py::arg("a"), py::arg("b"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("qq_statistic",
          [](const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, double tol) {
              const auto r = qq_statistic(s, a, b, c, Tolerance(tol));
              py::dict d;
              d["statistic"] = r.statistic;
              d["statistic_from_probabilities"] = r.statistic_from_probabilities;
              d["k_operator"] = to_array(r.k_operator);
              d["convention"] = r.convention;
              d["zero_state"] = r.zero_state;
              d["coupling"] = r.coupling;
              d["a_first"] = table_dict(r.a_first);
              d["b_first"] = table_dict(r.b_first);
              return d;
          },
          py::arg("state"), py::arg("a"), py::arg("b"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("zero_state_condition",
          [](Complex alpha, Complex beta, const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
             double tol) { return zero_state_condition(alpha, beta, a, b, c, Tolerance(tol)); },
          py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("max_violation",
          [](const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, double tol) {
              auto e = max_violation(a, b, c, Tolerance(tol));
              return py::make_tuple(e.value, e.maximizer);
          },
          py::arg("a"), py::arg("b"), py::arg("convention"), py::arg("tol") = 1e-10);
    m.def("zero_manifold_scan",
          [](const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, std::size_t grid, double tol) {
              py::list out;
              for (const auto& p : zero_manifold_scan(a, b, c, grid, Tolerance(tol))) {
                  py::dict d;
                  d["theta_index"] = p.theta_index;
                  d["phi_index"] = p.phi_index;
                  d["theta"] = p.theta;
                  d["phi"] = p.phi;
                  d["alpha"] = p.alpha;
                  d["beta"] = p.beta;
                  d["statistic"] = p.statistic;
                  out.append(d);
              }
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("convention"), py::arg("grid_steps"), py::arg("tol") = 1e-10);

    py::class_<Dilation>(m, "Dilation")
        .def_readonly("original", &Dilation::original)
        .def_readonly("lifted", &Dilation::lifted)
        .def_readonly("extended_dim", &Dilation::extended_dim)
        .def_property_readonly("embedding", [](const Dilation& d) { return to_array(d.embedding); })
        .def_property_readonly("ancilla_assignment", [](const Dilation& d) {
            std::vector<std::string> roles;
            for (auto r : d.ancilla_assignment) roles.emplace_back(r == AncillaRole::Paired ? "paired" : "absorbed-no");
            return roles;
        });
    m.def("dilate_binary", [](const BinaryMeasurement& b, double tol) { return dilate_binary(b, Tolerance(tol)); },
          py::arg("measurement"), py::arg("tol") = 1e-10);
    m.def("verify_dilation",
          [](const Dilation& d, double tol, std::size_t samples) {
              return certificate_dict(verify_dilation(d, Tolerance(tol), samples));
          },
          py::arg("dilation"), py::arg("tol") = 1e-10, py::arg("samples") = 20);
    m.def("common_space_lift",
          [](const BinaryMeasurement& a, const BinaryMeasurement& b, double tol) {
              auto lift = common_space_lift(a, b, Tolerance(tol));
              py::dict d;
              d["lifted_a"] = lift.lifted_a;
              d["lifted_b"] = lift.lifted_b;
              d["embedding"] = to_array(lift.embedding);
              d["extended_dim"] = lift.extended_dim;
              d["dilation_a"] = lift.dilation_a;
              d["dilation_b"] = lift.dilation_b;
              return d;
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10);
    m.def("lifted_qq_check",
          [](const BinaryMeasurement& a, const BinaryMeasurement& b, const QuantumState& s, double tol) {
              const auto r = lifted_qq_check(a, b, s, Tolerance(tol));
              return py::make_tuple(r.before, r.after);
          },
          py::arg("a"), py::arg("b"), py::arg("state"), py::arg("tol") = 1e-10);

    m.def("simulate",
          [](const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b, std::uint64_t n,
             std::uint64_t seed, Convention c) {
              EmpiricalReport r;
              {
                  py::gil_scoped_release release;
                  r = simulate(ExperimentConfig{s, a, b, c, n, seed});
              }
              py::dict d;
              d["counts"] = r.counts;
              d["n_per_order"] = r.n_per_order;
              d["empirical_qq"] = r.empirical_qq;
              d["standard_error"] = r.standard_error;
              d["analytic_qq"] = r.analytic_qq;
              return d;
          },
          py::arg("state"), py::arg("a"), py::arg("b"), py::arg("n_per_order"), py::arg("seed"),
          py::arg("convention") = Convention::Sqrt);
    m.def("convergence_sweep",
          [](const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b,
             const std::vector<std::uint64_t>& sizes, std::uint64_t seed, Convention c) {
              std::vector<SweepRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = convergence_sweep(ExperimentConfig{s, a, b, c, 1, seed}, sizes);
              }
              py::list out;
              for (const auto& r : rows) {
                  py::dict d;
                  d["n"] = r.n;
                  d["abs_error"] = r.abs_error;
                  d["standard_error"] = r.standard_error;
                  d["empirical_qq"] = r.empirical_qq;
                  d["analytic_qq"] = r.analytic_qq;
                  out.append(d);
              }
              return out;
          },
          py::arg("state"), py::arg("a"), py::arg("b"), py::arg("sizes"), py::arg("seed"),
          py::arg("convention") = Convention::Sqrt);

    py::class_<ModelFile>(m, "ModelFile")
        .def_readonly("dimension", &ModelFile::dimension)
        .def_readonly("measurements", &ModelFile::measurements)
        .def_readonly("convention", &ModelFile::convention)
        .def_readonly("tolerance", &ModelFile::tolerance)
        .def_property_readonly("state", &ModelFile::state)
        .def("measurement", &ModelFile::measurement, py::return_value_policy::copy)
        .def("emit", &emit_model);
    m.def("parse_model", &parse_model, py::arg("text"));
    m.def("load_model", &load_model, py::arg("path"));

    auto ref = m.def_submodule("reference", "The two-question qubit model and its hand-built liftings");
    ref.def("qq_constant", &reference::qq_constant);
    ref.def("question_a", &reference::question_a);
    ref.def("question_b", &reference::question_b);
    ref.def("uniform_state", &reference::uniform_state);
    ref.def("zero_states", [] {
        const auto z = reference::zero_states();
        return std::vector<QuantumState>(z.begin(), z.end());
    });
    ref.def("lifted_question_a", &reference::lifted_question_a);
    ref.def("lifted_question_b", &reference::lifted_question_b);
}
