#include "qqpovm/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qqpovm/errors.hpp"

namespace qqpovm {

namespace {

void require_state_dim(const QuantumState& s, const ComplexMatrix& op, const char* what) {
    if (op.rows() != s.dim() || op.cols() != s.dim()) {
        std::ostringstream os;
        os << what << ": operator is " << op.rows() << "x" << op.cols() << ", state dimension " << s.dim();
        throw DimensionError(os.str());
    }
}

// M rho M^dagger
ComplexMatrix sandwich(const ComplexMatrix& m, const ComplexMatrix& rho) { return m * rho * m.adjoint(); }

}  // namespace

BinaryMeasurement BinaryMeasurement::from_yes(ComplexMatrix yes_matrix, std::string name) {
    if (!yes_matrix.is_square()) throw DimensionError("effect must be square");
    ComplexMatrix no_matrix = ComplexMatrix::identity(yes_matrix.rows()) - yes_matrix;
    return from_pair(std::move(yes_matrix), std::move(no_matrix), std::move(name));
}

BinaryMeasurement BinaryMeasurement::from_pair(ComplexMatrix yes_matrix, ComplexMatrix no_matrix, std::string name) {
    return BinaryMeasurement{Effect{std::move(yes_matrix), "yes"}, Effect{std::move(no_matrix), "no"},
                             std::move(name)};
}

std::string_view to_string(Convention c) { return c == Convention::Literal ? "literal" : "sqrt"; }

Convention parse_convention(std::string_view text) {
    if (text == "literal") return Convention::Literal;
    if (text == "sqrt") return Convention::Sqrt;
    throw std::invalid_argument("unknown convention '" + std::string(text) + "' (expected literal|sqrt)");
}

std::string_view to_string(Order o) { return o == Order::AFirst ? "a-first" : "b-first"; }

Order parse_order(std::string_view text) {
    if (text == "a-first") return Order::AFirst;
    if (text == "b-first") return Order::BFirst;
    throw std::invalid_argument("unknown order '" + std::string(text) + "' (expected a-first|b-first)");
}

QuantumState QuantumState::from_density(ComplexMatrix rho, Tolerance tol) {
    if (!rho.is_square() || rho.empty()) throw DimensionError("density matrix must be square and non-empty");
    if (!rho.all_finite()) throw InvalidStateError("density matrix has non-finite entries");
    if (!is_hermitian(rho, tol)) throw InvalidStateError("density matrix is not Hermitian");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > tol.abs_eps) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " != 1";
        throw InvalidStateError(os.str());
    }
    const double lo = min_eigenvalue(rho);
    if (lo < -tol.abs_eps) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lo;
        throw InvalidStateError(os.str());
    }
    return QuantumState(std::move(rho));
}

QuantumState QuantumState::from_amplitudes(std::span<const Complex> amplitudes) {
    double norm = 0.0;
    for (const auto& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidStateError("non-finite amplitude");
        norm += std::norm(a);
    }
    if (amplitudes.empty() || norm == 0.0) throw InvalidStateError("amplitudes must not all be zero");
    const std::size_t n = amplitudes.size();
    ComplexMatrix rho(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) rho(j, k) = std::conj(amplitudes[j]) * amplitudes[k] / norm;
    return QuantumState(std::move(rho));
}

QuantumState QuantumState::pure(Complex alpha, Complex beta) {
    const std::array<Complex, 2> amps{alpha, beta};
    return from_amplitudes(amps);
}

QuantumState QuantumState::mixture(const QuantumState& a, const QuantumState& b, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("mixture weight must lie in [0, 1]");
    if (a.dim() != b.dim()) throw DimensionError("mixture of states with different dimensions");
    return QuantumState(a.rho() * weight + b.rho() * (1.0 - weight));
}

ValidationReport validate_measurement(const BinaryMeasurement& m, Tolerance tol) {
    const auto& y = m.yes.matrix;
    const auto& n = m.no.matrix;
    if (!y.is_square() || !n.is_square()) throw DimensionError("measurement effects must be square");
    if (y.rows() != n.rows()) throw DimensionError("measurement effects differ in dimension");

    ValidationReport r;
    r.hermiticity_residual = std::max(max_abs_diff(y, y.adjoint()), max_abs_diff(n, n.adjoint()));
    r.min_eigenvalue = std::min(min_eigenvalue(y), min_eigenvalue(n));
    r.completeness_residual = max_abs_diff(y + n, ComplexMatrix::identity(y.rows()));
    r.idempotence_residual = std::max(idempotence_residual(y), idempotence_residual(n));
    r.hermitian = r.hermiticity_residual <= tol.abs_eps;
    r.positive = r.min_eigenvalue >= -tol.abs_eps;
    r.complete = r.completeness_residual <= tol.abs_eps;
    r.projective = r.hermitian && r.idempotence_residual <= tol.abs_eps;
    return r;
}

void require_valid(const BinaryMeasurement& m, Tolerance tol) {
    const auto r = validate_measurement(m, tol);
    if (r.valid()) return;
    std::ostringstream os;
    os << "measurement '" << m.name << "' is not a valid POVM:";
    if (!r.hermitian) os << " non-Hermitian (residual " << r.hermiticity_residual << ")";
    if (!r.positive) os << " negative eigenvalue " << r.min_eigenvalue;
    if (!r.complete) os << " incomplete (residual " << r.completeness_residual << ")";
    throw InvalidMeasurementError(os.str());
}

ComplexMatrix update_operator(const Effect& e, Convention c, Tolerance tol) {
    if (c == Convention::Literal) return e.matrix;
    return principal_sqrt(e.matrix, tol);
}

QuantumState post_state(const QuantumState& s, const Effect& e, Convention c, Tolerance tol) {
    require_state_dim(s, e.matrix, "post_state");
    const ComplexMatrix m = update_operator(e, c, tol);
    ComplexMatrix out = sandwich(m, s.rho());
    const double prob = real_trace(out);
    if (prob <= tol.abs_eps) {
        std::ostringstream os;
        os << "outcome '" << e.label << "' has probability " << prob << " <= tolerance";
        throw ZeroProbabilityError(os.str());
    }
    out *= 1.0 / prob;
    return QuantumState::from_density(hermitian_part(out), tol);
}

double sequential_joint_prob(const QuantumState& s, const Effect& first, const Effect& second, Convention c,
                             Tolerance tol) {
    require_state_dim(s, first.matrix, "sequential_joint_prob");
    require_state_dim(s, second.matrix, "sequential_joint_prob");
    const ComplexMatrix m = update_operator(second, c, tol) * update_operator(first, c, tol);
    // Tr(M rho M^dagger) = Tr(M^dagger M rho)
    return real_trace_product(m.adjoint() * m, s.rho());
}

OutcomeTable outcome_distribution(const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b,
                                  Order order, Convention c, Tolerance tol) {
    const BinaryMeasurement& first = order == Order::AFirst ? a : b;
    const BinaryMeasurement& second = order == Order::AFirst ? b : a;
    require_state_dim(s, first.yes.matrix, "outcome_distribution");
    require_state_dim(s, second.yes.matrix, "outcome_distribution");

    // Update operators are computed once and reused for all four cells.
    const std::array<ComplexMatrix, 2> m1{update_operator(first.yes, c, tol), update_operator(first.no, c, tol)};
    const std::array<ComplexMatrix, 2> m2{update_operator(second.yes, c, tol), update_operator(second.no, c, tol)};

    OutcomeTable t;
    t.order = order;
    t.convention = c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const ComplexMatrix m = m2[j] * m1[i];
            t.p[i][j] = real_trace_product(m.adjoint() * m, s.rho());
        }
    t.normalization_defect = 1.0 - t.total();
    return t;
}

}  // namespace qqpovm
