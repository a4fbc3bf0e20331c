#include "qqpovm/neumark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qqpovm/errors.hpp"
#include "qqpovm/qq.hpp"
#include "qqpovm/random_models.hpp"

namespace qqpovm {

namespace {

bool is_fractional(double lambda, Tolerance tol) { return lambda > tol.abs_eps && lambda < 1.0 - tol.abs_eps; }

ComplexMatrix top_embedding(std::size_t extended, std::size_t original) {
    return ComplexMatrix::identity(original).padded(extended, original);
}

// Lifted "yes" projector of m on a space with `extended` >= d + k dimensions;
// ancilla directions start at index d.
ComplexMatrix lifted_yes(const BinaryMeasurement& m, std::size_t extended, Tolerance tol) {
    const std::size_t d = m.dim();
    const auto eig = eig_hermitian(m.yes.matrix);
    ComplexMatrix p(extended, extended);
    std::size_t next_ancilla = d;
    std::vector<Complex> u(extended);
    for (std::size_t i = 0; i < d; ++i) {
        const double lambda = eig.values[i];
        if (lambda <= tol.abs_eps) continue;
        std::fill(u.begin(), u.end(), Complex{});
        if (is_fractional(lambda, tol)) {
            const double a = std::sqrt(lambda);
            for (std::size_t r = 0; r < d; ++r) u[r] = a * eig.vectors(r, i);
            u[next_ancilla++] = std::sqrt(1.0 - lambda);
        } else {
            for (std::size_t r = 0; r < d; ++r) u[r] = eig.vectors(r, i);
        }
        p += ComplexMatrix::outer(u);
    }
    return hermitian_part(p);
}

Dilation dilate_into(const BinaryMeasurement& m, std::size_t extended, Tolerance tol) {
    const std::size_t d = m.dim();
    const std::size_t k = fractional_eigenvalue_count(m, tol);
    Dilation out;
    out.original = m;
    out.extended_dim = extended;
    out.embedding = top_embedding(extended, d);
    ComplexMatrix yes = lifted_yes(m, extended, tol);
    ComplexMatrix no = ComplexMatrix::identity(extended) - yes;
    out.lifted = BinaryMeasurement::from_pair(std::move(yes), std::move(no), m.name + "'");
    out.ancilla_assignment.assign(extended - d, AncillaRole::AbsorbedNo);
    std::fill_n(out.ancilla_assignment.begin(), k, AncillaRole::Paired);
    return out;
}

}  // namespace

std::size_t fractional_eigenvalue_count(const BinaryMeasurement& m, Tolerance tol) {
    const auto eig = eig_hermitian(m.yes.matrix);
    return static_cast<std::size_t>(
        std::count_if(eig.values.begin(), eig.values.end(), [&](double l) { return is_fractional(l, tol); }));
}

Dilation dilate_binary(const BinaryMeasurement& m, Tolerance tol) {
    require_valid(m, tol);
    return dilate_into(m, m.dim() + fractional_eigenvalue_count(m, tol), tol);
}

QuantumState embed_state(const QuantumState& s, const ComplexMatrix& embedding, Tolerance tol) {
    if (embedding.cols() != s.dim()) throw DimensionError("embedding does not match state dimension");
    return QuantumState::from_density(hermitian_part(embedding * s.rho() * embedding.adjoint()), tol);
}

DilationCertificate verify_dilation(const Dilation& d, Tolerance tol, std::size_t samples, unsigned long long seed) {
    DilationCertificate c;
    c.tol = tol;
    const auto& v = d.embedding;
    const auto& py = d.lifted.yes.matrix;
    const auto& pn = d.lifted.no.matrix;
    const std::size_t n = d.original.dim();
    const std::size_t big = d.extended_dim;

    // Shape problems are reported as failures rather than thrown.
    if (v.rows() != big || v.cols() != n || py.rows() != big || !py.is_square() || pn.rows() != big ||
        !pn.is_square()) {
        const double inf = std::numeric_limits<double>::infinity();
        c.isometry_residual = c.idempotence_residual = c.hermiticity_residual = inf;
        c.completeness_residual = c.compression_residual = c.probability_residual = inf;
        return c;
    }

    c.isometry_residual = max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(n));
    c.idempotence_residual = std::max(idempotence_residual(py), idempotence_residual(pn));
    c.hermiticity_residual = std::max(max_abs_diff(py, py.adjoint()), max_abs_diff(pn, pn.adjoint()));
    c.completeness_residual = max_abs_diff(py + pn, ComplexMatrix::identity(big));
    c.compression_residual = std::max(max_abs_diff(v.adjoint() * py * v, d.original.yes.matrix),
                                      max_abs_diff(v.adjoint() * pn * v, d.original.no.matrix));

    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const QuantumState rho = random_state(n, rng);
        // V rho V^dagger without the state validation, which a broken isometry would fail.
        const ComplexMatrix lifted_rho = v * rho.rho() * v.adjoint();
        const double p_orig = real_trace_product(rho.rho(), d.original.yes.matrix);
        const double p_lift = (lifted_rho * py).trace().real();
        c.probability_residual = std::max(c.probability_residual, std::abs(p_orig - p_lift));
    }
    c.probability_samples = samples;
    return c;
}

CommonLift common_space_lift(const BinaryMeasurement& a, const BinaryMeasurement& b, Tolerance tol) {
    if (a.dim() != b.dim()) throw DimensionError("common_space_lift: measurements act on different dimensions");
    require_valid(a, tol);
    require_valid(b, tol);
    const std::size_t extended = a.dim() + std::max(fractional_eigenvalue_count(a, tol),
                                                    fractional_eigenvalue_count(b, tol));
    CommonLift out{.lifted_a = {},
                   .lifted_b = {},
                   .embedding = top_embedding(extended, a.dim()),
                   .extended_dim = extended,
                   .dilation_a = dilate_into(a, extended, tol),
                   .dilation_b = dilate_into(b, extended, tol)};
    out.lifted_a = out.dilation_a.lifted;
    out.lifted_b = out.dilation_b.lifted;
    return out;
}

LiftedQq lifted_qq_check(const BinaryMeasurement& a, const BinaryMeasurement& b, const QuantumState& s,
                         Tolerance tol) {
    const auto lift = common_space_lift(a, b, tol);
    LiftedQq out;
    out.extended_dim = lift.extended_dim;
    out.before = qq_statistic(s, a, b, Convention::Literal, tol).statistic;
    const QuantumState lifted_state = embed_state(s, lift.embedding, tol);
    out.after = qq_statistic(lifted_state, lift.lifted_a, lift.lifted_b, Convention::Literal, tol).statistic;
    return out;
}

}  // namespace qqpovm
