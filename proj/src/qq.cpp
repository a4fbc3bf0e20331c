#include "qqpovm/qq.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qqpovm/errors.hpp"

namespace qqpovm {

namespace {

void require_same_dim(const BinaryMeasurement& a, const BinaryMeasurement& b) {
    if (a.dim() != b.dim() || a.no.matrix.rows() != a.dim() || b.no.matrix.rows() != b.dim()) {
        std::ostringstream os;
        os << "measurements '" << a.name << "' and '" << b.name << "' act on different dimensions";
        throw DimensionError(os.str());
    }
}

// (Y X)^dagger (Y X) for update operators X (first) and Y (second).
ComplexMatrix sequence_effect(const ComplexMatrix& first, const ComplexMatrix& second) {
    const ComplexMatrix m = second * first;
    return m.adjoint() * m;
}

}  // namespace

ComplexMatrix qq_operator(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, Tolerance tol) {
    require_same_dim(a, b);
    const ComplexMatrix ay = update_operator(a.yes, c, tol);
    const ComplexMatrix an = update_operator(a.no, c, tol);
    const ComplexMatrix by = update_operator(b.yes, c, tol);
    const ComplexMatrix bn = update_operator(b.no, c, tol);

    ComplexMatrix k = sequence_effect(ay, bn);
    k += sequence_effect(an, by);
    k -= sequence_effect(by, an);
    k -= sequence_effect(bn, ay);
    return hermitian_part(k);
}

QqReport qq_statistic(const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                      Tolerance tol) {
    QqReport r;
    r.convention = c;
    r.k_operator = qq_operator(a, b, c, tol);
    if (r.k_operator.rows() != s.dim()) throw DimensionError("qq_statistic: state and measurement dimensions differ");
    r.a_first = outcome_distribution(s, a, b, Order::AFirst, c, tol);
    r.b_first = outcome_distribution(s, a, b, Order::BFirst, c, tol);
    // p[first][second], 0 = yes, 1 = no
    r.statistic_from_probabilities = r.a_first.p[0][1] + r.a_first.p[1][0] - r.b_first.p[0][1] - r.b_first.p[1][0];
    r.statistic = real_trace_product(s.rho(), r.k_operator);
    r.zero_state = std::abs(r.statistic) <= tol.abs_eps;
    if (r.k_operator.rows() == 2) r.coupling = std::abs(r.k_operator(0, 1));
    return r;
}

bool zero_state_condition(Complex alpha, Complex beta, const BinaryMeasurement& a, const BinaryMeasurement& b,
                          Convention c, Tolerance tol) {
    if (a.dim() != 2 || b.dim() != 2) throw DimensionError("zero_state_condition requires a two-dimensional model");
    const QuantumState s = QuantumState::pure(alpha, beta);
    const ComplexMatrix k = qq_operator(a, b, c, tol);
    return std::abs(real_trace_product(s.rho(), k)) <= tol.abs_eps;
}

Extremum max_violation(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, Tolerance tol) {
    const ComplexMatrix k = qq_operator(a, b, c, tol);
    const auto eig = eig_hermitian(k);
    const std::size_t top = eig.values.size() - 1;
    const auto v = eig.vectors.column(top);
    // from_amplitudes builds conj(v) conj(v)^dagger, so pass conj(v) to get v v^dagger.
    std::vector<Complex> amps(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) amps[i] = std::conj(v[i]);
    return Extremum{eig.values[top], QuantumState::from_amplitudes(amps)};
}

double scan_theta(std::size_t index, std::size_t grid_steps) {
    return std::numbers::pi * static_cast<double>(index) / static_cast<double>(grid_steps - 1);
}

double scan_phi(std::size_t index, std::size_t grid_steps) {
    return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(grid_steps);
}

std::vector<ScanPoint> bloch_grid(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                                  std::size_t grid_steps, Tolerance tol) {
    if (grid_steps < 2) throw std::invalid_argument("grid_steps must be >= 2");
    if (a.dim() != 2 || b.dim() != 2) throw DimensionError("zero_manifold_scan requires a two-dimensional model");
    const ComplexMatrix k = qq_operator(a, b, c, tol);

    std::vector<ScanPoint> out;
    out.reserve(grid_steps * grid_steps);
    for (std::size_t i = 0; i < grid_steps; ++i) {
        const double theta = scan_theta(i, grid_steps);
        for (std::size_t j = 0; j < grid_steps; ++j) {
            const double phi = scan_phi(j, grid_steps);
            ScanPoint pt;
            pt.theta_index = i;
            pt.phi_index = j;
            pt.theta = theta;
            pt.phi = phi;
            pt.alpha = std::cos(theta / 2.0);
            pt.beta = std::polar(std::sin(theta / 2.0), phi);
            pt.statistic = real_trace_product(QuantumState::pure(pt.alpha, pt.beta).rho(), k);
            out.push_back(pt);
        }
    }
    return out;
}

std::vector<ScanPoint> zero_manifold_scan(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                                          std::size_t grid_steps, Tolerance tol) {
    auto grid = bloch_grid(a, b, c, grid_steps, tol);
    std::erase_if(grid, [&](const ScanPoint& p) { return std::abs(p.statistic) > tol.abs_eps; });
    return grid;
}

}  // namespace qqpovm
