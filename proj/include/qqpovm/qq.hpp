#pragma once

// The question-order (QQ) statistic
//
//   q = p(Ay,Bn) + p(An,By) - p(By,An) - p(Bn,Ay)
//
// where p(Xa,Yb) is the probability of answering a to X first and then b to Y.
// q is linear in the state, q = Tr(rho K), and vanishes identically when both
// questions are projective.

#include <cstddef>
#include <vector>

#include "qqpovm/linalg.hpp"
#include "qqpovm/measurement.hpp"

namespace qqpovm {

struct QqReport {
    ComplexMatrix k_operator;
    double statistic = 0.0;                    // Tr(rho K)
    double statistic_from_probabilities = 0.0; // the four-term combination
    Convention convention = Convention::Literal;
    OutcomeTable a_first;
    OutcomeTable b_first;
    bool zero_state = false;                   // |statistic| <= tol
    /// |K(0,1)| for two-dimensional models, the constant c in Tr(rho K) = c * 2 Re(rho(0,1)) when K is off-diagonal.
    double coupling = 0.0;
};

/// K = MAy' MBn' MBn MAy + MAn' MBy' MBy MAn - MBy' MAn' MAn MBy - MBn' MAy' MAy MBn
/// with M the update operators under convention c (' = adjoint).
ComplexMatrix qq_operator(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, Tolerance tol = {});

/// Computes the statistic both from the outcome tables and as Tr(rho K).
QqReport qq_statistic(const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                      Tolerance tol = {});

/// Builds the normalized pure state from (alpha, beta) and tests |Tr(rho K)| <= tol.
/// Throws InvalidStateError for (0, 0) and DimensionError unless the model is 2D.
bool zero_state_condition(Complex alpha, Complex beta, const BinaryMeasurement& a, const BinaryMeasurement& b,
                          Convention c, Tolerance tol = {});

struct Extremum {
    double value = 0.0;
    QuantumState maximizer;
};

/// The largest attainable statistic over all states: the top eigenvalue of K,
/// attained by the projector onto its eigenvector.
Extremum max_violation(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c, Tolerance tol = {});

struct ScanPoint {
    std::size_t theta_index = 0;
    std::size_t phi_index = 0;
    double theta = 0.0;
    double phi = 0.0;
    Complex alpha;
    Complex beta;
    double statistic = 0.0;
};

/// Bloch angles of the scan grid: theta_i = pi i / (N - 1), i in [0, N);
/// phi_j = -pi + 2 pi j / N, j in [0, N).
double scan_theta(std::size_t index, std::size_t grid_steps);
double scan_phi(std::size_t index, std::size_t grid_steps);

/// Evaluates the statistic on pure states (cos(theta/2), e^{i phi} sin(theta/2))
/// over the grid and returns those with |statistic| <= tol, sorted by
/// (theta_index, phi_index). Requires a 2D model and grid_steps >= 2.
std::vector<ScanPoint> zero_manifold_scan(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                                          std::size_t grid_steps, Tolerance tol = {});

/// Every grid point with its statistic, same ordering as zero_manifold_scan.
std::vector<ScanPoint> bloch_grid(const BinaryMeasurement& a, const BinaryMeasurement& b, Convention c,
                                  std::size_t grid_steps, Tolerance tol = {});

}  // namespace qqpovm
