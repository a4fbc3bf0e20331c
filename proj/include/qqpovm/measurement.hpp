#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "qqpovm/linalg.hpp"

namespace qqpovm {

/// One element of a POVM. Hermiticity and positivity are checked by
/// validate_measurement rather than on construction, so invalid candidates
/// can be represented and reported on.
struct Effect {
    ComplexMatrix matrix;
    std::string label;
};

/// A two-outcome question: yes + no should equal the identity.
struct BinaryMeasurement {
    Effect yes;
    Effect no;
    std::string name;

    /// Builds (yes, I - yes).
    static BinaryMeasurement from_yes(ComplexMatrix yes_matrix, std::string name = {});
    static BinaryMeasurement from_pair(ComplexMatrix yes_matrix, ComplexMatrix no_matrix, std::string name = {});

    std::size_t dim() const noexcept { return yes.matrix.rows(); }
    const Effect& outcome(int index) const { return index == 0 ? yes : no; }
};

/// How an effect E acts on the state when its outcome is observed.
///   Literal: E itself is the update operator (rho -> E rho E).
///   Sqrt:    the Lueders operator sqrt(E) is used (rho -> sqrt(E) rho sqrt(E)).
enum class Convention { Literal, Sqrt };

std::string_view to_string(Convention c);
/// Accepts "literal" or "sqrt"; throws std::invalid_argument otherwise.
Convention parse_convention(std::string_view text);

class QuantumState {
public:
    /// Validates Hermiticity, positivity and unit trace within tol.
    static QuantumState from_density(ComplexMatrix rho, Tolerance tol = {});
    /// Pure state with rho_jk = conj(a_j) a_k / |a|^2. For two amplitudes
    /// (alpha, beta) this gives [[|a|^2, conj(a) b], [conj(b) a, |b|^2]] / norm.
    static QuantumState from_amplitudes(std::span<const Complex> amplitudes);
    static QuantumState pure(Complex alpha, Complex beta);
    /// Convex combination w*a + (1-w)*b.
    static QuantumState mixture(const QuantumState& a, const QuantumState& b, double weight);

    const ComplexMatrix& rho() const noexcept { return rho_; }
    std::size_t dim() const noexcept { return rho_.rows(); }

private:
    explicit QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {}
    ComplexMatrix rho_;
};

enum class Order { AFirst, BFirst };

std::string_view to_string(Order o);
/// Accepts "a-first" or "b-first".
Order parse_order(std::string_view text);

/// Joint probabilities of a sequential question pair. Index 0 = yes, 1 = no;
/// p[first][second].
struct OutcomeTable {
    Order order = Order::AFirst;
    Convention convention = Convention::Literal;
    std::array<std::array<double, 2>, 2> p{};
    double normalization_defect = 0.0;

    double total() const noexcept { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

struct ValidationReport {
    double hermiticity_residual = 0.0;   // max over both effects of |E - E^dagger|
    double min_eigenvalue = 0.0;         // min over both effects
    double completeness_residual = 0.0;  // |yes + no - I|_max
    double idempotence_residual = 0.0;   // max over both effects of |E^2 - E|
    bool hermitian = false;
    bool positive = false;
    bool complete = false;
    bool projective = false;

    bool valid() const noexcept { return hermitian && positive && complete; }
};

/// Checks the POVM axioms for a binary measurement. Throws DimensionError on
/// non-square or mismatched effects.
ValidationReport validate_measurement(const BinaryMeasurement& m, Tolerance tol = {});

/// Throws InvalidMeasurementError carrying the failed axioms if m is invalid.
void require_valid(const BinaryMeasurement& m, Tolerance tol = {});

ComplexMatrix update_operator(const Effect& e, Convention c, Tolerance tol = {});

/// M rho M^dagger / Tr(M rho M^dagger) with M = update_operator(e, c). The
/// normalizer is the probability of the update actually applied, so the result
/// has unit trace under either convention.
QuantumState post_state(const QuantumState& s, const Effect& e, Convention c, Tolerance tol = {});

/// Tr(M2 M1 rho M1^dagger M2^dagger): first is applied innermost.
double sequential_joint_prob(const QuantumState& s, const Effect& first, const Effect& second, Convention c,
                             Tolerance tol = {});

OutcomeTable outcome_distribution(const QuantumState& s, const BinaryMeasurement& a, const BinaryMeasurement& b,
                                  Order order, Convention c, Tolerance tol = {});

}  // namespace qqpovm
