#pragma once

// Neumark liftings of binary POVMs.
//
// A binary POVM (E, I - E) on C^d is realized as a projective measurement
// (P, I - P) on C^(d+k) together with the isometry V = [I_d; 0], so that
// V^dagger P V = E. The construction diagonalizes E = sum_i l_i v_i v_i^dagger
// and gives each fractional eigenvalue l its own ancilla direction a, with
// P containing the rank-one block u u^dagger, u = sqrt(l) v + sqrt(1 - l) a.
// Eigenvalues at 0 or 1 need no ancilla. This is the minimal dilation.

#include <cstddef>
#include <vector>

#include "qqpovm/linalg.hpp"
#include "qqpovm/measurement.hpp"

namespace qqpovm {

/// Role of an ancilla direction in the extended space.
enum class AncillaRole {
    Paired,      // carries the block of one fractional eigenvalue
    AbsorbedNo,  // surplus direction assigned wholly to the "no" outcome
};

struct Dilation {
    BinaryMeasurement original;
    std::size_t extended_dim = 0;
    ComplexMatrix embedding;  // extended_dim x original_dim isometry
    BinaryMeasurement lifted;
    std::vector<AncillaRole> ancilla_assignment;  // one entry per ancilla direction

    std::size_t original_dim() const noexcept { return original.dim(); }
};

struct DilationCertificate {
    double isometry_residual = 0.0;     // |V^dagger V - I|
    double idempotence_residual = 0.0;  // max over lifted effects of |P^2 - P|
    double hermiticity_residual = 0.0;  // max over lifted effects of |P - P^dagger|
    double completeness_residual = 0.0; // |P_yes + P_no - I|
    double compression_residual = 0.0;  // max over outcomes of |V^dagger P V - E|
    double probability_residual = 0.0;  // max over sampled states of |Tr(rho E) - Tr(rho' P)|
    std::size_t probability_samples = 0;
    Tolerance tol;

    bool isometry_ok() const noexcept { return isometry_residual <= tol.abs_eps; }
    bool idempotence_ok() const noexcept { return idempotence_residual <= tol.abs_eps; }
    bool hermiticity_ok() const noexcept { return hermiticity_residual <= tol.abs_eps; }
    bool completeness_ok() const noexcept { return completeness_residual <= tol.abs_eps; }
    bool compression_ok() const noexcept { return compression_residual <= tol.abs_eps; }
    bool probability_ok() const noexcept { return probability_residual <= tol.abs_eps; }
    bool passed() const noexcept {
        return isometry_ok() && idempotence_ok() && hermiticity_ok() && completeness_ok() && compression_ok() &&
               probability_ok();
    }
};

/// Number of eigenvalues of m.yes strictly inside (tol, 1 - tol).
std::size_t fractional_eigenvalue_count(const BinaryMeasurement& m, Tolerance tol = {});

/// Minimal dilation of a valid binary POVM. Throws InvalidMeasurementError
/// if m fails validation.
Dilation dilate_binary(const BinaryMeasurement& m, Tolerance tol = {});

/// Residuals for every dilation invariant plus probability agreement over
/// `samples` random states drawn with `seed`. Never throws on failed checks.
DilationCertificate verify_dilation(const Dilation& d, Tolerance tol = {}, std::size_t samples = 20,
                                    unsigned long long seed = 0x5eed'd11a'7105ULL);

struct CommonLift {
    BinaryMeasurement lifted_a;
    BinaryMeasurement lifted_b;
    ComplexMatrix embedding;
    std::size_t extended_dim = 0;
    Dilation dilation_a;  // each dilation expressed on the common space
    Dilation dilation_b;
};

/// Dilates both measurements into the same space of dimension d + max(kA, kB).
/// The measurement with fewer fractional eigenvalues gives its unused ancilla
/// directions to its "no" outcome.
CommonLift common_space_lift(const BinaryMeasurement& a, const BinaryMeasurement& b, Tolerance tol = {});

struct LiftedQq {
    double before = 0.0;  // original model, literal convention
    double after = 0.0;   // lifted model with V rho V^dagger
    std::size_t extended_dim = 0;
};

LiftedQq lifted_qq_check(const BinaryMeasurement& a, const BinaryMeasurement& b, const QuantumState& s,
                         Tolerance tol = {});

/// V rho V^dagger.
QuantumState embed_state(const QuantumState& s, const ComplexMatrix& embedding, Tolerance tol = {});

}  // namespace qqpovm
