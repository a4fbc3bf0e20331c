#pragma once

// Random states and measurements for property checks and dilation
// certificates. Draws come from std::normal_distribution, so sequences are
// reproducible for a given seed on one standard library only.

#include <cstddef>
#include <random>

#include "qqpovm/linalg.hpp"
#include "qqpovm/measurement.hpp"

namespace qqpovm {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-ish unitary from QR (modified Gram-Schmidt) of a Ginibre matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// Mixed state G G^dagger / Tr(G G^dagger).
QuantumState random_state(std::size_t n, Rng& rng);

QuantumState random_pure_state(std::size_t n, Rng& rng);

/// Binary POVM with yes = U diag(lambda) U^dagger, lambda uniform in [0, 1].
BinaryMeasurement random_binary_povm(std::size_t n, Rng& rng);

/// Projective measurement onto a random subspace of random rank in [0, n].
BinaryMeasurement random_projective(std::size_t n, Rng& rng);

/// Random PSD matrix A^dagger A.
ComplexMatrix random_psd(std::size_t n, Rng& rng);

}  // namespace qqpovm
