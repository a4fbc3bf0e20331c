#include "qqpovm/random_models.hpp"

#include <cmath>
#include <vector>

namespace qqpovm {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix g = random_ginibre(n, n, rng);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            Complex proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, j)) * g(i, k);
            for (std::size_t i = 0; i < n; ++i) g(i, k) -= proj * g(i, j);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(g(i, k));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) g(i, k) /= norm;
    }
    return g;
}

QuantumState random_state(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_ginibre(n, n, rng);
    ComplexMatrix rho = hermitian_part(g * g.adjoint());
    rho *= 1.0 / rho.trace().real();
    return QuantumState::from_density(std::move(rho));
}

QuantumState random_pure_state(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_ginibre(n, 1, rng);
    return QuantumState::from_amplitudes(g.data());
}

BinaryMeasurement random_binary_povm(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> lambda(n);
    for (auto& l : lambda) l = unit(rng);
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix yes = hermitian_part(u * ComplexMatrix::diagonal(lambda) * u.adjoint());
    return BinaryMeasurement::from_yes(std::move(yes), "random-povm");
}

BinaryMeasurement random_projective(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<std::size_t> rank_dist(0, n);
    const std::size_t rank = rank_dist(rng);
    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < rank; ++i) diag[i] = 1.0;
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix yes = hermitian_part(u * ComplexMatrix::diagonal(diag) * u.adjoint());
    return BinaryMeasurement::from_yes(std::move(yes), "random-projective");
}

ComplexMatrix random_psd(std::size_t n, Rng& rng) {
    const ComplexMatrix a = random_ginibre(n, n, rng);
    return hermitian_part(a.adjoint() * a);
}

}  // namespace qqpovm
