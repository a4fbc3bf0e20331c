#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "qqpovm/errors.hpp"
#include "qqpovm/linalg.hpp"
#include "qqpovm/random_models.hpp"
#include "qqpovm/reference_model.hpp"
#include "test_support.hpp"

using namespace qqpovm;
using qqpovm::testing::kSqrt3;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix q1() { return reference::question_a().yes.matrix; }

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    return hermitian_part(random_ginibre(n, n, rng));
}

}  // namespace

TEST_CASE("is_hermitian") {
    CHECK(is_hermitian(q1()));
    CHECK(is_hermitian(ComplexMatrix::identity(2)));
    CHECK_FALSE(is_hermitian(ComplexMatrix{{0, 1}, {0, 0}}));
    CHECK(is_hermitian(ComplexMatrix{{1, I}, {-I, 2}}));
    CHECK_FALSE(is_hermitian(ComplexMatrix{{1, I}, {I, 2}}));
    CHECK_THROWS_AS(is_hermitian(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("is_hermitian respects the tolerance") {
    ComplexMatrix m{{1, 0}, {1e-11, 1}};
    CHECK(is_hermitian(m));
    CHECK_FALSE(is_hermitian(m, Tolerance(0.0)));
    CHECK_THROWS(Tolerance(-1.0));
}

TEST_CASE("eig_hermitian on the reference effect matches its characteristic polynomial") {
    // lambda^2 - (4/3) lambda + 1/3 = 0  =>  lambda in {1/3, 1}
    const auto e = eig_hermitian(q1());
    REQUIRE(e.values.size() == 2);
    CHECK(e.values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eig_hermitian trivial spectra") {
    const auto id = eig_hermitian(ComplexMatrix::identity(3));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0));
    const auto d = eig_hermitian(ComplexMatrix::diagonal({2.0, -1.0}));
    CHECK(d.values[0] == doctest::Approx(-1.0));
    CHECK(d.values[1] == doctest::Approx(2.0));
    CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(3, 2)), DimensionError);
}

TEST_CASE("eig_hermitian post-conditions on random Hermitian matrices, checked against Eigen") {
    Rng rng(7);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            const ComplexMatrix m = random_hermitian(n, rng);
            const auto e = eig_hermitian(m);
            CHECK(std::is_sorted(e.values.begin(), e.values.end()));

            const ComplexMatrix& v = e.vectors;
            CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(n)) <= 1e-9);
            for (std::size_t k = 0; k < n; ++k) {
                const auto col = v.column(k);
                ComplexMatrix vk(n, 1, col);
                CHECK(max_abs_diff(m * vk, vk * Complex(e.values[k])) <= 1e-9);
            }
            // reconstruction sum lambda v v^dagger = M
            CHECK(max_abs_diff(e.apply([](double l) { return l; }), m) <= 1e-9);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(m));
            for (std::size_t k = 0; k < n; ++k) CHECK(e.values[k] == doctest::Approx(oracle.eigenvalues()(k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("eig_hermitian handles degenerate and complex-phase input") {
    // Hermitian with purely imaginary coupling: eigenvalues 1 +- 1
    const auto e = eig_hermitian(ComplexMatrix{{1, I}, {-I, 1}});
    CHECK(e.values[0] == doctest::Approx(0.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    Rng rng(3);
    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix m = u * ComplexMatrix::diagonal({0.5, 0.5, 0.5, 2.0}) * u.adjoint();
    const auto d = eig_hermitian(m);
    CHECK(d.values[0] == doctest::Approx(0.5));
    CHECK(d.values[2] == doctest::Approx(0.5));
    CHECK(d.values[3] == doctest::Approx(2.0));
    CHECK(max_abs_diff(d.apply([](double l) { return l; }), m) <= 1e-9);
}

TEST_CASE("principal_sqrt") {
    CHECK(max_abs_diff(principal_sqrt(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) <= 1e-14);
    CHECK(max_abs_diff(principal_sqrt(ComplexMatrix::diagonal({4.0, 9.0})), ComplexMatrix::diagonal({2.0, 3.0})) <=
          1e-14);

    const ComplexMatrix r = principal_sqrt(q1());
    CHECK(is_hermitian(r));
    CHECK(max_abs_diff(r * r, q1()) <= 1e-9);
    // eigenvalues of sqrt(Q1) are {1/sqrt3, 1}
    const auto e = eig_hermitian(r);
    CHECK(e.values[0] == doctest::Approx(1.0 / kSqrt3).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    // closed-form 2x2 oracle
    CHECK(max_abs_diff(r, qqpovm::testing::sqrt2x2(q1())) <= 1e-12);
}

TEST_CASE("principal_sqrt clamps tiny negative eigenvalues and rejects real ones") {
    const ComplexMatrix drift = ComplexMatrix::diagonal({-5e-11, 1.0});
    const ComplexMatrix r = principal_sqrt(drift);
    CHECK(r(0, 0).real() == 0.0);
    CHECK(r(1, 1).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(principal_sqrt(ComplexMatrix::diagonal({-1e-3, 1.0})), NotPsdError);
    CHECK_THROWS_AS(principal_sqrt(ComplexMatrix{{1, 1}, {0, 1}}), NotPsdError);
    CHECK_THROWS_AS(principal_sqrt(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("principal_sqrt squares back for random PSD matrices, dims 2-6") {
    Rng rng(11);
    for (std::size_t n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 20; ++rep) {
            const ComplexMatrix m = random_psd(n, rng);
            const ComplexMatrix r = principal_sqrt(m);
            CHECK(max_abs_diff(r * r, m) <= 1e-9);
            CHECK(min_eigenvalue(r) >= -1e-12);
        }
}

TEST_CASE("matrix operations") {
    CHECK(ComplexMatrix::identity(3).trace() == Complex(3.0));
    CHECK(ComplexMatrix{{0, I}, {0, 0}}.adjoint() == ComplexMatrix{{0, 0}, {-I, 0}});

    // P2 * Q1 from hand multiplication: [[11/18, 1/(6 sqrt3)], [-1/(6 sqrt3), 1/6]]
    const ComplexMatrix p2 = reference::question_b().no.matrix;
    const ComplexMatrix expected{{11.0 / 18.0, 1.0 / (6.0 * kSqrt3)}, {-1.0 / (6.0 * kSqrt3), 1.0 / 6.0}};
    CHECK(max_abs_diff(p2 * q1(), expected) <= 1e-15);

    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(3, 3), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3).trace(), DimensionError);
    CHECK_THROWS_AS(real_trace_product(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionError);
    CHECK_THROWS(real_trace(ComplexMatrix{{I, 0}, {0, 0}}));
}

TEST_CASE("construction rejects ragged and non-finite input") {
    CHECK_THROWS_AS((ComplexMatrix{{1, 2}, {3}}), DimensionError);
    CHECK_THROWS((ComplexMatrix{{std::nan(""), 0}, {0, 1}}));
    CHECK_THROWS(ComplexMatrix(2, 2, std::vector<Complex>(3)));
}

TEST_CASE("trace(AB) = trace(BA) and adjoint is an involution") {
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t r = 1 + rep % 5;
        const std::size_t c = 1 + (rep / 5) % 5;
        const ComplexMatrix a = random_ginibre(r, c, rng);
        const ComplexMatrix b = random_ginibre(c, r, rng);
        CHECK(std::abs((a * b).trace() - (b * a).trace()) <= 1e-12);
        CHECK(a.adjoint().adjoint() == a);
    }
}
