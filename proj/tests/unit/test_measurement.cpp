#include <cmath>

#include "doctest.h"
#include "qqpovm/errors.hpp"
#include "qqpovm/measurement.hpp"
#include "qqpovm/random_models.hpp"
#include "qqpovm/reference_model.hpp"
#include "test_support.hpp"

using namespace qqpovm;
using qqpovm::testing::kC;
using qqpovm::testing::kSqrt3;

namespace {

const Complex I(0.0, 1.0);

QuantumState ket0() { return QuantumState::from_density(ComplexMatrix::diagonal({1.0, 0.0})); }
Effect proj0() { return Effect{ComplexMatrix::diagonal({1.0, 0.0}), "0"}; }
Effect proj1() { return Effect{ComplexMatrix::diagonal({0.0, 1.0}), "1"}; }

}  // namespace

TEST_CASE("validate_measurement on the reference questions") {
    for (const auto& m : {reference::question_a(), reference::question_b()}) {
        const auto r = validate_measurement(m);
        CHECK(r.valid());
        CHECK_FALSE(r.projective);
        CHECK(r.completeness_residual <= 1e-15);
        // Q1^2 != Q1 since Q1 has eigenvalue 1/3: residual = max |Q1^2 - Q1| > 0.1
        CHECK(r.idempotence_residual > 0.1);
    }
}

TEST_CASE("validate_measurement trivial and invalid pairs") {
    const auto trivial = validate_measurement(BinaryMeasurement::from_pair(ComplexMatrix::identity(2), ComplexMatrix::zeros(2)));
    CHECK(trivial.valid());
    CHECK(trivial.projective);

    const auto bad = validate_measurement(BinaryMeasurement::from_yes(ComplexMatrix::diagonal({1.1, 0.5})));
    CHECK_FALSE(bad.valid());
    CHECK_FALSE(bad.positive);
    CHECK(bad.complete);
    CHECK(bad.min_eigenvalue == doctest::Approx(-0.1));

    const auto nonherm = validate_measurement(BinaryMeasurement::from_yes(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}));
    CHECK_FALSE(nonherm.hermitian);

    const auto incomplete = validate_measurement(
        BinaryMeasurement::from_pair(ComplexMatrix::diagonal({0.5, 0.5}), ComplexMatrix::diagonal({0.4, 0.5})));
    CHECK_FALSE(incomplete.complete);
    CHECK(incomplete.completeness_residual == doctest::Approx(0.1));

    CHECK_THROWS_AS(validate_measurement(BinaryMeasurement::from_pair(ComplexMatrix::identity(2), ComplexMatrix::zeros(3))),
                    DimensionError);
    CHECK_THROWS_AS(require_valid(BinaryMeasurement::from_yes(ComplexMatrix::diagonal({1.1, 0.5}))),
                    InvalidMeasurementError);
}

TEST_CASE("quantum state construction") {
    const auto s = QuantumState::pure(I, 1.0);
    // the printed form (1/2)[[1, -i], [i, 1]]
    CHECK(max_abs_diff(s.rho(), ComplexMatrix{{0.5, -0.5 * I}, {0.5 * I, 0.5}}) <= 1e-15);
    const auto s2 = QuantumState::pure(2.0 * I, 1.0);
    CHECK(max_abs_diff(s2.rho(), ComplexMatrix{{0.8, -0.4 * I}, {0.4 * I, 0.2}}) <= 1e-15);

    CHECK_THROWS_AS(QuantumState::pure(0.0, 0.0), InvalidStateError);
    CHECK_THROWS_AS(QuantumState::from_density(ComplexMatrix{{0.7, 0.5}, {0.5, 0.5}}), InvalidStateError);
    CHECK_THROWS_AS(QuantumState::from_density(ComplexMatrix::diagonal({1.5, -0.5})), InvalidStateError);
    CHECK_THROWS_AS(QuantumState::from_density(ComplexMatrix{{0.5, 0.5}, {0.4, 0.5}}), InvalidStateError);
    CHECK_THROWS_AS(QuantumState::from_density(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("update_operator") {
    const Effect q1 = reference::question_a().yes;
    CHECK(update_operator(q1, Convention::Literal) == q1.matrix);
    CHECK(max_abs_diff(update_operator(proj0(), Convention::Sqrt), proj0().matrix) <= 1e-15);
    const ComplexMatrix r = update_operator(q1, Convention::Sqrt);
    CHECK(max_abs_diff(r * r, q1.matrix) <= 1e-12);
    CHECK(max_abs_diff(r, qqpovm::testing::sqrt2x2(q1.matrix)) <= 1e-12);
    CHECK_THROWS_AS(update_operator(Effect{ComplexMatrix::diagonal({-0.5, 1.0}), "bad"}, Convention::Sqrt), NotPsdError);
}

TEST_CASE("post_state") {
    for (auto c : {Convention::Literal, Convention::Sqrt}) {
        const auto s = post_state(ket0(), proj0(), c);
        CHECK(max_abs_diff(s.rho(), ket0().rho()) <= 1e-15);
        CHECK_THROWS_AS(post_state(ket0(), proj1(), c), ZeroProbabilityError);
    }

    // Q1 rho Q1 / Tr with rho = (1/2) 11^T is w w^T / |w|^2 where w = Q1 (1, 1)^T.
    const Effect q1 = reference::question_a().yes;
    const double w0 = 5.0 / 6.0 + 1.0 / std::sqrt(12.0);
    const double w1 = 1.0 / std::sqrt(12.0) + 0.5;
    const double n2 = w0 * w0 + w1 * w1;
    const ComplexMatrix expected{{w0 * w0 / n2, w0 * w1 / n2}, {w0 * w1 / n2, w1 * w1 / n2}};
    const auto s = post_state(reference::uniform_state(), q1, Convention::Literal);
    CHECK(max_abs_diff(s.rho(), expected) <= 1e-14);
    CHECK(s.rho().trace().real() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(post_state(ket0(), Effect{ComplexMatrix::identity(3), ""}, Convention::Literal), DimensionError);
}

TEST_CASE("sequential_joint_prob") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    const auto rho = reference::uniform_state();
    // Tr(Q1 P2^2 Q1 rho) = 17/81 + 2/(27 sqrt3)
    CHECK(sequential_joint_prob(rho, a.yes, b.no, Convention::Literal) == doctest::Approx(17.0 / 81.0 + kC).epsilon(1e-13));

    const Effect id{ComplexMatrix::identity(2), "1"};
    for (auto c : {Convention::Literal, Convention::Sqrt})
        CHECK(sequential_joint_prob(rho, id, id, c) == doctest::Approx(1.0).epsilon(1e-15));

    // commuting projectors, state in the first's range, second is the first's complement
    CHECK(sequential_joint_prob(ket0(), proj0(), proj1(), Convention::Sqrt) == 0.0);
    CHECK_THROWS_AS(sequential_joint_prob(rho, Effect{ComplexMatrix::identity(3), ""}, id, Convention::Literal),
                    DimensionError);
}

TEST_CASE("outcome_distribution") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    const auto rho = reference::uniform_state();

    const auto t = outcome_distribution(rho, a, b, Order::AFirst, Convention::Literal);
    CHECK(t.order == Order::AFirst);
    CHECK(t.normalization_defect == doctest::Approx(1.0 - t.total()));
    // Literal convention is not normalized: Q1^2 + Q2^2 has (0,0) entry 8/9.
    const ComplexMatrix q_sq = a.yes.matrix * a.yes.matrix + a.no.matrix * a.no.matrix;
    CHECK(q_sq(0, 0).real() == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(std::abs(t.normalization_defect) > 0.1);

    const auto s = outcome_distribution(rho, a, b, Order::BFirst, Convention::Sqrt);
    CHECK(std::abs(s.normalization_defect) <= 1e-12);

    // repeating the same projective question never flips the answer
    Rng rng(2);
    const auto p = random_projective(3, rng);
    const auto st = random_state(3, rng);
    const auto rep = outcome_distribution(st, p, p, Order::AFirst, Convention::Literal);
    CHECK(std::abs(rep.p[0][1]) <= 1e-12);
    CHECK(std::abs(rep.p[1][0]) <= 1e-12);
}

TEST_CASE("sqrt convention probabilities sum to one (random models, dims 2-4)") {
    Rng rng(17);
    for (int rep = 0; rep < 150; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const auto a = random_binary_povm(n, rng);
        const auto b = random_binary_povm(n, rng);
        const auto s = random_state(n, rng);
        for (auto o : {Order::AFirst, Order::BFirst}) {
            const auto t = outcome_distribution(s, a, b, o, Convention::Sqrt);
            CHECK(std::abs(t.normalization_defect) <= 1e-10);
            for (const auto& row : t.p)
                for (double v : row) CHECK((v >= -1e-10 && v <= 1.0 + 1e-10));
        }
    }
}

TEST_CASE("literal and sqrt coincide on projective measurements") {
    Rng rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const auto a = random_projective(n, rng);
        const auto b = random_projective(n, rng);
        const auto s = random_state(n, rng);
        CHECK(max_abs_diff(update_operator(a.yes, Convention::Literal), update_operator(a.yes, Convention::Sqrt)) <= 1e-10);
        const auto lit = outcome_distribution(s, a, b, Order::AFirst, Convention::Literal);
        const auto sq = outcome_distribution(s, a, b, Order::AFirst, Convention::Sqrt);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(lit.p[i][j] == doctest::Approx(sq.p[i][j]).epsilon(1e-9));
    }
}

TEST_CASE("sequential_joint_prob is linear in the state") {
    Rng rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const auto a = random_binary_povm(n, rng);
        const auto b = random_binary_povm(n, rng);
        const auto r1 = random_state(n, rng);
        const auto r2 = random_state(n, rng);
        const double w = unit(rng);
        const auto mix = QuantumState::mixture(r1, r2, w);
        for (auto c : {Convention::Literal, Convention::Sqrt}) {
            const double lhs = sequential_joint_prob(mix, a.yes, b.no, c);
            const double rhs = w * sequential_joint_prob(r1, a.yes, b.no, c) + (1 - w) * sequential_joint_prob(r2, a.yes, b.no, c);
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("post_state always yields a valid state") {
    Rng rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const auto a = random_binary_povm(n, rng);
        const auto s = random_state(n, rng);
        for (auto c : {Convention::Literal, Convention::Sqrt}) {
            const auto out = post_state(s, a.yes, c);
            CHECK(std::abs(out.rho().trace().real() - 1.0) <= 1e-12);
            CHECK(min_eigenvalue(out.rho()) >= -1e-10);
        }
    }
}

TEST_CASE("convention and order names") {
    CHECK(parse_convention("literal") == Convention::Literal);
    CHECK(parse_convention("sqrt") == Convention::Sqrt);
    CHECK_THROWS(parse_convention("luders"));
    CHECK(parse_order(to_string(Order::BFirst)) == Order::BFirst);
    CHECK_THROWS(parse_order("first"));
}
