#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "doctest.h"
#include "qqpovm/errors.hpp"
#include "qqpovm/qq.hpp"
#include "qqpovm/random_models.hpp"
#include "qqpovm/reference_model.hpp"
#include "test_support.hpp"

using namespace qqpovm;
using qqpovm::testing::kC;

namespace {

const Complex I(0.0, 1.0);

// Dense term-by-term evaluation of the four sequential probabilities, written
// without update_operator/outcome_distribution.
double qq_by_terms(const QuantumState& s, const ComplexMatrix& ay, const ComplexMatrix& an, const ComplexMatrix& by,
                   const ComplexMatrix& bn) {
    auto p = [&](const ComplexMatrix& first, const ComplexMatrix& second) {
        const ComplexMatrix m = second * first;
        return (m * s.rho() * m.adjoint()).trace().real();
    };
    return p(ay, bn) + p(an, by) - p(by, an) - p(bn, ay);
}

}  // namespace

TEST_CASE("qq_operator of the reference model, literal convention") {
    const ComplexMatrix k = qq_operator(reference::question_a(), reference::question_b(), Convention::Literal);
    const ComplexMatrix expected{{0.0, kC}, {kC, 0.0}};
    CHECK(max_abs_diff(k, expected) <= 1e-12);
}

TEST_CASE("qq_operator of the reference model, sqrt convention") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    const ComplexMatrix k = qq_operator(a, b, Convention::Sqrt);

    using qqpovm::testing::sqrt2x2;
    const ComplexMatrix ay = sqrt2x2(a.yes.matrix), an = sqrt2x2(a.no.matrix);
    const ComplexMatrix by = sqrt2x2(b.yes.matrix), bn = sqrt2x2(b.no.matrix);
    auto eff = [](const ComplexMatrix& x, const ComplexMatrix& y) { return x * y * y * x; };
    const ComplexMatrix oracle = eff(ay, bn) + eff(an, by) - eff(by, an) - eff(bn, ay);
    CHECK(max_abs_diff(k, oracle) <= 1e-12);
    // frozen from an independent numpy evaluation of the same closed form
    CHECK(k(0, 1).real() == doctest::Approx(-0.07044162180172901).epsilon(1e-11));
    CHECK(std::abs(k(0, 0)) <= 1e-12);
    CHECK(std::abs(k(1, 1)) <= 1e-12);
}

TEST_CASE("qq_operator vanishes for projective pairs") {
    Rng rng(41);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const auto a = random_projective(n, rng);
        const auto b = random_projective(n, rng);
        for (auto c : {Convention::Literal, Convention::Sqrt}) CHECK(qq_operator(a, b, c).max_abs() <= 1e-10);
    }
    CHECK_THROWS_AS(qq_operator(random_projective(2, rng), random_projective(3, rng), Convention::Literal),
                    DimensionError);
}

TEST_CASE("qq_statistic on the reference states") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();

    const auto r = qq_statistic(reference::uniform_state(), a, b, Convention::Literal);
    CHECK(r.statistic == doctest::Approx(kC).epsilon(1e-12));
    CHECK(std::abs(r.statistic - kC) <= 1e-12);
    CHECK(std::abs(r.statistic_from_probabilities - kC) <= 1e-12);
    CHECK(r.coupling == doctest::Approx(kC));
    CHECK_FALSE(r.zero_state);

    for (const auto& s : reference::zero_states()) {
        const auto z = qq_statistic(s, a, b, Convention::Literal);
        CHECK(std::abs(z.statistic) <= 1e-12);
        CHECK(std::abs(z.statistic_from_probabilities) <= 1e-12);
        CHECK(z.zero_state);
    }

    // the mixture of the two zero states as written out entry by entry
    const auto zs = reference::zero_states();
    CHECK(max_abs_diff(QuantumState::mixture(zs[0], zs[1], 0.5).rho(), zs[2].rho()) <= 1e-15);
}

TEST_CASE("qq_statistic: both routes agree on random models") {
    Rng rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const auto a = random_binary_povm(n, rng);
        const auto b = random_binary_povm(n, rng);
        const auto s = random_state(n, rng);
        const auto c = rep % 2 ? Convention::Sqrt : Convention::Literal;
        const auto r = qq_statistic(s, a, b, c);
        CHECK(std::abs(r.statistic - r.statistic_from_probabilities) <= 1e-12);
        CHECK(max_abs_diff(r.k_operator, r.k_operator.adjoint()) <= 1e-12);

        const ComplexMatrix ay = update_operator(a.yes, c), an = update_operator(a.no, c);
        const ComplexMatrix by = update_operator(b.yes, c), bn = update_operator(b.no, c);
        CHECK(std::abs(r.statistic - qq_by_terms(s, ay, an, by, bn)) <= 1e-12);

        // swapping the questions negates the statistic
        CHECK(std::abs(qq_statistic(s, b, a, c).statistic + r.statistic) <= 1e-12);
    }
}

TEST_CASE("qq_statistic is affine in the state") {
    Rng rng(47);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = random_binary_povm(3, rng);
        const auto b = random_binary_povm(3, rng);
        const auto r1 = random_state(3, rng);
        const auto r2 = random_state(3, rng);
        const double w = unit(rng);
        const double mixed = qq_statistic(QuantumState::mixture(r1, r2, w), a, b, Convention::Sqrt).statistic;
        const double split = w * qq_statistic(r1, a, b, Convention::Sqrt).statistic +
                             (1 - w) * qq_statistic(r2, a, b, Convention::Sqrt).statistic;
        CHECK(std::abs(mixed - split) <= 1e-12);
    }
}

TEST_CASE("zero_state_condition") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    CHECK(zero_state_condition(I, 1.0, a, b, Convention::Literal));
    CHECK(zero_state_condition(2.0 * I, 1.0, a, b, Convention::Literal));
    CHECK_FALSE(zero_state_condition(1.0, 1.0, a, b, Convention::Literal));
    CHECK(zero_state_condition(1.0, 0.0, a, b, Convention::Literal));
    CHECK(zero_state_condition(0.0, 1.0, a, b, Convention::Literal));
    CHECK_THROWS_AS(zero_state_condition(0.0, 0.0, a, b, Convention::Literal), InvalidStateError);
    Rng rng(1);
    const auto p3 = random_projective(3, rng);
    CHECK_THROWS_AS(zero_state_condition(1.0, 0.0, p3, p3, Convention::Literal), DimensionError);

    // closed form for this model: zero iff Re(conj(alpha) beta) = 0
    std::normal_distribution<double> normal;
    for (int rep = 0; rep < 200; ++rep) {
        const Complex alpha(normal(rng), normal(rng));
        Complex beta(normal(rng), normal(rng));
        if (rep % 2 == 0) beta = I * normal(rng) * alpha;  // on the manifold
        const bool expected = std::abs((std::conj(alpha) * beta).real()) / (std::norm(alpha) + std::norm(beta)) <=
                              1e-10 / (2.0 * kC);
        CHECK(zero_state_condition(alpha, beta, a, b, Convention::Literal) == expected);
    }
}

TEST_CASE("max_violation") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    const auto lit = max_violation(a, b, Convention::Literal);
    CHECK(std::abs(lit.value - kC) <= 1e-12);
    CHECK(max_abs_diff(lit.maximizer.rho(), reference::uniform_state().rho()) <= 1e-12);
    CHECK(std::abs(qq_statistic(lit.maximizer, a, b, Convention::Literal).statistic - lit.value) <= 1e-12);

    const auto sq = max_violation(a, b, Convention::Sqrt);
    CHECK(sq.value == doctest::Approx(0.07044162180172901).epsilon(1e-11));
    CHECK(std::abs(qq_statistic(sq.maximizer, a, b, Convention::Sqrt).statistic - sq.value) <= 1e-12);

    Rng rng(53);
    const auto pa = random_projective(3, rng);
    const auto pb = random_projective(3, rng);
    CHECK(std::abs(max_violation(pa, pb, Convention::Literal).value) <= 1e-10);

    // the top eigenvalue bounds the statistic over sampled states
    for (int rep = 0; rep < 200; ++rep) {
        const auto ma = random_binary_povm(3, rng);
        const auto mb = random_binary_povm(3, rng);
        const auto top = max_violation(ma, mb, Convention::Sqrt).value;
        for (int k = 0; k < 5; ++k)
            CHECK(qq_statistic(random_state(3, rng), ma, mb, Convention::Sqrt).statistic <= top + 1e-12);
    }
}

TEST_CASE("zero_manifold_scan on the reference model") {
    const auto a = reference::question_a();
    const auto b = reference::question_b();
    const std::size_t n = 64;
    const auto pts = zero_manifold_scan(a, b, Convention::Literal, n);
    REQUIRE_FALSE(pts.empty());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& p : pts) {
        CHECK(std::abs(p.statistic) <= 1e-10);
        const bool on_phi = std::abs(std::abs(p.phi) - std::numbers::pi / 2) <= 1e-12;
        const bool pole = p.theta_index == 0 || p.theta_index == n - 1;
        CHECK((on_phi || pole));
        seen.emplace(p.theta_index, p.phi_index);
    }
    // sorted output with no duplicates
    CHECK(seen.size() == pts.size());
    CHECK(std::is_sorted(pts.begin(), pts.end(), [](const ScanPoint& x, const ScanPoint& y) {
        return std::pair(x.theta_index, x.phi_index) < std::pair(y.theta_index, y.phi_index);
    }));
    // both poles (all phi) plus the two phi = +-pi/2 meridians on the interior rows
    CHECK(pts.size() == 2 * n + 2 * (n - 2));
}

TEST_CASE("zero_manifold_scan edge cases") {
    Rng rng(59);
    const auto pa = random_projective(2, rng);
    const auto pb = random_projective(2, rng);
    CHECK(zero_manifold_scan(pa, pb, Convention::Literal, 16).size() == 16 * 16);

    const auto all = bloch_grid(reference::question_a(), reference::question_b(), Convention::Literal, 2);
    REQUIRE(all.size() == 4);
    CHECK(all[0].theta == 0.0);
    CHECK(all[3].theta == doctest::Approx(std::numbers::pi));
    CHECK(all[0].phi == doctest::Approx(-std::numbers::pi));
    CHECK(all[1].phi == doctest::Approx(0.0));

    CHECK_THROWS(zero_manifold_scan(pa, pb, Convention::Literal, 1));
    const auto p3 = random_projective(3, rng);
    CHECK_THROWS_AS(zero_manifold_scan(p3, p3, Convention::Literal, 8), DimensionError);
}
