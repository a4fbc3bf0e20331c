#include "qqpovm/reference_model.hpp"

#include <cmath>

namespace qqpovm::reference {

namespace {

const double kS12 = 1.0 / std::sqrt(12.0);   // = 1 / (2 sqrt 3)
const double kS18 = 1.0 / (3.0 * std::sqrt(2.0));
const double kS6 = 1.0 / std::sqrt(6.0);

}  // namespace

double qq_constant() { return 2.0 / (27.0 * std::sqrt(3.0)); }

BinaryMeasurement question_a() {
    return BinaryMeasurement::from_pair({{5.0 / 6.0, kS12}, {kS12, 0.5}}, {{1.0 / 6.0, -kS12}, {-kS12, 0.5}}, "A");
}

BinaryMeasurement question_b() {
    return BinaryMeasurement::from_pair({{1.0 / 6.0, kS12}, {kS12, 0.5}}, {{5.0 / 6.0, -kS12}, {-kS12, 0.5}}, "B");
}

QuantumState uniform_state() { return QuantumState::from_density({{0.5, 0.5}, {0.5, 0.5}}); }

std::array<QuantumState, 3> zero_states() {
    const Complex i(0.0, 1.0);
    const QuantumState first = QuantumState::from_density({{0.5, -0.5 * i}, {0.5 * i, 0.5}});
    const QuantumState second = QuantumState::from_density({{0.8, -0.4 * i}, {0.4 * i, 0.2}});
    // (1/4)[[1, -i], [i, 1]] + (1/10)[[4, -2i], [2i, 1]]
    const QuantumState mixed = QuantumState::from_density({{0.25 + 0.4, -0.25 * i - 0.2 * i},
                                                           {0.25 * i + 0.2 * i, 0.25 + 0.1}});
    return {first, second, mixed};
}

BinaryMeasurement lifted_question_a() {
    ComplexMatrix yes{{5.0 / 6.0, kS12, kS18}, {kS12, 0.5, -kS6}, {kS18, -kS6, 2.0 / 3.0}};
    ComplexMatrix no{{1.0 / 6.0, -kS12, -kS18}, {-kS12, 0.5, kS6}, {-kS18, kS6, 1.0 / 3.0}};
    return BinaryMeasurement::from_pair(std::move(yes), std::move(no), "A'");
}

BinaryMeasurement lifted_question_b() {
    ComplexMatrix yes{{1.0 / 6.0, kS12, -kS18}, {kS12, 0.5, -kS6}, {-kS18, -kS6, 1.0 / 3.0}};
    ComplexMatrix no{{5.0 / 6.0, -kS12, kS18}, {-kS12, 0.5, kS6}, {kS18, kS6, 2.0 / 3.0}};
    return BinaryMeasurement::from_pair(std::move(yes), std::move(no), "B'");
}

}  // namespace qqpovm::reference
