#pragma once

// The two-question qubit model used throughout the tests and the bundled
// paper.model fixture:
//
//   A: yes = [[5/6, 1/sqrt(12)], [1/sqrt(12), 1/2]],  no = I - yes
//   B: yes = [[1/6, 1/sqrt(12)], [1/sqrt(12), 1/2]],  no = I - yes
//
// Neither question is projective (both yes effects have spectrum {1/3, 1}).
// Under the literal convention the QQ operator is c * sigma_x with
// c = 2 / (27 sqrt(3)).

#include <array>

#include "qqpovm/linalg.hpp"
#include "qqpovm/measurement.hpp"

namespace qqpovm::reference {

/// 2 / (27 sqrt(3))
double qq_constant();

BinaryMeasurement question_a();
BinaryMeasurement question_b();

/// (1/2) [[1, 1], [1, 1]]; the literal-convention statistic here equals qq_constant().
QuantumState uniform_state();

/// Three states with zero literal-convention statistic: (alpha, beta) = (i, 1),
/// (2i, 1), and their equal-weight mixture.
std::array<QuantumState, 3> zero_states();

/// Hand-built projective liftings on C^3 whose top-left 2x2 blocks are the
/// yes/no effects of question_a() / question_b(). The (0,0) entries of A'.no and
/// B'.yes are 1/6, which completeness and idempotence both require.
BinaryMeasurement lifted_question_a();
BinaryMeasurement lifted_question_b();

}  // namespace qqpovm::reference
