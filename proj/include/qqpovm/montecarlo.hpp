#pragma once

// Finite-sample simulation of the two-order questionnaire experiment.
//
// Each order (A first, B first) is an independent stream of n respondents whose
// answer pairs are drawn from the exact four-cell distribution given by
// outcome_distribution. Streams use std::mt19937_64 seeded by
// derive_seed(seed, stream), so reports are identical for a fixed seed no
// matter how the streams are scheduled.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qqpovm/measurement.hpp"

namespace qqpovm {

struct ExperimentConfig {
    QuantumState state;
    BinaryMeasurement a;
    BinaryMeasurement b;
    Convention convention = Convention::Sqrt;
    std::uint64_t n_per_order = 0;
    std::uint64_t seed = 0;
};

/// Cells within an order: yes-yes, yes-no, no-yes, no-no (first answer, second answer).
using CellCounts = std::array<std::uint64_t, 4>;

struct EmpiricalReport {
    std::array<CellCounts, 2> counts{};  // [0] = A first, [1] = B first
    std::uint64_t n_per_order = 0;
    double empirical_qq = 0.0;
    double standard_error = 0.0;
    double analytic_qq = 0.0;
};

/// SplitMix64 finalizer applied to seed and stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform_unit(std::uint64_t bits);

/// n categorical draws over `probabilities` (clamped at 0 and renormalized).
CellCounts sample_cells(std::span<const double, 4> probabilities, std::uint64_t n, std::uint64_t seed);

/// Throws UnsupportedConventionError for Convention::Literal and
/// std::invalid_argument for n_per_order == 0.
EmpiricalReport simulate(const ExperimentConfig& config);

struct SweepRow {
    std::uint64_t n = 0;
    double abs_error = 0.0;
    double standard_error = 0.0;
    double empirical_qq = 0.0;
    double analytic_qq = 0.0;
};

/// One simulate() per size with seed derive_seed(config.seed, index). Sizes
/// must be non-empty and strictly ascending.
std::vector<SweepRow> convergence_sweep(const ExperimentConfig& config, std::span<const std::uint64_t> sizes);

}  // namespace qqpovm
