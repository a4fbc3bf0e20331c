#pragma once

// JSON model files:
//
//   {
//     "dimension": 2,
//     "measurements": { "A": {"yes": M, "no": M}, "B": {...} },
//     "state": {"rho": M} | {"amplitudes": [z, z, ...]},
//     "convention": "literal" | "sqrt",      (optional)
//     "tolerance": 1e-10                     (optional)
//   }
//
// A matrix M is an array of rows; an entry z is a number or [re, im].
// Measurements keep their file order.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qqpovm/linalg.hpp"
#include "qqpovm/measurement.hpp"

namespace qqpovm {

class ModelParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelFile {
    std::size_t dimension = 0;
    std::vector<BinaryMeasurement> measurements;
    /// Either a density matrix or the (unnormalized) pure-state amplitudes, as written.
    std::variant<ComplexMatrix, std::vector<Complex>> state_spec;
    std::optional<Convention> convention;
    std::optional<double> tolerance;

    QuantumState state() const;
    Tolerance tol() const { return tolerance ? Tolerance(*tolerance) : Tolerance{}; }
    /// Throws ModelParseError if no measurement has this name.
    const BinaryMeasurement& measurement(std::string_view name) const;
};

/// Parses and checks structure, shapes and the state. Measurement validity is
/// not checked here (see validate_measurement).
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::filesystem::path& path);

/// Serializes with every entry written as [re, im] at round-trip precision.
std::string emit_model(const ModelFile& model);

}  // namespace qqpovm
