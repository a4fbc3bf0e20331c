#include "qqpovm/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qqpovm/errors.hpp"

namespace qqpovm {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ModelParseError(where + ": " + what);
}

Complex parse_entry(const Json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    fail(where, "entry must be a number or [re, im]");
}

ComplexMatrix parse_matrix(const Json& j, std::size_t dim, const std::string& where) {
    if (!j.is_array() || j.size() != dim) fail(where, "expected " + std::to_string(dim) + " rows");
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto& row = j[r];
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != dim) fail(row_where, "expected " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c) {
            const Complex z = parse_entry(row[c], row_where + "[" + std::to_string(c) + "]");
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(row_where, "non-finite entry");
            entries.push_back(z);
        }
    }
    return ComplexMatrix(dim, dim, std::move(entries));
}

Json entry_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

QuantumState ModelFile::state() const {
    if (const auto* rho = std::get_if<ComplexMatrix>(&state_spec)) return QuantumState::from_density(*rho, tol());
    return QuantumState::from_amplitudes(std::get<std::vector<Complex>>(state_spec));
}

const BinaryMeasurement& ModelFile::measurement(std::string_view name) const {
    for (const auto& m : measurements)
        if (m.name == name) return m;
    throw ModelParseError("no measurement named '" + std::string(name) + "'");
}

ModelFile parse_model(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ModelParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("model", "top level must be an object");

    ModelFile model;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1)
        fail("dimension", "must be a positive integer");
    model.dimension = doc["dimension"].get<std::size_t>();

    if (!doc.contains("measurements") || !doc["measurements"].is_object() || doc["measurements"].empty())
        fail("measurements", "must be a non-empty object");
    for (const auto& [name, m] : doc["measurements"].items()) {
        const std::string where = "measurements." + name;
        if (!m.is_object() || !m.contains("yes") || !m.contains("no")) fail(where, "needs 'yes' and 'no' matrices");
        model.measurements.push_back(BinaryMeasurement::from_pair(parse_matrix(m["yes"], model.dimension, where + ".yes"),
                                                                  parse_matrix(m["no"], model.dimension, where + ".no"),
                                                                  name));
    }

    if (doc.contains("tolerance")) {
        const auto& t = doc["tolerance"];
        if (!t.is_number() || !(t.get<double>() >= 0.0)) fail("tolerance", "must be a non-negative number");
        model.tolerance = t.get<double>();
    }
    if (doc.contains("convention")) {
        if (!doc["convention"].is_string()) fail("convention", "must be \"literal\" or \"sqrt\"");
        try {
            model.convention = parse_convention(doc["convention"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail("convention", e.what());
        }
    }

    if (!doc.contains("state") || !doc["state"].is_object()) fail("state", "must be an object");
    const auto& st = doc["state"];
    if (st.contains("rho") == st.contains("amplitudes")) fail("state", "give exactly one of 'rho' or 'amplitudes'");
    if (st.contains("rho")) {
        model.state_spec = parse_matrix(st["rho"], model.dimension, "state.rho");
    } else {
        const auto& amps = st["amplitudes"];
        if (!amps.is_array() || amps.size() != model.dimension)
            fail("state.amplitudes", "expected " + std::to_string(model.dimension) + " entries");
        std::vector<Complex> v;
        for (std::size_t i = 0; i < amps.size(); ++i)
            v.push_back(parse_entry(amps[i], "state.amplitudes[" + std::to_string(i) + "]"));
        model.state_spec = std::move(v);
    }
    try {
        (void)model.state();
    } catch (const std::exception& e) {
        fail("state", e.what());
    }
    return model;
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError("cannot read model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string emit_model(const ModelFile& model) {
    Json doc;
    doc["dimension"] = model.dimension;
    Json ms = Json::object();
    for (const auto& m : model.measurements) {
        ms[m.name] = Json{{"yes", matrix_json(m.yes.matrix)}, {"no", matrix_json(m.no.matrix)}};
    }
    doc["measurements"] = std::move(ms);
    if (const auto* rho = std::get_if<ComplexMatrix>(&model.state_spec)) {
        doc["state"] = Json{{"rho", matrix_json(*rho)}};
    } else {
        Json amps = Json::array();
        for (const auto& z : std::get<std::vector<Complex>>(model.state_spec)) amps.push_back(entry_json(z));
        doc["state"] = Json{{"amplitudes", std::move(amps)}};
    }
    if (model.convention) doc["convention"] = std::string(to_string(*model.convention));
    if (model.tolerance) doc["tolerance"] = *model.tolerance;
    return doc.dump(2) + "\n";
}

}  // namespace qqpovm
