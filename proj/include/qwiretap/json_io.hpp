#pragma once

// JSON schemas for channels, ensembles, codes and reports. Complex scalars
// serialize as two-element [re, im] arrays; matrices as
// {"rows": r, "cols": c, "data": [[re,im], ...]} in row-major order.

#include <string>
#include <vector>

#include <json.hpp>

#include "qwiretap/capacity.hpp"
#include "qwiretap/channel.hpp"
#include "qwiretap/dfs.hpp"
#include "qwiretap/secrecy.hpp"

namespace qwiretap {

using json = nlohmann::ordered_json;

namespace jsonio {

inline json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": complex scalar must be a [re, im] number pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError(where + ": matrix needs \"rows\", \"cols\" and \"data\" fields");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw ParseError(where + ".rows/cols: must be nonnegative integers");
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    if (!j["data"].is_array() || j["data"].size() != rows * cols)
        throw ParseError(where + ".data: expected " + std::to_string(rows * cols) +
                         " row-major [re, im] pairs");
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (std::size_t k = 0; k < j["data"].size(); ++k)
        entries.push_back(complex_from_json(j["data"][k], where + ".data[" + std::to_string(k) + "]"));
    return ComplexMatrix(rows, cols, std::move(entries));
}

inline json channel_to_json(const QuantumChannel& ch) {
    json kraus = json::array();
    for (const ComplexMatrix& a : ch.kraus()) kraus.push_back(matrix_to_json(a));
    return json{{"label", ch.label()}, {"dim_in", ch.dim_in()}, {"kraus", std::move(kraus)}};
}

inline QuantumChannel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kraus"))
        throw ParseError("channel: needs a \"kraus\" array");
    if (!j["kraus"].is_array() || j["kraus"].empty())
        throw ParseError("channel.kraus: must be a nonempty array of matrices");
    std::vector<ComplexMatrix> kraus;
    for (std::size_t k = 0; k < j["kraus"].size(); ++k)
        kraus.push_back(matrix_from_json(j["kraus"][k], "channel.kraus[" + std::to_string(k) + "]"));
    if (j.contains("label") && !j["label"].is_string())
        throw ParseError("channel.label: must be a string");
    const std::string label = j.value("label", std::string("unlabeled"));
    QuantumChannel ch(std::move(kraus), label);
    if (j.contains("dim_in") &&
        (!j["dim_in"].is_number_unsigned() || j["dim_in"].get<std::size_t>() != ch.dim_in()))
        throw ParseError("channel.dim_in: declared " + j["dim_in"].dump() + " but Kraus operators are " +
                         std::to_string(ch.dim_in()) + "-dimensional");
    return ch;
}

inline json ensemble_to_json(const Ensemble& e) {
    json states = json::array();
    for (const DensityMatrix& s : e.states()) states.push_back(matrix_to_json(s.matrix()));
    return json{{"probs", e.probs()}, {"states", std::move(states)}};
}

inline Ensemble ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("probs") || !j.contains("states"))
        throw ParseError("ensemble: needs \"probs\" and \"states\" arrays");
    if (!j["probs"].is_array() || !j["states"].is_array())
        throw ParseError("ensemble: \"probs\" and \"states\" must be arrays");
    std::vector<double> probs;
    for (const auto& p : j["probs"]) {
        if (!p.is_number()) throw ParseError("ensemble.probs: entries must be numbers");
        probs.push_back(p.get<double>());
    }
    std::vector<DensityMatrix> states;
    for (std::size_t k = 0; k < j["states"].size(); ++k)
        states.emplace_back(
            matrix_from_json(j["states"][k], "ensemble.states[" + std::to_string(k) + "]"));
    return Ensemble(std::move(states), std::move(probs));
}

// Wiretap-code input: {"length": n, "codewords": [matrix], "povm": [matrix]}.
// Codewords are density matrices; "length" is the letter count used as the
// leakage denominator.
inline WiretapCode wiretap_code_from_json(const json& j) {
    if (!j.is_object() || !j.contains("codewords") || !j.contains("povm") || !j.contains("length"))
        throw ParseError("code: needs \"length\", \"codewords\" and \"povm\" fields");
    if (!j["length"].is_number_unsigned() || j["length"].get<std::size_t>() == 0)
        throw ParseError("code.length: must be a positive integer");
    if (!j["codewords"].is_array() || !j["povm"].is_array())
        throw ParseError("code: \"codewords\" and \"povm\" must be arrays of matrices");
    WiretapCode code;
    code.length = j["length"].get<std::size_t>();
    for (std::size_t k = 0; k < j["codewords"].size(); ++k)
        code.codewords.emplace_back(
            matrix_from_json(j["codewords"][k], "code.codewords[" + std::to_string(k) + "]"));
    for (std::size_t k = 0; k < j["povm"].size(); ++k)
        code.decoding_povm.push_back(
            matrix_from_json(j["povm"][k], "code.povm[" + std::to_string(k) + "]"));
    return code;
}

inline json dfs_to_json(const std::vector<DfsSubspace>& subspaces, std::size_t ambient_dim) {
    json dims = json::array();
    json list = json::array();
    for (const DfsSubspace& sub : subspaces) {
        dims.push_back(sub.dim());
        json eigenvalues = json::array();
        for (const cplx& c : sub.eigenvalue_tuple()) eigenvalues.push_back(complex_to_json(c));
        list.push_back(json{{"basis", matrix_to_json(sub.basis())},
                            {"eigenvalues", std::move(eigenvalues)}});
    }
    return json{{"ambient_dim", ambient_dim}, {"dims", std::move(dims)},
                {"subspaces", std::move(list)}};
}

inline json verdict_to_json(const WiretapVerdict& v) {
    return json{{"p_error", v.p_error},
                {"leakage_bits_per_letter", v.leakage},
                {"passes", v.passes},
                {"lambda", v.lambda},
                {"mu", v.mu}};
}

inline json capacity_to_json(const CapacityResult& r) {
    return json{{"value_bits", r.value_bits},
                {"probs", r.optimal_probs},
                {"converged", r.converged},
                {"iterations", r.iterations},
                {"mode", r.mode == CapacityMode::HolevoMax ? "holevo-max"
                                                           : "difference-lower-bound"}};
}

inline json privacy_to_json(const PrivacyReport& p) {
    return json{{"chi_bob", p.chi_bob}, {"chi_eve", p.chi_eve}, {"privacy", p.privacy}};
}

inline json parse_text(const std::string& text, const std::string& source_name) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(source_name + ": " + err.what());
    }
}

} // namespace jsonio

} // namespace qwiretap
