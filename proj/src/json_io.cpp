#include "json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace spinv {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON", 0);
    return j;
}

// json type/access errors become validation errors for callers
template <typename F>
auto translating(F&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw validation_error(e.what());
    }
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw validation_error(std::string("missing or non-numeric field \"") + key + "\"");
    return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw validation_error(std::string("missing or non-integer field \"") + key + "\"");
    return j[key].get<int>();
}

}  // namespace

std::string ising_to_json(const IsingInstance& instance) {
    json j;
    j["n"] = instance.n();
    j["mu"] = instance.mu();
    j["offset"] = instance.offset();
    j["couplings"] = json::array();
    for (const auto& c : instance.couplings()) j["couplings"].push_back({c.j, c.k, c.strength});
    j["fields"] = json::array();
    for (const auto& f : instance.fields()) j["fields"].push_back({f.site, f.strength});
    return j.dump(2);
}

IsingInstance ising_from_json(const std::string& text) {
    return translating([&] {
        json j = parse_json(text);
        if (!j.is_object()) throw validation_error("Ising JSON must be an object");
        const int n = require_int(j, "n");
        const double mu = j.contains("mu") ? require_number(j, "mu") : 1.0;
        const double offset = j.contains("offset") ? require_number(j, "offset") : 0.0;
        std::vector<Coupling> couplings;
        if (j.contains("couplings")) {
            for (const auto& entry : j["couplings"]) {
                if (!entry.is_array() || entry.size() != 3)
                    throw validation_error("each coupling must be [j, k, J]");
                couplings.push_back(
                    {entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>()});
            }
        }
        std::vector<Field> fields;
        if (j.contains("fields")) {
            for (const auto& entry : j["fields"]) {
                if (!entry.is_array() || entry.size() != 2)
                    throw validation_error("each field must be [j, h]");
                fields.push_back({entry[0].get<int>(), entry[1].get<double>()});
            }
        }
        return IsingInstance(n, std::move(couplings), std::move(fields), mu, offset);
    });
}

std::string certificate_to_json(const ReductionCertificate& cert) {
    json j;
    json vts = json::object();
    for (const auto& [var, spin] : cert.var_to_spin) vts[std::to_string(var)] = spin;
    j["var_to_spin"] = std::move(vts);
    j["ancilla_spins"] = cert.ancilla_spins;
    j["offset"] = cert.offset;
    j["penalty_weight"] = cert.penalty_weight;
    return j.dump(2);
}

ReductionCertificate certificate_from_json(const std::string& text) {
    return translating([&] {
        json j = parse_json(text);
        ReductionCertificate cert;
        if (!j.contains("var_to_spin") || !j["var_to_spin"].is_object())
            throw validation_error("certificate requires a \"var_to_spin\" object");
        for (const auto& [key, value] : j["var_to_spin"].items())
            cert.var_to_spin[std::stoi(key)] = value.get<int>();
        if (j.contains("ancilla_spins"))
            cert.ancilla_spins = j["ancilla_spins"].get<std::vector<int>>();
        cert.offset = j.contains("offset") ? require_number(j, "offset") : 0.0;
        cert.penalty_weight =
            j.contains("penalty_weight") ? require_number(j, "penalty_weight") : 4.0;
        return cert;
    });
}

std::string hamiltonian_to_json(const HamiltonianSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["terms"] = json::array();
    for (const auto& t : spec.terms) j["terms"].push_back({t.coefficient, t.op.factors});
    return j.dump(2);
}

HamiltonianSpec hamiltonian_from_json(const std::string& text) {
    return translating([&] {
        json j = parse_json(text);
        const int n = require_int(j, "n");
        std::vector<PauliTerm> terms;
        if (j.contains("terms")) {
            for (const auto& entry : j["terms"]) {
                if (!entry.is_array() || entry.size() != 2)
                    throw validation_error("each term must be [coefficient, \"pauli string\"]");
                terms.push_back(
                    {entry[0].get<double>(), make_pauli_string(entry[1].get<std::string>())});
            }
        }
        return make_hamiltonian(n, std::move(terms));
    });
}

std::string report_to_json(const VerificationReport& report) {
    json j;
    j["accepted"] = report.accepted;
    j["max_residual"] = report.max_residual;
    j["samples"] = report.sample_count;
    j["counted"] = report.counted_ops.counted;
    j["free"] = report.counted_ops.free;
    j["tolerance"] = report.tolerance;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace spinv
