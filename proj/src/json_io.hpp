#ifndef SPINV_JSON_IO_HPP
#define SPINV_JSON_IO_HPP

#include <string>

#include "ising.hpp"
#include "pauli.hpp"
#include "sat.hpp"
#include "verify.hpp"

namespace spinv {

// JSON codecs for the on-disk formats. All writers produce key-sorted,
// byte-stable output, and double values round-trip exactly.
//
//   Ising instance: {"n", "mu", "couplings": [[j,k,J],...],
//                    "fields": [[j,h],...], "offset"}
//   certificate:    {"var_to_spin": {"1": 0, ...}, "ancilla_spins": [...],
//                    "offset", "penalty_weight"}
//   Hamiltonian:    {"n", "terms": [[coeff, "IZZ..."], ...]} (site 0 first)
//   report:         {"accepted", "max_residual", "samples", "counted",
//                    "free", "tolerance"}

std::string ising_to_json(const IsingInstance& instance);
IsingInstance ising_from_json(const std::string& text);

std::string certificate_to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const std::string& text);

std::string hamiltonian_to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace spinv

#endif
