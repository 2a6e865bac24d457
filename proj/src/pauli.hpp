#ifndef SPINV_PAULI_HPP
#define SPINV_PAULI_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ising.hpp"

namespace spinv {

// Quantum operator layer. A Hamiltonian is a real-weighted sum of Pauli
// strings, H = sum_j a_j X_j with each X_j a tensor product of {I,X,Y,Z}.
// Basis convention (normative for all diagonal-correspondence checks): basis
// index b in [0, 2^n), bit j of b is 0 <=> sigma_j = +1 (Z|0> = +|0>), and
// site 0 is the least significant bit.

struct PauliString {
    std::string factors;  // one of 'I','X','Y','Z' per site, site 0 first

    int n() const { return static_cast<int>(factors.size()); }
    bool is_identity() const { return factors.find_first_not_of('I') == std::string::npos; }
    bool is_diagonal() const { return factors.find_first_not_of("IZ") == std::string::npos; }
    friend bool operator==(const PauliString&, const PauliString&) = default;
};

// Validates the factor alphabet; throws validation_error otherwise.
PauliString make_pauli_string(const std::string& factors);

struct PauliTerm {
    double coefficient = 0.0;
    PauliString op;
    friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

struct HamiltonianSpec {
    int n = 0;
    std::vector<PauliTerm> terms;

    bool is_diagonal() const {
        for (const auto& t : terms)
            if (!t.op.is_diagonal()) return false;
        return true;
    }
    friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;
};

HamiltonianSpec make_hamiltonian(int n, std::vector<PauliTerm> terms);

// sigma_j -> Z_j: couplings become ZZ terms with coefficient -J_jk, fields
// become Z terms with coefficient -mu*h_j, a nonzero offset becomes an
// identity term. The result is diagonal in the computational basis.
HamiltonianSpec quantize_ising(const IsingInstance& instance);

// Concatenates term lists, merging duplicate Pauli strings by coefficient
// addition (exact-zero coefficients are dropped). Throws dimension_error on
// mismatched n.
HamiltonianSpec compose(const HamiltonianSpec& h, const HamiltonianSpec& h_int);

// Dense 2^n x 2^n realization. Refuses n above the cap.
Eigen::MatrixXcd build_matrix(const HamiltonianSpec& spec, int dense_cap = 10);

enum class SpectrumMethod { diagonal_scan, dense };

struct SpectrumResult {
    std::vector<double> eigenvalues;   // sorted ascending, 2^n entries
    Eigen::VectorXcd ground_vector;    // unit norm; dense solves only
    SpectrumMethod method = SpectrumMethod::diagonal_scan;

    double ground_energy() const { return eigenvalues.front(); }
};

struct EigenCaps {
    int diagonal_cap = 30;
    int dense_cap = 10;
};

// Diagonal specs (I/Z factors only) are scanned in O(2^n * terms) without
// materializing the matrix; anything else goes through the dense solver.
SpectrumResult ground_eigen(const HamiltonianSpec& spec, const EigenCaps& caps = {});

// Diagonal entry <b|H|b> of a diagonal spec; used by the scan and by tests.
double diagonal_entry(const HamiltonianSpec& spec, std::uint64_t basis_index);

}  // namespace spinv

#endif
