#include "pauli.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace spinv {

PauliString make_pauli_string(const std::string& factors) {
    for (char ch : factors)
        if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
            throw validation_error(std::string("invalid Pauli factor '") + ch +
                                   "' (expected I, X, Y or Z)");
    return PauliString{factors};
}

HamiltonianSpec make_hamiltonian(int n, std::vector<PauliTerm> terms) {
    if (n < 0) throw validation_error("spin count must be >= 0");
    for (const auto& t : terms)
        if (t.op.n() != n)
            throw dimension_error("Pauli string length " + std::to_string(t.op.n()) +
                                  " does not match n=" + std::to_string(n));
    return HamiltonianSpec{n, std::move(terms)};
}

HamiltonianSpec quantize_ising(const IsingInstance& instance) {
    HamiltonianSpec spec;
    spec.n = instance.n();
    const std::string identity(static_cast<std::size_t>(instance.n()), 'I');
    for (const auto& c : instance.couplings()) {
        std::string f = identity;
        f[static_cast<std::size_t>(c.j)] = 'Z';
        f[static_cast<std::size_t>(c.k)] = 'Z';
        spec.terms.push_back({-c.strength, PauliString{std::move(f)}});
    }
    for (const auto& fld : instance.fields()) {
        std::string f = identity;
        f[static_cast<std::size_t>(fld.site)] = 'Z';
        spec.terms.push_back({-instance.mu() * fld.strength, PauliString{std::move(f)}});
    }
    if (instance.offset() != 0.0) spec.terms.push_back({instance.offset(), PauliString{identity}});
    return spec;
}

HamiltonianSpec compose(const HamiltonianSpec& h, const HamiltonianSpec& h_int) {
    if (h.n != h_int.n)
        throw dimension_error("cannot compose Hamiltonians with n=" + std::to_string(h.n) +
                              " and n=" + std::to_string(h_int.n));
    HamiltonianSpec out;
    out.n = h.n;
    std::unordered_map<std::string, std::size_t> index;
    auto add = [&](const PauliTerm& t) {
        auto it = index.find(t.op.factors);
        if (it == index.end()) {
            index.emplace(t.op.factors, out.terms.size());
            out.terms.push_back(t);
        } else {
            out.terms[it->second].coefficient += t.coefficient;
        }
    };
    for (const auto& t : h.terms) add(t);
    for (const auto& t : h_int.terms) add(t);
    std::erase_if(out.terms, [](const PauliTerm& t) { return t.coefficient == 0.0; });
    return out;
}

namespace {

// Applies one Pauli string to basis state |b>: the image is |b ^ flip_mask>
// with the returned phase. X flips; Y flips with phase +/- i; Z contributes
// a sign. Conventions: Z|0> = +|0>, Y|0> = i|1>, Y|1> = -i|0>.
std::complex<double> apply_phase(const PauliString& op, std::uint64_t b,
                                 std::uint64_t& flip_mask) {
    std::complex<double> phase(1.0, 0.0);
    flip_mask = 0;
    for (int site = 0; site < op.n(); ++site) {
        const bool bit = (b >> site) & 1u;
        switch (op.factors[static_cast<std::size_t>(site)]) {
            case 'I':
                break;
            case 'X':
                flip_mask |= std::uint64_t{1} << site;
                break;
            case 'Y':
                flip_mask |= std::uint64_t{1} << site;
                phase *= bit ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0, 1.0);
                break;
            case 'Z':
                if (bit) phase = -phase;
                break;
        }
    }
    return phase;
}

}  // namespace

Eigen::MatrixXcd build_matrix(const HamiltonianSpec& spec, int dense_cap) {
    if (spec.n > dense_cap)
        throw cap_error("dense matrix refused: n=" + std::to_string(spec.n) + " exceeds dense cap " +
                        std::to_string(dense_cap));
    const std::uint64_t dim = std::uint64_t{1} << spec.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto& term : spec.terms) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            std::uint64_t flip = 0;
            std::complex<double> phase = apply_phase(term.op, b, flip);
            m(static_cast<Eigen::Index>(b ^ flip), static_cast<Eigen::Index>(b)) +=
                term.coefficient * phase;
        }
    }
    return m;
}

double diagonal_entry(const HamiltonianSpec& spec, std::uint64_t basis_index) {
    double acc = 0.0;
    for (const auto& term : spec.terms) {
        std::uint64_t zmask = 0;
        for (int site = 0; site < term.op.n(); ++site) {
            char f = term.op.factors[static_cast<std::size_t>(site)];
            if (f == 'Z') zmask |= std::uint64_t{1} << site;
            else if (f != 'I')
                throw validation_error("diagonal_entry requires an I/Z-only spec");
        }
        const bool odd = std::popcount(basis_index & zmask) & 1;
        acc += odd ? -term.coefficient : term.coefficient;
    }
    return acc;
}

SpectrumResult ground_eigen(const HamiltonianSpec& spec, const EigenCaps& caps) {
    SpectrumResult result;
    if (spec.is_diagonal()) {
        if (spec.n > caps.diagonal_cap)
            throw cap_error("diagonal scan refused: n=" + std::to_string(spec.n) +
                            " exceeds diagonal cap " + std::to_string(caps.diagonal_cap));
        const std::uint64_t dim = std::uint64_t{1} << spec.n;
        result.method = SpectrumMethod::diagonal_scan;
        result.eigenvalues.resize(dim);
        for (std::uint64_t b = 0; b < dim; ++b) result.eigenvalues[b] = diagonal_entry(spec, b);
        std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
        return result;
    }
    if (spec.n > caps.dense_cap)
        throw cap_error("dense solve refused: n=" + std::to_string(spec.n) + " exceeds dense cap " +
                        std::to_string(caps.dense_cap));
    result.method = SpectrumMethod::dense;
    Eigen::MatrixXcd m = build_matrix(spec, caps.dense_cap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw validation_error("dense eigensolve failed");
    result.eigenvalues.assign(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
    result.ground_vector = solver.eigenvectors().col(0);
    result.ground_vector.normalize();
    return result;
}

}  // namespace spinv
