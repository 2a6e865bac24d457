#ifndef SPINV_ISING_HPP
#define SPINV_ISING_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spinv {

// Classical Ising energy function
//
//   E(sigma) = - sum_{j<k} J_jk sigma_j sigma_k - mu * sum_j h_j sigma_j + offset
//
// over spins sigma_j in {-1,+1}. The constant offset is not part of the
// textbook form; Boolean->spin reductions fold their constant term into it so
// that the zero-ground-energy decision stays meaningful after a reduction.

struct Coupling {
    int j = 0;
    int k = 0;
    double strength = 0.0;
    friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Field {
    int site = 0;
    double strength = 0.0;
    friend bool operator==(const Field&, const Field&) = default;
};

using SpinConfiguration = std::vector<std::int8_t>;  // entries exactly -1 or +1

class IsingInstance {
public:
    // Validates index ranges, j < k ordering and pair uniqueness; throws
    // validation_error on violation.
    IsingInstance(int n, std::vector<Coupling> couplings, std::vector<Field> fields,
                  double mu = 1.0, double offset = 0.0);

    int n() const { return n_; }
    double mu() const { return mu_; }
    double offset() const { return offset_; }
    const std::vector<Coupling>& couplings() const { return couplings_; }
    const std::vector<Field>& fields() const { return fields_; }

    friend bool operator==(const IsingInstance&, const IsingInstance&) = default;

private:
    int n_;
    std::vector<Coupling> couplings_;
    std::vector<Field> fields_;
    double mu_;
    double offset_;
};

struct GroundStateResult {
    SpinConfiguration config;
    double energy = 0.0;
    std::uint64_t degeneracy = 0;  // configurations attaining the exact minimum
};

struct BruteForceOptions {
    int cap = 30;         // refuse instances with n above this
    int num_threads = 1;  // >1 partitions the scan; <=0 uses hardware threads
};

// Evaluates the energy of one configuration. Summation order is fixed
// (couplings in stored order, then fields, then offset) so results are
// byte-identical across runs and partitions.
double energy(const IsingInstance& instance, const SpinConfiguration& config);

// Exhaustive scan of all 2^n configurations. Ties on the minimum are broken
// lexicographically with +1 ordered before -1, scanning position 0 first.
// The parallel partition merge preserves that rule, so serial and parallel
// runs return bit-identical results.
GroundStateResult brute_force_ground(const IsingInstance& instance,
                                     const BruteForceOptions& opts = {});

// Decision form: does the ground state have zero energy (|E| <= tol)?
bool has_zero_ground(const IsingInstance& instance, double tol = 1e-9,
                     const BruteForceOptions& opts = {});

// Spin vector <-> text helpers used by the CLI ("+-+" or "+1,-1,+1").
SpinConfiguration parse_spin_text(const std::string& text);
std::string spin_text(const SpinConfiguration& config);

}  // namespace spinv

#endif
