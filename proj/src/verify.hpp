#ifndef SPINV_VERIFY_HPP
#define SPINV_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "expr.hpp"
#include "hyper.hpp"
#include "ising.hpp"
#include "opcount.hpp"

namespace spinv {

// Back-substitution verification: accept or reject candidate exact solutions
// by evaluating the residual H*Psi - E*Psi at sample points (spatial sector)
// or the Ising energy of a spin configuration (spin sector), tallying the
// elementary operations actually performed.

// H = kinetic_prefactor * sum_j Laplacian_j + V(x)
struct SchrodingerOp {
    double kinetic_prefactor = -0.5;  // hbar = m = 1
    Expr potential;
};

struct VerificationReport {
    bool accepted = false;
    double max_residual = 0.0;
    std::int64_t sample_count = 0;  // evaluable samples
    std::int64_t skipped = 0;       // singular samples
    OperationCount counted_ops;
    double tolerance = 0.0;
};

// Builds the residual expression prefactor * sum_j Laplacian_j(psi) +
// (V - E) * psi once, then evaluates it at every sample. The residual at x is
// normalized by max(1, |psi(x)| * (1 + |V(x) - E|)). Acceptance requires the
// max normalized residual <= tol and at least 80% evaluable samples.
VerificationReport verify_wavefunction(const SchrodingerOp& op, const Expr& psi, double energy,
                                       const std::vector<SystemGeometry>& samples, double tol);

// Accepts iff |energy(instance, config)| <= tol. The operation tally is a
// function of the instance structure alone.
VerificationReport verify_spin_solution(const IsingInstance& instance,
                                        const SpinConfiguration& config, double tol);

struct CoupledCandidate {
    Expr phi;                    // hyperradial factor, single variable
    std::vector<Expr> upsilons;  // angular factors, single variable each
    SpinConfiguration spin;      // candidate m_c
    double energy_claim = 0.0;   // E; 0 in the decision form
};

struct CoupledReport {
    VerificationReport combined;
    VerificationReport spatial;
    VerificationReport spin;
};

// Runs both sector checks with the decomposition E_spatial = energy_claim,
// E_spin = 0; accepted iff both sectors accept.
CoupledReport verify_coupled(const SchrodingerOp& op, const IsingInstance& h_spin,
                             const CoupledCandidate& candidate,
                             const std::vector<SystemGeometry>& samples, double tol);

struct ScalingFit {
    double degree = 0.0;     // log-log slope
    double amplitude = 0.0;  // exp(intercept)
    double r_squared = 0.0;
};

// Least squares of log(ops) against log(N). Requires >= 2 distinct N values
// and positive op counts.
ScalingFit poly_scaling_audit(const std::function<std::int64_t(int)>& counted_ops_of_n,
                              const std::vector<int>& n_values);

// Built-in audit families: "hyperradius" (exactly N+1 counted ops at D=1),
// "laplacian-gaussian" (counted ops of all N Laplacians of the separable
// Gaussian), "separable-eval" (full eval_separable tally) and "constant".
std::function<std::int64_t(int)> audit_family(const std::string& name);

// Deterministic uniform samples in [lo, hi]^(n*d); identical across
// platforms for a given seed.
std::vector<SystemGeometry> sample_box(int n_particles, int dim, int count, double lo, double hi,
                                       std::uint64_t seed);

}  // namespace spinv

#endif
