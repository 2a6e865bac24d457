#ifndef SPINV_HYPER_HPP
#define SPINV_HYPER_HPP

#include <vector>

#include "expr.hpp"
#include "opcount.hpp"

namespace spinv {

// Hyperspherical coordinates of an N*D-dimensional configuration-space
// vector, and evaluation of separable wavefunctions
// Psi = phi(rho) * prod_k upsilon_k(Omega_k).

struct SystemGeometry {
    int n_particles = 0;
    int dim = 3;
    std::vector<double> positions;  // flattened, positions[j*dim + d]
};

SystemGeometry make_geometry(int n_particles, int dim, std::vector<double> positions);

struct HyperRadius {
    double value = 0.0;
    OperationCount count;  // N*D squarings + 1 sqrt counted, additions free
};

HyperRadius hyperradius(const SystemGeometry& g);

// Angles follow the standard recursion Omega_k = arccos(y_k / s_k) with s_k
// the suffix norm sqrt(y_k^2 + ... + y_{M-1}^2); the final angle folds in the
// sign of the last component (range [0, 2*pi)). A zero suffix norm makes the
// angle conventionally 0 and sets its degenerate flag. Counts are reported
// both with suffix norms recomputed per angle (naive, O(M^2)) and shared
// across angles (cached, O(M)); counts are structural, independent of the
// position values.
struct HyperAngles {
    std::vector<double> angles;  // M-1 entries for M = N*D
    std::vector<bool> degenerate;
    OperationCount naive;
    OperationCount cached;
};

HyperAngles hyperangles(const SystemGeometry& g);

// Inverse map: positions from (rho, angles). Round-trips hyperangles up to
// floating-point error whenever rho > 0 and no suffix is degenerate.
std::vector<double> positions_from_hyperspherical(double rho, const std::vector<double>& angles);

struct SeparableEval {
    double value = 0.0;
    double rho = 0.0;
    std::vector<double> angles;
    std::vector<bool> degenerate;
    OperationCount total;        // coordinates (cached) + both factors + products
    OperationCount coords_naive;
    OperationCount coords_cached;
    OperationCount cost_phi;     // cost(phi)
    OperationCount cost_upsilon; // sum of cost(upsilon_k) plus their chain products
    OperationCount product;      // the single phi * Upsilon multiplication
};

// phi is a single-variable expression (evaluated at rho); each upsilon_k is a
// single-variable expression (evaluated at Omega_k). Requires exactly
// N*D - 1 upsilons.
SeparableEval eval_separable(const Expr& phi, const std::vector<Expr>& upsilons,
                             const SystemGeometry& g);

// Symbolic counterparts used to assemble full configuration-space
// expressions: rho and Omega_k written in the x_j_d grammar, and the
// composition phi(rho(x)) * prod_k upsilon_k(Omega_k(x)). The final angle
// uses the principal arccos value (no sign fold, which is not expressible as
// a single expression).
Expr rho_expression(int n_particles, int dim);
Expr angle_expression(int k, int n_particles, int dim);
Expr compose_separable(const Expr& phi, const std::vector<Expr>& upsilons, int n_particles,
                       int dim);

}  // namespace spinv

#endif
