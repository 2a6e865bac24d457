#include "hyper.hpp"

#include <cmath>

#include "errors.hpp"

namespace spinv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SystemGeometry make_geometry(int n_particles, int dim, std::vector<double> positions) {
    if (n_particles < 1 || dim < 1)
        throw validation_error("geometry requires N >= 1 and D >= 1");
    if (positions.size() != static_cast<std::size_t>(n_particles) * static_cast<std::size_t>(dim))
        throw dimension_error("expected " + std::to_string(n_particles * dim) +
                              " position components, got " + std::to_string(positions.size()));
    for (double v : positions)
        if (!std::isfinite(v)) throw validation_error("positions must be finite");
    return SystemGeometry{n_particles, dim, std::move(positions)};
}

HyperRadius hyperradius(const SystemGeometry& g) {
    HyperRadius out;
    double sum = 0.0;
    for (double v : g.positions) sum += v * v;
    out.value = std::sqrt(sum);
    const std::int64_t m = static_cast<std::int64_t>(g.positions.size());
    out.count.counted = m + 1;          // m squarings + 1 sqrt
    out.count.free = m > 0 ? m - 1 : 0; // additions
    return out;
}

HyperAngles hyperangles(const SystemGeometry& g) {
    const std::size_t m = g.positions.size();
    HyperAngles out;
    if (m < 2) return out;

    // suffix norms s_k = sqrt(y_k^2 + ... + y_{M-1}^2), computed once
    std::vector<double> suffix(m);
    double acc = 0.0;
    for (std::size_t i = m; i-- > 0;) {
        acc += g.positions[i] * g.positions[i];
        suffix[i] = std::sqrt(acc);
    }

    out.angles.resize(m - 1);
    out.degenerate.assign(m - 1, false);
    for (std::size_t k = 0; k < m - 1; ++k) {
        if (suffix[k] == 0.0) {
            out.angles[k] = 0.0;
            out.degenerate[k] = true;
            continue;
        }
        double ratio = g.positions[k] / suffix[k];
        ratio = std::fmin(1.0, std::fmax(-1.0, ratio));
        double a = std::acos(ratio);
        if (k == m - 2 && g.positions[m - 1] < 0.0) a = 2.0 * kPi - a;
        out.angles[k] = a;
    }

    // structural counts; the naive variant recomputes each suffix norm
    const std::int64_t mm = static_cast<std::int64_t>(m);
    for (std::int64_t k = 0; k < mm - 1; ++k) {
        const std::int64_t len = mm - k;      // components under the suffix norm
        out.naive.counted += len + 1 + 2;     // squarings + sqrt + division + arccos
        out.naive.free += len - 1;            // additions
    }
    out.naive.free += 1;                      // final-angle sign fold (2*pi - a)
    out.cached.counted = mm                   // squarings
                         + (mm - 1)           // sqrts actually used
                         + 2 * (mm - 1);      // division + arccos per angle
    out.cached.free = (mm - 1) + 1;           // additions + sign fold
    return out;
}

std::vector<double> positions_from_hyperspherical(double rho, const std::vector<double>& angles) {
    const std::size_t m = angles.size() + 1;
    std::vector<double> y(m);
    double sine_product = rho;
    for (std::size_t k = 0; k < angles.size(); ++k) {
        y[k] = sine_product * std::cos(angles[k]);
        sine_product *= std::sin(angles[k]);
    }
    y[m - 1] = sine_product;
    return y;
}

SeparableEval eval_separable(const Expr& phi, const std::vector<Expr>& upsilons,
                             const SystemGeometry& g) {
    if (phi.n != 1 || phi.d != 1)
        throw validation_error("phi must be a single-variable expression (N=1, D=1)");
    for (const auto& u : upsilons)
        if (u.n != 1 || u.d != 1)
            throw validation_error("each upsilon must be a single-variable expression");
    const std::size_t m = g.positions.size();
    if (upsilons.size() + 1 != m)
        throw dimension_error("expected " + std::to_string(m - 1) + " angular factors, got " +
                              std::to_string(upsilons.size()));

    SeparableEval out;
    HyperRadius hr = hyperradius(g);
    HyperAngles ha = hyperangles(g);
    out.rho = hr.value;
    out.angles = ha.angles;
    out.degenerate = ha.degenerate;
    out.coords_naive = hr.count + ha.naive;
    out.coords_cached = hr.count + ha.cached;

    const double phi_value = eval(phi, {hr.value});
    out.cost_phi = count_ops(phi);

    // Upsilon = prod_k upsilon_k(Omega_k), chained in index order
    double upsilon_value = 1.0;
    bool upsilon_depends = false;
    bool first = true;
    for (std::size_t k = 0; k < upsilons.size(); ++k) {
        const double uk = eval(upsilons[k], {ha.angles[k]});
        out.cost_upsilon += count_ops(upsilons[k]);
        const bool uk_depends = upsilons[k].root->depends;
        if (first) {
            upsilon_value = uk;
            upsilon_depends = uk_depends;
            first = false;
        } else {
            if (upsilon_depends && uk_depends)
                out.cost_upsilon.counted += 1;
            else
                out.cost_upsilon.free += 1;
            upsilon_value *= uk;
            upsilon_depends = upsilon_depends || uk_depends;
        }
    }

    if (!first) {
        if (phi.root->depends && upsilon_depends)
            out.product.counted = 1;
        else
            out.product.free = 1;
        out.value = phi_value * upsilon_value;
    } else {
        out.value = phi_value;
    }

    out.total = out.coords_cached + out.cost_phi + out.cost_upsilon + out.product;
    return out;
}

Expr rho_expression(int n_particles, int dim) {
    NodePtr sum = make_const(0.0);
    for (int j = 0; j < n_particles; ++j)
        for (int d = 0; d < dim; ++d) sum = make_add(std::move(sum), make_pow(make_var(j, d), 2));
    return Expr{make_func(Elementary::sqrt, std::move(sum)), n_particles, dim};
}

Expr angle_expression(int k, int n_particles, int dim) {
    const int m = n_particles * dim;
    if (k < 0 || k >= m - 1) throw validation_error("angle index out of range");
    NodePtr sum = make_const(0.0);
    for (int i = k; i < m; ++i) sum = make_add(std::move(sum), make_pow(make_var(i / dim, i % dim), 2));
    NodePtr suffix_norm = make_func(Elementary::sqrt, std::move(sum));
    NodePtr yk = make_var(k / dim, k % dim);
    return Expr{make_func(Elementary::arccos, make_div(std::move(yk), std::move(suffix_norm))),
                n_particles, dim};
}

Expr compose_separable(const Expr& phi, const std::vector<Expr>& upsilons, int n_particles,
                       int dim) {
    if (phi.n != 1 || phi.d != 1)
        throw validation_error("phi must be a single-variable expression (N=1, D=1)");
    const int m = n_particles * dim;
    if (static_cast<int>(upsilons.size()) + 1 != m)
        throw dimension_error("expected " + std::to_string(m - 1) + " angular factors, got " +
                              std::to_string(upsilons.size()));

    NodePtr result = substitute(phi.root, 0, 0, rho_expression(n_particles, dim).root);
    for (std::size_t k = 0; k < upsilons.size(); ++k) {
        if (upsilons[k].n != 1 || upsilons[k].d != 1)
            throw validation_error("each upsilon must be a single-variable expression");
        NodePtr uk = substitute(upsilons[k].root, 0, 0,
                                angle_expression(static_cast<int>(k), n_particles, dim).root);
        result = make_mul(std::move(result), std::move(uk));
    }
    return Expr{std::move(result), n_particles, dim};
}

}  // namespace spinv
