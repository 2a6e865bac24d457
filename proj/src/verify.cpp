#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace spinv {

VerificationReport verify_wavefunction(const SchrodingerOp& op, const Expr& psi, double energy,
                                       const std::vector<SystemGeometry>& samples, double tol) {
    if (op.kinetic_prefactor == 0.0) throw validation_error("kinetic prefactor must be nonzero");
    if (samples.empty()) throw validation_error("sample list is empty");
    if (tol < 0) throw validation_error("tolerance must be >= 0");
    if (op.potential.n != psi.n || op.potential.d != psi.d)
        throw dimension_error("potential and psi disagree on (N, D)");

    // residual expression: prefactor * sum_j lap_j(psi) + (V - E) * psi
    NodePtr lap_sum = make_const(0.0);
    for (int j = 0; j < psi.n; ++j) lap_sum = make_add(std::move(lap_sum), laplacian(psi, j).root);
    NodePtr residual_root =
        make_add(make_mul(make_const(op.kinetic_prefactor), std::move(lap_sum)),
                 make_mul(make_sub(op.potential.root, make_const(energy)), psi.root));
    const Expr residual{std::move(residual_root), psi.n, psi.d};
    const OperationCount per_sample = count_ops(residual);

    VerificationReport report;
    report.tolerance = tol;
    for (const auto& g : samples) {
        if (g.n_particles != psi.n || g.dim != psi.d)
            throw dimension_error("sample geometry disagrees with psi (N, D)");
        const double r = eval(residual, g.positions);
        const double psi_value = eval(psi, g.positions);
        const double potential_value = eval(op.potential, g.positions);
        if (!std::isfinite(r) || !std::isfinite(psi_value) || !std::isfinite(potential_value)) {
            ++report.skipped;
            continue;
        }
        const double scale =
            std::max(1.0, std::abs(psi_value) * (1.0 + std::abs(potential_value - energy)));
        report.max_residual = std::max(report.max_residual, std::abs(r) / scale);
        ++report.sample_count;
        report.counted_ops += per_sample;
    }
    if (report.sample_count == 0) throw validation_error("all samples were singular");
    const double evaluable =
        static_cast<double>(report.sample_count) /
        static_cast<double>(report.sample_count + report.skipped);
    report.accepted = report.max_residual <= tol && evaluable >= 0.8;
    return report;
}

VerificationReport verify_spin_solution(const IsingInstance& instance,
                                        const SpinConfiguration& config, double tol) {
    if (tol < 0) throw validation_error("tolerance must be >= 0");
    const double e = energy(instance, config);  // throws dimension_error on length mismatch

    VerificationReport report;
    report.tolerance = tol;
    report.max_residual = std::abs(e);
    report.sample_count = 1;
    report.accepted = report.max_residual <= tol;

    // structural tally: sigma*sigma products are the only variable-dependent
    // multiplications; everything touching J, h, mu or the offset is scalar
    const auto c = static_cast<std::int64_t>(instance.couplings().size());
    const auto f = static_cast<std::int64_t>(instance.fields().size());
    report.counted_ops.counted = c;
    report.counted_ops.free = c + (c > 0 ? c - 1 : 0) + f + (f > 0 ? f - 1 : 0) + 1 + 2;
    return report;
}

CoupledReport verify_coupled(const SchrodingerOp& op, const IsingInstance& h_spin,
                             const CoupledCandidate& candidate,
                             const std::vector<SystemGeometry>& samples, double tol) {
    if (samples.empty()) throw validation_error("sample list is empty");
    const int n_particles = samples.front().n_particles;
    const int dim = samples.front().dim;
    const Expr psi = compose_separable(candidate.phi, candidate.upsilons, n_particles, dim);

    CoupledReport report;
    // decomposition: the spin sector must sit at zero, so the spatial sector
    // carries the whole claim
    report.spatial = verify_wavefunction(op, psi, candidate.energy_claim, samples, tol);
    report.spin = verify_spin_solution(h_spin, candidate.spin, tol);

    report.combined.accepted = report.spatial.accepted && report.spin.accepted;
    report.combined.max_residual = std::max(report.spatial.max_residual, report.spin.max_residual);
    report.combined.sample_count = report.spatial.sample_count + report.spin.sample_count;
    report.combined.skipped = report.spatial.skipped;
    report.combined.counted_ops = report.spatial.counted_ops + report.spin.counted_ops;
    report.combined.tolerance = tol;
    return report;
}

ScalingFit poly_scaling_audit(const std::function<std::int64_t(int)>& counted_ops_of_n,
                              const std::vector<int>& n_values) {
    if (n_values.size() < 2) throw validation_error("scaling audit needs at least 2 N values");
    std::vector<double> xs, ys;
    for (int n : n_values) {
        if (n < 1) throw validation_error("N values must be >= 1");
        const std::int64_t ops = counted_ops_of_n(n);
        if (ops <= 0) throw validation_error("audit family returned a nonpositive op count");
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(ops)));
    }
    const std::size_t m = xs.size();
    double mean_x = 0, mean_y = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        syy += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    if (sxx == 0.0) throw validation_error("degenerate fit: all N values equal");

    ScalingFit fit;
    fit.degree = sxy / sxx;
    fit.amplitude = std::exp(mean_y - fit.degree * mean_x);
    if (syy == 0.0) {
        fit.r_squared = 1.0;  // constant data, perfectly explained by slope 0
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double pred = mean_y + fit.degree * (xs[i] - mean_x);
            ss_res += (ys[i] - pred) * (ys[i] - pred);
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

namespace {

Expr gaussian_phi() { return parse_expr("exp(-(x_0_0^2)/2)", 1, 1); }

std::int64_t laplacian_gaussian_counted(int n) {
    std::vector<Expr> ups(static_cast<std::size_t>(n - 1),
                          Expr{make_const(1.0), 1, 1});
    const Expr psi = compose_separable(gaussian_phi(), ups, n, 1);
    std::int64_t total = 0;
    for (int j = 0; j < n; ++j) total += count_ops(laplacian(psi, j)).counted;
    return total;
}

std::int64_t separable_eval_counted(int n) {
    std::vector<Expr> ups(static_cast<std::size_t>(n - 1), Expr{make_const(1.0), 1, 1});
    std::vector<double> pos(static_cast<std::size_t>(n), 0.5);
    const SystemGeometry g = make_geometry(n, 1, std::move(pos));
    return eval_separable(gaussian_phi(), ups, g).total.counted;
}

}  // namespace

std::function<std::int64_t(int)> audit_family(const std::string& name) {
    if (name == "hyperradius") {
        return [](int n) {
            std::vector<double> pos(static_cast<std::size_t>(n), 1.0);
            return hyperradius(make_geometry(n, 1, std::move(pos))).count.counted;
        };
    }
    if (name == "laplacian-gaussian") return laplacian_gaussian_counted;
    if (name == "separable-eval") return separable_eval_counted;
    if (name == "constant") {
        return [](int) { return std::int64_t{7}; };
    }
    throw validation_error("unknown audit family '" + name + "'");
}

std::vector<SystemGeometry> sample_box(int n_particles, int dim, int count, double lo, double hi,
                                       std::uint64_t seed) {
    if (count < 1) throw validation_error("sample count must be >= 1");
    if (!(lo < hi)) throw validation_error("sample box requires lo < hi");
    std::mt19937_64 rng(seed);
    std::vector<SystemGeometry> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        std::vector<double> pos(static_cast<std::size_t>(n_particles) * static_cast<std::size_t>(dim));
        for (double& v : pos) {
            // top 53 bits -> [0,1); avoids distribution differences across stdlibs
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            v = lo + u * (hi - lo);
        }
        samples.push_back(make_geometry(n_particles, dim, std::move(pos)));
    }
    return samples;
}

}  // namespace spinv
