#include "spinv.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "bench.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "ising.hpp"
#include "json_io.hpp"
#include "pauli.hpp"
#include "sat.hpp"
#include "verify.hpp"

// Opaque handle definitions: thin owning wrappers around the core types.

struct spinv_ising {
    spinv::IsingInstance value;
};
struct spinv_cnf {
    spinv::CnfFormula value;
};
struct spinv_cert {
    spinv::ReductionCertificate value;
};
struct spinv_hamiltonian {
    spinv::HamiltonianSpec value;
};
struct spinv_expr {
    spinv::Expr value;
};
struct spinv_records {
    std::vector<spinv::BenchRecord> value;
};

namespace {

thread_local std::string g_last_error;

spinv_status fail(spinv_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Runs fn, translating the core exception taxonomy onto status codes.
template <typename F>
spinv_status guarded(F&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SPINV_OK;
    } catch (const spinv::cap_error& e) {
        return fail(SPINV_ERR_CAP, e.what());
    } catch (const spinv::io_error& e) {
        return fail(SPINV_ERR_IO, e.what());
    } catch (const spinv::validation_error& e) {
        return fail(SPINV_ERR_VALIDATION, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(SPINV_ERR_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SPINV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SPINV_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

spinv::SpinConfiguration to_config(const int8_t* spins, size_t n) {
    if (!spins) throw spinv::validation_error("spins pointer is null");
    return spinv::SpinConfiguration(spins, spins + n);
}

}  // namespace

extern "C" {

const char* spinv_version(void) { return "0.1.0"; }

const char* spinv_last_error(void) { return g_last_error.c_str(); }

void spinv_string_free(char* s) { delete[] s; }

/* ---------------------------------------------------------------- Ising */

spinv_status spinv_ising_from_json(const char* json_text, spinv_ising** out) {
    return guarded([&] {
        if (!json_text || !out) throw spinv::validation_error("null argument");
        *out = new spinv_ising{spinv::ising_from_json(json_text)};
    });
}

spinv_status spinv_ising_to_json(const spinv_ising* inst, char** out_json) {
    return guarded([&] {
        if (!inst || !out_json) throw spinv::validation_error("null argument");
        *out_json = dup_string(spinv::ising_to_json(inst->value));
    });
}

void spinv_ising_free(spinv_ising* inst) { delete inst; }

int spinv_ising_n(const spinv_ising* inst) { return inst ? inst->value.n() : -1; }

spinv_status spinv_ising_energy(const spinv_ising* inst, const int8_t* spins, size_t n,
                                double* out_energy) {
    return guarded([&] {
        if (!inst || !out_energy) throw spinv::validation_error("null argument");
        *out_energy = spinv::energy(inst->value, to_config(spins, n));
    });
}

spinv_status spinv_parse_spins(const char* text, int8_t* out_spins, size_t buffer_len,
                               size_t* out_count) {
    return guarded([&] {
        if (!text || !out_spins || !out_count) throw spinv::validation_error("null argument");
        const auto config = spinv::parse_spin_text(text);
        if (config.size() > buffer_len) throw spinv::validation_error("spin buffer too small");
        std::memcpy(out_spins, config.data(), config.size());
        *out_count = config.size();
    });
}

spinv_status spinv_ising_ground(const spinv_ising* inst, int cap, int num_threads,
                                int8_t* out_spins, double* out_energy, uint64_t* out_degeneracy) {
    return guarded([&] {
        if (!inst) throw spinv::validation_error("null argument");
        spinv::BruteForceOptions opts;
        if (cap > 0) opts.cap = cap;
        if (num_threads > 1 || num_threads < 0) opts.num_threads = num_threads;
        const auto result = spinv::brute_force_ground(inst->value, opts);
        if (out_spins && !result.config.empty())
            std::memcpy(out_spins, result.config.data(), result.config.size());
        if (out_energy) *out_energy = result.energy;
        if (out_degeneracy) *out_degeneracy = result.degeneracy;
    });
}

spinv_status spinv_ising_has_zero_ground(const spinv_ising* inst, double tol, int cap,
                                         int* out_result) {
    return guarded([&] {
        if (!inst || !out_result) throw spinv::validation_error("null argument");
        spinv::BruteForceOptions opts;
        if (cap > 0) opts.cap = cap;
        *out_result = spinv::has_zero_ground(inst->value, tol, opts) ? 1 : 0;
    });
}

/* ------------------------------------------------------------------ SAT */

spinv_status spinv_cnf_parse_dimacs(const char* dimacs_text, spinv_cnf** out) {
    return guarded([&] {
        if (!dimacs_text || !out) throw spinv::validation_error("null argument");
        *out = new spinv_cnf{spinv::parse_dimacs(dimacs_text)};
    });
}

void spinv_cnf_free(spinv_cnf* formula) { delete formula; }

int spinv_cnf_num_vars(const spinv_cnf* formula) { return formula ? formula->value.num_vars : -1; }

int spinv_cnf_num_clauses(const spinv_cnf* formula) {
    return formula ? static_cast<int>(formula->value.clauses.size()) : -1;
}

int spinv_cnf_dropped_tautologies(const spinv_cnf* formula) {
    return formula ? formula->value.dropped_tautologies : -1;
}

spinv_status spinv_cnf_warnings(const spinv_cnf* formula, char** out_text) {
    return guarded([&] {
        if (!formula || !out_text) throw spinv::validation_error("null argument");
        if (formula->value.warnings.empty()) {
            *out_text = nullptr;
            return;
        }
        std::string joined;
        for (const auto& w : formula->value.warnings) {
            if (!joined.empty()) joined += '\n';
            joined += w;
        }
        *out_text = dup_string(joined);
    });
}

spinv_status spinv_reduce_3sat(const spinv_cnf* formula, spinv_ising** out_instance,
                               spinv_cert** out_certificate) {
    return guarded([&] {
        if (!formula || !out_instance) throw spinv::validation_error("null argument");
        auto red = spinv::reduce_3sat(formula->value);
        *out_instance = new spinv_ising{std::move(red.instance)};
        if (out_certificate) *out_certificate = new spinv_cert{std::move(red.certificate)};
    });
}

void spinv_cert_free(spinv_cert* cert) { delete cert; }

spinv_status spinv_cert_to_json(const spinv_cert* cert, char** out_json) {
    return guarded([&] {
        if (!cert || !out_json) throw spinv::validation_error("null argument");
        *out_json = dup_string(spinv::certificate_to_json(cert->value));
    });
}

spinv_status spinv_decode(const spinv_cert* cert, const int8_t* spins, size_t n,
                          uint8_t* out_assignment, size_t assignment_len) {
    return guarded([&] {
        if (!cert || !out_assignment) throw spinv::validation_error("null argument");
        const auto assignment = spinv::decode(cert->value, to_config(spins, n));
        if (assignment_len < assignment.size())
            throw spinv::validation_error("assignment buffer too small");
        for (const auto& [var, value] : assignment)
            out_assignment[var - 1] = value ? 1 : 0;
    });
}

spinv_status spinv_spin_count_bound(const spinv_cnf* formula, int* out_spins, int* out_bound_ok) {
    return guarded([&] {
        if (!formula) throw spinv::validation_error("null argument");
        const auto bound = spinv::spin_count_bound(formula->value);
        if (out_spins) *out_spins = bound.spins;
        if (out_bound_ok) *out_bound_ok = bound.bound_ok ? 1 : 0;
    });
}

/* -------------------------------------------------------------- quantum */

spinv_status spinv_quantize(const spinv_ising* inst, spinv_hamiltonian** out) {
    return guarded([&] {
        if (!inst || !out) throw spinv::validation_error("null argument");
        *out = new spinv_hamiltonian{spinv::quantize_ising(inst->value)};
    });
}

spinv_status spinv_hamiltonian_from_json(const char* json_text, spinv_hamiltonian** out) {
    return guarded([&] {
        if (!json_text || !out) throw spinv::validation_error("null argument");
        *out = new spinv_hamiltonian{spinv::hamiltonian_from_json(json_text)};
    });
}

spinv_status spinv_hamiltonian_to_json(const spinv_hamiltonian* h, char** out_json) {
    return guarded([&] {
        if (!h || !out_json) throw spinv::validation_error("null argument");
        *out_json = dup_string(spinv::hamiltonian_to_json(h->value));
    });
}

void spinv_hamiltonian_free(spinv_hamiltonian* h) { delete h; }

spinv_status spinv_compose(const spinv_hamiltonian* h, const spinv_hamiltonian* h_int,
                           spinv_hamiltonian** out) {
    return guarded([&] {
        if (!h || !h_int || !out) throw spinv::validation_error("null argument");
        *out = new spinv_hamiltonian{spinv::compose(h->value, h_int->value)};
    });
}

spinv_status spinv_eigen_count(const spinv_hamiltonian* h, uint64_t* out_count) {
    return guarded([&] {
        if (!h || !out_count) throw spinv::validation_error("null argument");
        if (h->value.n >= 64) throw spinv::cap_error("2^n does not fit in 64 bits");
        *out_count = uint64_t{1} << h->value.n;
    });
}

spinv_status spinv_ground_eigen(const spinv_hamiltonian* h, int diag_cap, int dense_cap,
                                double* out_eigenvalues, uint64_t eigenvalues_len,
                                double* out_ground_energy, int* out_method) {
    return guarded([&] {
        if (!h) throw spinv::validation_error("null argument");
        spinv::EigenCaps caps;
        if (diag_cap > 0) caps.diagonal_cap = diag_cap;
        if (dense_cap > 0) caps.dense_cap = dense_cap;
        const auto result = spinv::ground_eigen(h->value, caps);
        if (out_eigenvalues) {
            if (eigenvalues_len < result.eigenvalues.size())
                throw spinv::validation_error("eigenvalue buffer too small");
            std::memcpy(out_eigenvalues, result.eigenvalues.data(),
                        result.eigenvalues.size() * sizeof(double));
        }
        if (out_ground_energy) *out_ground_energy = result.ground_energy();
        if (out_method)
            *out_method = result.method == spinv::SpectrumMethod::diagonal_scan ? 0 : 1;
    });
}

/* --------------------------------------------------- expressions/verify */

spinv_status spinv_expr_parse(const char* text, int n, int d, spinv_expr** out) {
    return guarded([&] {
        if (!text || !out) throw spinv::validation_error("null argument");
        *out = new spinv_expr{spinv::parse_expr(text, n, d)};
    });
}

void spinv_expr_free(spinv_expr* e) { delete e; }

spinv_status spinv_expr_print(const spinv_expr* e, char** out_text) {
    return guarded([&] {
        if (!e || !out_text) throw spinv::validation_error("null argument");
        *out_text = dup_string(spinv::print_expr(e->value));
    });
}

spinv_status spinv_expr_differentiate(const spinv_expr* e, int j, int d, spinv_expr** out) {
    return guarded([&] {
        if (!e || !out) throw spinv::validation_error("null argument");
        *out = new spinv_expr{spinv::differentiate(e->value, j, d)};
    });
}

spinv_status spinv_expr_laplacian(const spinv_expr* e, int j, spinv_expr** out) {
    return guarded([&] {
        if (!e || !out) throw spinv::validation_error("null argument");
        *out = new spinv_expr{spinv::laplacian(e->value, j)};
    });
}

spinv_status spinv_expr_count_ops(const spinv_expr* e, int64_t* out_counted, int64_t* out_free) {
    return guarded([&] {
        if (!e) throw spinv::validation_error("null argument");
        const auto count = spinv::count_ops(e->value);
        if (out_counted) *out_counted = count.counted;
        if (out_free) *out_free = count.free;
    });
}

spinv_status spinv_expr_eval(const spinv_expr* e, const double* point, size_t len,
                             double* out_value) {
    return guarded([&] {
        if (!e || !point || !out_value) throw spinv::validation_error("null argument");
        *out_value = spinv::eval(e->value, std::vector<double>(point, point + len));
    });
}

spinv_status spinv_verify_wave_json(const char* task_json, char** out_report_json) {
    return guarded([&] {
        if (!task_json || !out_report_json) throw spinv::validation_error("null argument");
        nlohmann::json task = nlohmann::json::parse(task_json, nullptr, false);
        if (task.is_discarded()) throw spinv::parse_error("malformed task JSON", 0);

        const int n = task.value("n", 1);
        const int d = task.value("d", 1);
        spinv::SchrodingerOp op{task.value("prefactor", -0.5),
                                spinv::parse_expr(task.at("potential").get<std::string>(), n, d)};
        const spinv::Expr psi = spinv::parse_expr(task.at("psi").get<std::string>(), n, d);
        const double energy = task.value("energy", 0.0);
        const double tol = task.value("tol", 1e-8);
        const int count = task.value("samples", 50);
        double lo = -3.0, hi = 3.0;
        if (task.contains("box")) {
            lo = task["box"].at(0).get<double>();
            hi = task["box"].at(1).get<double>();
        }
        const auto seed = task.value("seed", std::uint64_t{1});
        const auto samples = spinv::sample_box(n, d, count, lo, hi, seed);
        const auto report = spinv::verify_wavefunction(op, psi, energy, samples, tol);
        *out_report_json = dup_string(spinv::report_to_json(report));
    });
}

spinv_status spinv_verify_spin(const spinv_ising* inst, const int8_t* spins, size_t n, double tol,
                               int* out_accepted, char** out_report_json) {
    return guarded([&] {
        if (!inst) throw spinv::validation_error("null argument");
        const auto report = spinv::verify_spin_solution(inst->value, to_config(spins, n), tol);
        if (out_accepted) *out_accepted = report.accepted ? 1 : 0;
        if (out_report_json) *out_report_json = dup_string(spinv::report_to_json(report));
    });
}

/* ---------------------------------------------------------------- bench */

spinv_status spinv_bench_run(const char* family, const int* n_values, size_t n_count,
                             int repetitions, uint64_t seed, int parallel, spinv_records** out) {
    return guarded([&] {
        if (!family || !n_values || !out) throw spinv::validation_error("null argument");
        spinv::BenchSuite suite;
        suite.family = spinv::bench_family_from_name(family);
        suite.n_values.assign(n_values, n_values + n_count);
        suite.repetitions = repetitions;
        suite.seed = seed;
        suite.parallel = parallel != 0;
        *out = new spinv_records{spinv::run_scaling(suite)};
    });
}

void spinv_records_free(spinv_records* records) { delete records; }

size_t spinv_records_count(const spinv_records* records) {
    return records ? records->value.size() : 0;
}

spinv_status spinv_bench_emit(const spinv_records* records, const char* csv_path) {
    return guarded([&] {
        if (!records || !csv_path) throw spinv::validation_error("null argument");
        std::vector<spinv::FitResult> fits;
        if (records->value.size() >= 4) {
            fits.push_back(spinv::fit_exponential(records->value));
            fits.push_back(spinv::fit_polynomial(records->value));
            fits.push_back(
                spinv::fit_polynomial(records->value, spinv::BenchSeries::counted_ops));
        }
        spinv::emit_report(records->value, fits, csv_path);
    });
}

spinv_status spinv_records_from_csv_file(const char* csv_path, spinv_records** out) {
    return guarded([&] {
        if (!csv_path || !out) throw spinv::validation_error("null argument");
        *out = new spinv_records{spinv::parse_report_csv(spinv::read_file(csv_path))};
    });
}

spinv_status spinv_fit_json(const spinv_records* records, char** out_json) {
    return guarded([&] {
        if (!records || !out_json) throw spinv::validation_error("null argument");
        std::vector<spinv::FitResult> fits;
        fits.push_back(spinv::fit_exponential(records->value));
        fits.push_back(spinv::fit_polynomial(records->value));
        fits.push_back(spinv::fit_polynomial(records->value, spinv::BenchSeries::counted_ops));
        *out_json = dup_string(spinv::fits_json(fits));
    });
}

} /* extern "C" */
