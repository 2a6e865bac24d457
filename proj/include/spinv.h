/* spinv: solver/verifier complexity toolkit for Ising spin systems.
 *
 * C API over the C++ core. All functions return a spinv_status; on failure
 * spinv_last_error() describes the problem (thread-local). Objects are
 * opaque handles released with their matching *_free function. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with spinv_string_free.
 */

#ifndef SPINV_H
#define SPINV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spinv_status {
    SPINV_OK = 0,
    SPINV_ERR_VALIDATION = 1, /* bad input, bad dimensions, parse failures */
    SPINV_ERR_CAP = 2,        /* request exceeds an enumeration/size cap */
    SPINV_ERR_IO = 3,
    SPINV_ERR_INTERNAL = 4
} spinv_status;

typedef struct spinv_ising spinv_ising;
typedef struct spinv_cnf spinv_cnf;
typedef struct spinv_cert spinv_cert;
typedef struct spinv_hamiltonian spinv_hamiltonian;
typedef struct spinv_expr spinv_expr;
typedef struct spinv_records spinv_records;

const char* spinv_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* spinv_last_error(void);
void spinv_string_free(char* s);

/* ---------------------------------------------------------------- Ising */

/* Schema: {"n", "mu", "couplings": [[j,k,J],...], "fields": [[j,h],...],
 * "offset"} */
spinv_status spinv_ising_from_json(const char* json_text, spinv_ising** out);
spinv_status spinv_ising_to_json(const spinv_ising* inst, char** out_json);
void spinv_ising_free(spinv_ising* inst);
int spinv_ising_n(const spinv_ising* inst);

/* spins: n entries, each exactly -1 or +1 */
spinv_status spinv_ising_energy(const spinv_ising* inst, const int8_t* spins, size_t n,
                                double* out_energy);

/* Parses "+-+", "+1,-1,+1" or "1,-1,1" into spin values. */
spinv_status spinv_parse_spins(const char* text, int8_t* out_spins, size_t buffer_len,
                               size_t* out_count);

/* Exhaustive ground-state scan over 2^n configurations. cap <= 0 selects the
 * default (30); num_threads: 0 or 1 runs serially, > 1 partitions the scan,
 * < 0 uses all hardware threads. out_spins must hold n entries. */
spinv_status spinv_ising_ground(const spinv_ising* inst, int cap, int num_threads,
                                int8_t* out_spins, double* out_energy, uint64_t* out_degeneracy);
spinv_status spinv_ising_has_zero_ground(const spinv_ising* inst, double tol, int cap,
                                         int* out_result);

/* ------------------------------------------------------------------ SAT */

spinv_status spinv_cnf_parse_dimacs(const char* dimacs_text, spinv_cnf** out);
void spinv_cnf_free(spinv_cnf* formula);
int spinv_cnf_num_vars(const spinv_cnf* formula);
int spinv_cnf_num_clauses(const spinv_cnf* formula);
int spinv_cnf_dropped_tautologies(const spinv_cnf* formula);
/* Warning attached by the parser (clause-count mismatch), or NULL. */
spinv_status spinv_cnf_warnings(const spinv_cnf* formula, char** out_text);

spinv_status spinv_reduce_3sat(const spinv_cnf* formula, spinv_ising** out_instance,
                               spinv_cert** out_certificate);
void spinv_cert_free(spinv_cert* cert);
/* Schema: {"var_to_spin": {...}, "ancilla_spins": [...], "offset",
 * "penalty_weight"} */
spinv_status spinv_cert_to_json(const spinv_cert* cert, char** out_json);
/* out_assignment: one byte per variable 1..num_vars (0/1), length num_vars */
spinv_status spinv_decode(const spinv_cert* cert, const int8_t* spins, size_t n,
                          uint8_t* out_assignment, size_t assignment_len);
spinv_status spinv_spin_count_bound(const spinv_cnf* formula, int* out_spins, int* out_bound_ok);

/* -------------------------------------------------------------- quantum */

spinv_status spinv_quantize(const spinv_ising* inst, spinv_hamiltonian** out);
/* Schema: {"n", "terms": [[coeff, "IZX..."], ...]}, factor string site 0
 * first. */
spinv_status spinv_hamiltonian_from_json(const char* json_text, spinv_hamiltonian** out);
spinv_status spinv_hamiltonian_to_json(const spinv_hamiltonian* h, char** out_json);
void spinv_hamiltonian_free(spinv_hamiltonian* h);
spinv_status spinv_compose(const spinv_hamiltonian* h, const spinv_hamiltonian* h_int,
                           spinv_hamiltonian** out);

/* Number of eigenvalues (2^n). */
spinv_status spinv_eigen_count(const spinv_hamiltonian* h, uint64_t* out_count);
/* Full sorted spectrum. Diagonal specs are scanned (cap diag_cap, <=0 for
 * default 30); others are solved densely (cap dense_cap, <=0 for default
 * 10). out_eigenvalues may be NULL to fetch only the ground energy; if
 * non-NULL it must hold 2^n doubles. out_method: 0 = diagonal scan,
 * 1 = dense. */
spinv_status spinv_ground_eigen(const spinv_hamiltonian* h, int diag_cap, int dense_cap,
                                double* out_eigenvalues, uint64_t eigenvalues_len,
                                double* out_ground_energy, int* out_method);

/* --------------------------------------------------- expressions/verify */

spinv_status spinv_expr_parse(const char* text, int n, int d, spinv_expr** out);
void spinv_expr_free(spinv_expr* e);
spinv_status spinv_expr_print(const spinv_expr* e, char** out_text);
spinv_status spinv_expr_differentiate(const spinv_expr* e, int j, int d, spinv_expr** out);
spinv_status spinv_expr_laplacian(const spinv_expr* e, int j, spinv_expr** out);
spinv_status spinv_expr_count_ops(const spinv_expr* e, int64_t* out_counted, int64_t* out_free);
/* point: n*d values, x_j_d at index j*d_total + d */
spinv_status spinv_expr_eval(const spinv_expr* e, const double* point, size_t len,
                             double* out_value);

/* Task schema: {"n", "d", "prefactor", "potential", "psi", "energy", "tol",
 * "samples", "box": [lo, hi], "seed"}. Returns the report JSON
 * {"accepted", "max_residual", "samples", "counted", "free", "tolerance"}. */
spinv_status spinv_verify_wave_json(const char* task_json, char** out_report_json);
spinv_status spinv_verify_spin(const spinv_ising* inst, const int8_t* spins, size_t n, double tol,
                               int* out_accepted, char** out_report_json);

/* ---------------------------------------------------------------- bench */

/* family: "random-ising", "sat-reduced" or "diagonal-quantized". */
spinv_status spinv_bench_run(const char* family, const int* n_values, size_t n_count,
                             int repetitions, uint64_t seed, int parallel, spinv_records** out);
void spinv_records_free(spinv_records* records);
size_t spinv_records_count(const spinv_records* records);
/* Writes the CSV ("n,solve_ns,verify_ns,counted_ops,instance_id") plus a
 * .json sidecar carrying exponential/polynomial fits. */
spinv_status spinv_bench_emit(const spinv_records* records, const char* csv_path);
spinv_status spinv_records_from_csv_file(const char* csv_path, spinv_records** out);
/* Fits of solve time (exponential, polynomial) and verify counted ops
 * (polynomial), as JSON. */
spinv_status spinv_fit_json(const spinv_records* records, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINV_H */
