#ifndef SPINV_BENCH_HPP
#define SPINV_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ising.hpp"
#include "opcount.hpp"
#include "sat.hpp"

namespace spinv {

// Scaling laboratory: times the exact solvers against the matching
// verification as N grows, fits exponential/polynomial models, and emits
// plot-ready CSV plus a JSON sidecar with the fits.

struct BenchRecord {
    int n = 0;
    std::uint64_t solve_ns = 0;   // median over repetitions
    std::uint64_t verify_ns = 0;  // median over repetitions (batched when sub-microsecond)
    OperationCount counted_ops;   // verification tally, structural
    int repetitions = 0;
    std::string instance_id;
};

enum class BenchFamily { random_ising, sat_reduced, diagonal_quantized };

BenchFamily bench_family_from_name(const std::string& name);
std::string bench_family_name(BenchFamily family);

struct BenchSuite {
    BenchFamily family = BenchFamily::random_ising;
    std::vector<int> n_values;
    int repetitions = 3;
    std::uint64_t seed = 0;
    bool parallel = false;  // partitioned enumeration; excluded from c-fit acceptance
};

// Deterministic instance generators (identical for identical seed/n).
IsingInstance random_ising_instance(int n, std::uint64_t seed);
CnfFormula random_cnf(int num_vars, int num_clauses, int max_spins, std::uint64_t seed);
// Formula whose reduction has exactly `spins` spins.
CnfFormula sat_family_formula(int spins, std::uint64_t seed);

// Runs the suite: per n, one warm-up solve (excluded) then `repetitions`
// timed solve/verify rounds; records come back in ascending n.
std::vector<BenchRecord> run_scaling(const BenchSuite& suite);

enum class FitModel { exponential, polynomial };
enum class BenchSeries { solve_ns, verify_ns, counted_ops };

struct FitResult {
    FitModel model = FitModel::exponential;
    double amplitude = 0.0;  // a
    double rate = 0.0;       // c for exponential (time ~ a*c^N), k for polynomial (a*N^k)
    double r_squared = 0.0;
};

FitResult fit_exponential(const std::vector<BenchRecord>& records,
                          BenchSeries series = BenchSeries::solve_ns);
FitResult fit_polynomial(const std::vector<BenchRecord>& records,
                         BenchSeries series = BenchSeries::solve_ns);

// CSV with the exact header "n,solve_ns,verify_ns,counted_ops,instance_id";
// fits go to a JSON sidecar next to it (.csv replaced by .json). Byte-stable
// for identical inputs.
void emit_report(const std::vector<BenchRecord>& records, const std::vector<FitResult>& fits,
                 const std::string& csv_path);
std::string report_csv(const std::vector<BenchRecord>& records);
std::string fits_json(const std::vector<FitResult>& fits);
std::vector<BenchRecord> parse_report_csv(const std::string& csv_text);
std::string sidecar_path(const std::string& csv_path);

}  // namespace spinv

#endif
