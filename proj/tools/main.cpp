// spinv command-line tool. Built entirely on the C API (spinv.h): reduce
// 3-SAT to Ising, solve by brute force or diagonalization, verify candidate
// solutions, and run solve-vs-verify scaling benchmarks.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCap = 2;

int exit_code(spinv_status status) {
    switch (status) {
        case SPINV_OK: return kExitOk;
        case SPINV_ERR_CAP: return kExitCap;
        default: return kExitValidation;
    }
}

int report_failure(spinv_status status) {
    std::fprintf(stderr, "error: %s\n", spinv_last_error());
    return exit_code(status);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return bool(out);
}

struct StringDeleter {
    void operator()(char* s) const { spinv_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

std::string spin_string(const std::vector<int8_t>& spins) {
    std::string out;
    for (size_t i = 0; i < spins.size(); ++i) {
        if (i) out += ',';
        out += spins[i] > 0 ? "+1" : "-1";
    }
    return out;
}

int cmd_reduce(const std::string& cnf_path, const std::string& out_instance,
               const std::string& out_cert) {
    std::string text;
    if (!read_file(cnf_path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", cnf_path.c_str());
        return kExitValidation;
    }
    spinv_cnf* cnf = nullptr;
    spinv_status st = spinv_cnf_parse_dimacs(text.c_str(), &cnf);
    if (st != SPINV_OK) return report_failure(st);

    CString warnings_text;
    {
        char* w = nullptr;
        if (spinv_cnf_warnings(cnf, &w) == SPINV_OK && w) warnings_text.reset(w);
    }
    if (warnings_text) std::fprintf(stderr, "warning: %s\n", warnings_text.get());
    if (int dropped = spinv_cnf_dropped_tautologies(cnf); dropped > 0)
        std::fprintf(stderr, "warning: dropped %d tautological clause(s)\n", dropped);

    spinv_ising* inst = nullptr;
    spinv_cert* cert = nullptr;
    st = spinv_reduce_3sat(cnf, &inst, &cert);
    if (st != SPINV_OK) {
        spinv_cnf_free(cnf);
        return report_failure(st);
    }

    int spins = 0, bound_ok = 0;
    spinv_spin_count_bound(cnf, &spins, &bound_ok);
    std::printf("variables: %d\nclauses: %d\nspins: %d\nancillas: %d\n", spinv_cnf_num_vars(cnf),
                spinv_cnf_num_clauses(cnf), spins, spins - spinv_cnf_num_vars(cnf));

    int rc = kExitOk;
    char* inst_json = nullptr;
    char* cert_json = nullptr;
    if (spinv_ising_to_json(inst, &inst_json) == SPINV_OK) {
        if (!out_instance.empty()) {
            if (!write_file(out_instance, std::string(inst_json) + "\n")) {
                std::fprintf(stderr, "error: cannot write '%s'\n", out_instance.c_str());
                rc = kExitValidation;
            }
        } else {
            std::printf("%s\n", inst_json);
        }
        spinv_string_free(inst_json);
    }
    if (spinv_cert_to_json(cert, &cert_json) == SPINV_OK) {
        if (!out_cert.empty()) {
            if (!write_file(out_cert, std::string(cert_json) + "\n")) {
                std::fprintf(stderr, "error: cannot write '%s'\n", out_cert.c_str());
                rc = kExitValidation;
            }
        }
        spinv_string_free(cert_json);
    }

    spinv_cert_free(cert);
    spinv_ising_free(inst);
    spinv_cnf_free(cnf);
    return rc;
}

int cmd_solve(const std::string& inst_path, bool quantum, int cap, bool parallel) {
    std::string text;
    if (!read_file(inst_path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", inst_path.c_str());
        return kExitValidation;
    }
    spinv_ising* inst = nullptr;
    spinv_status st = spinv_ising_from_json(text.c_str(), &inst);
    if (st != SPINV_OK) return report_failure(st);
    const int n = spinv_ising_n(inst);

    if (quantum) {
        spinv_hamiltonian* ham = nullptr;
        st = spinv_quantize(inst, &ham);
        if (st != SPINV_OK) {
            spinv_ising_free(inst);
            return report_failure(st);
        }
        double ground = 0.0;
        int method = 0;
        st = spinv_ground_eigen(ham, cap, 0, nullptr, 0, &ground, &method);
        spinv_hamiltonian_free(ham);
        spinv_ising_free(inst);
        if (st != SPINV_OK) return report_failure(st);
        std::printf("n: %d\nmethod: %s\nground_energy: %.17g\n", n,
                    method == 0 ? "diagonal_scan" : "dense", ground);
        return kExitOk;
    }

    std::vector<int8_t> spins(n > 0 ? static_cast<size_t>(n) : 0);
    double ground = 0.0;
    uint64_t degeneracy = 0;
    st = spinv_ising_ground(inst, cap, parallel ? -1 : 1, spins.data(), &ground, &degeneracy);
    spinv_ising_free(inst);
    if (st != SPINV_OK) return report_failure(st);
    std::printf("n: %d\nground_energy: %.17g\ndegeneracy: %" PRIu64 "\nconfig: %s\n", n, ground,
                degeneracy, spin_string(spins).c_str());
    return kExitOk;
}

int cmd_verify_spin(const std::string& inst_path, const std::string& config_text, double tol) {
    std::string text;
    if (!read_file(inst_path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", inst_path.c_str());
        return kExitValidation;
    }
    spinv_ising* inst = nullptr;
    spinv_status st = spinv_ising_from_json(text.c_str(), &inst);
    if (st != SPINV_OK) return report_failure(st);

    std::vector<int8_t> spins(256);
    size_t count = 0;
    st = spinv_parse_spins(config_text.c_str(), spins.data(), spins.size(), &count);
    if (st != SPINV_OK) {
        spinv_ising_free(inst);
        return report_failure(st);
    }

    int accepted = 0;
    char* report = nullptr;
    st = spinv_verify_spin(inst, spins.data(), count, tol, &accepted, &report);
    spinv_ising_free(inst);
    if (st != SPINV_OK) return report_failure(st);
    std::printf("%s\n", report);
    spinv_string_free(report);
    return kExitOk;
}

int cmd_verify_wave(const std::string& spec_path) {
    std::string text;
    if (!read_file(spec_path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", spec_path.c_str());
        return kExitValidation;
    }
    char* report = nullptr;
    spinv_status st = spinv_verify_wave_json(text.c_str(), &report);
    if (st != SPINV_OK) return report_failure(st);
    std::printf("%s\n", report);
    spinv_string_free(report);
    return kExitOk;
}

int cmd_quantize(const std::string& inst_path, const std::string& out_path) {
    std::string text;
    if (!read_file(inst_path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", inst_path.c_str());
        return kExitValidation;
    }
    spinv_ising* inst = nullptr;
    spinv_status st = spinv_ising_from_json(text.c_str(), &inst);
    if (st != SPINV_OK) return report_failure(st);
    spinv_hamiltonian* ham = nullptr;
    st = spinv_quantize(inst, &ham);
    spinv_ising_free(inst);
    if (st != SPINV_OK) return report_failure(st);
    char* json = nullptr;
    st = spinv_hamiltonian_to_json(ham, &json);
    spinv_hamiltonian_free(ham);
    if (st != SPINV_OK) return report_failure(st);
    int rc = kExitOk;
    if (!out_path.empty()) {
        if (!write_file(out_path, std::string(json) + "\n")) {
            std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
            rc = kExitValidation;
        }
    } else {
        std::printf("%s\n", json);
    }
    spinv_string_free(json);
    return rc;
}

int cmd_bench(const std::string& family, int n_min, int n_max, int reps, uint64_t seed,
              bool parallel, const std::string& out_csv) {
    if (n_min > n_max) {
        std::fprintf(stderr, "error: --n-min must be <= --n-max\n");
        return kExitValidation;
    }
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
    spinv_records* records = nullptr;
    spinv_status st = spinv_bench_run(family.c_str(), ns.data(), ns.size(), reps, seed,
                                      parallel ? 1 : 0, &records);
    if (st != SPINV_OK) return report_failure(st);
    st = spinv_bench_emit(records, out_csv.c_str());
    spinv_records_free(records);
    if (st != SPINV_OK) return report_failure(st);
    std::printf("wrote %s and sidecar\n", out_csv.c_str());
    return kExitOk;
}

int cmd_fit(const std::string& csv_path) {
    spinv_records* records = nullptr;
    spinv_status st = spinv_records_from_csv_file(csv_path.c_str(), &records);
    if (st != SPINV_OK) return report_failure(st);
    char* json = nullptr;
    st = spinv_fit_json(records, &json);
    spinv_records_free(records);
    if (st != SPINV_OK) return report_failure(st);
    std::printf("%s\n", json);
    spinv_string_free(json);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinv: Ising solver/verifier complexity toolkit"};
    app.set_version_flag("--version", std::string(spinv_version()));
    app.require_subcommand(1);

    // reduce
    std::string cnf_path, out_instance, out_cert;
    auto* reduce = app.add_subcommand("reduce", "Reduce a DIMACS 3-CNF to an Ising instance");
    reduce->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    reduce->add_option("-o,--output", out_instance, "Ising instance JSON output path");
    reduce->add_option("-c,--certificate", out_cert, "reduction certificate JSON output path");

    // solve
    std::string inst_path;
    bool quantum = false, parallel = false;
    int cap = 0;
    auto* solve = app.add_subcommand("solve", "Find the exact ground state by exhaustive search");
    solve->add_option("instance", inst_path, "Ising instance JSON file")->required();
    solve->add_flag("--quantum", quantum, "quantize and diagonalize instead of classical scan");
    solve->add_flag("--parallel", parallel, "partition the enumeration across hardware threads");
    solve->add_option("--cap", cap, "override the enumeration cap (default 30)");

    // verify-spin
    std::string vs_inst, vs_config;
    double vs_tol = 1e-9;
    auto* vspin = app.add_subcommand("verify-spin", "Verify a candidate spin configuration");
    vspin->add_option("instance", vs_inst, "Ising instance JSON file")->required();
    vspin->add_option("config", vs_config, "spin configuration, e.g. '+1,-1,+1' or '+-+'")
        ->required();
    vspin->add_option("--tol", vs_tol, "acceptance tolerance (default 1e-9)");

    // verify-wave
    std::string vw_spec;
    auto* vwave = app.add_subcommand("verify-wave", "Back-substitute a candidate wavefunction");
    vwave->add_option("task", vw_spec, "verification task JSON file")->required();

    // quantize
    std::string q_inst, q_out;
    auto* quantize = app.add_subcommand("quantize", "Pauli-z quantization of an Ising instance");
    quantize->add_option("instance", q_inst, "Ising instance JSON file")->required();
    quantize->add_option("-o,--output", q_out, "Hamiltonian JSON output path");

    // bench
    std::string b_family = "random-ising", b_out = "report.csv";
    int b_nmin = 10, b_nmax = 16, b_reps = 3;
    std::uint64_t b_seed = 42;
    bool b_parallel = false;
    auto* bench = app.add_subcommand("bench", "Measure solve vs verify scaling");
    bench->add_option("--family", b_family, "random-ising | sat-reduced | diagonal-quantized");
    bench->add_option("--n-min", b_nmin, "smallest n")->required();
    bench->add_option("--n-max", b_nmax, "largest n")->required();
    bench->add_option("--seed", b_seed, "instance generator seed");
    bench->add_option("--reps", b_reps, "timed repetitions per n (default 3)");
    bench->add_flag("--parallel", b_parallel, "partitioned enumeration (excluded from c fits)");
    bench->add_option("-o,--output", b_out, "CSV output path")->required();

    // fit
    std::string f_csv;
    auto* fit = app.add_subcommand("fit", "Fit exponential/polynomial models to a report CSV");
    fit->add_option("report", f_csv, "report CSV produced by bench")->required();

    for (auto* sub : app.get_subcommands({}))
        sub->set_version_flag("--version", std::string(spinv_version()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // exit 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);  // exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (reduce->parsed()) return cmd_reduce(cnf_path, out_instance, out_cert);
    if (solve->parsed()) return cmd_solve(inst_path, quantum, cap, parallel);
    if (vspin->parsed()) return cmd_verify_spin(vs_inst, vs_config, vs_tol);
    if (vwave->parsed()) return cmd_verify_wave(vw_spec);
    if (quantize->parsed()) return cmd_quantize(q_inst, q_out);
    if (bench->parsed()) return cmd_bench(b_family, b_nmin, b_nmax, b_reps, b_seed, b_parallel, b_out);
    if (fit->parsed()) return cmd_fit(f_csv);
    return kExitValidation;
}
