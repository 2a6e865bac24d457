// End-to-end checks of the shared-library C API: the same surface the CLI
// and external bindings sit on.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "spinv.h"

namespace {

const char* kTriangle =
    R"({"n": 3, "mu": 1.0, "offset": 0.0,
        "couplings": [[0,1,-1.0],[0,2,-1.0],[1,2,-1.0]], "fields": []})";

struct IsingHandle {
    spinv_ising* ptr = nullptr;
    ~IsingHandle() { spinv_ising_free(ptr); }
};

}  // namespace

TEST_CASE("version and error plumbing") {
    CHECK(std::string(spinv_version()) == "0.1.0");
    spinv_ising* inst = nullptr;
    CHECK(spinv_ising_from_json("{", &inst) == SPINV_ERR_VALIDATION);
    CHECK(std::strlen(spinv_last_error()) > 0);
}

TEST_CASE("ising energy and ground through the C API") {
    IsingHandle h;
    REQUIRE(spinv_ising_from_json(kTriangle, &h.ptr) == SPINV_OK);
    CHECK(spinv_ising_n(h.ptr) == 3);

    const int8_t config[3] = {1, 1, -1};
    double e = 0.0;
    REQUIRE(spinv_ising_energy(h.ptr, config, 3, &e) == SPINV_OK);
    CHECK(e == -1.0);

    int8_t ground[3] = {0, 0, 0};
    double ground_energy = 0.0;
    uint64_t degeneracy = 0;
    REQUIRE(spinv_ising_ground(h.ptr, 0, 1, ground, &ground_energy, &degeneracy) == SPINV_OK);
    CHECK(ground_energy == -1.0);
    CHECK(degeneracy == 6);

    int zero = -1;
    REQUIRE(spinv_ising_has_zero_ground(h.ptr, 1e-9, 0, &zero) == SPINV_OK);
    CHECK(zero == 0);

    char* json = nullptr;
    REQUIRE(spinv_ising_to_json(h.ptr, &json) == SPINV_OK);
    spinv_ising* back = nullptr;
    REQUIRE(spinv_ising_from_json(json, &back) == SPINV_OK);
    CHECK(spinv_ising_n(back) == 3);
    spinv_ising_free(back);
    spinv_string_free(json);
}

TEST_CASE("cap refusal surfaces as SPINV_ERR_CAP") {
    spinv_ising* inst = nullptr;
    REQUIRE(spinv_ising_from_json(R"({"n": 31})", &inst) == SPINV_OK);
    double e = 0.0;
    CHECK(spinv_ising_ground(inst, 0, 1, nullptr, &e, nullptr) == SPINV_ERR_CAP);
    spinv_ising_free(inst);
}

TEST_CASE("reduce, solve, decode, verify via the C API") {
    spinv_cnf* cnf = nullptr;
    REQUIRE(spinv_cnf_parse_dimacs("p cnf 3 1\n1 2 3 0\n", &cnf) == SPINV_OK);
    CHECK(spinv_cnf_num_vars(cnf) == 3);
    CHECK(spinv_cnf_num_clauses(cnf) == 1);
    CHECK(spinv_cnf_dropped_tautologies(cnf) == 0);

    int spins = 0, ok = 0;
    REQUIRE(spinv_spin_count_bound(cnf, &spins, &ok) == SPINV_OK);
    CHECK(spins == 4);
    CHECK(ok == 1);

    spinv_ising* inst = nullptr;
    spinv_cert* cert = nullptr;
    REQUIRE(spinv_reduce_3sat(cnf, &inst, &cert) == SPINV_OK);
    CHECK(spinv_ising_n(inst) == 4);

    std::vector<int8_t> ground(4);
    double energy = 1.0;
    REQUIRE(spinv_ising_ground(inst, 0, 1, ground.data(), &energy, nullptr) == SPINV_OK);
    CHECK(energy == 0.0);

    uint8_t assignment[3] = {9, 9, 9};
    REQUIRE(spinv_decode(cert, ground.data(), 4, assignment, 3) == SPINV_OK);
    for (int v = 0; v < 3; ++v) CHECK((assignment[v] == 0 || assignment[v] == 1));

    int accepted = 0;
    char* report = nullptr;
    REQUIRE(spinv_verify_spin(inst, ground.data(), 4, 1e-9, &accepted, &report) == SPINV_OK);
    CHECK(accepted == 1);
    CHECK(std::string(report).find("\"accepted\": true") != std::string::npos);
    spinv_string_free(report);

    char* cert_json = nullptr;
    REQUIRE(spinv_cert_to_json(cert, &cert_json) == SPINV_OK);
    CHECK(std::string(cert_json).find("penalty_weight") != std::string::npos);
    spinv_string_free(cert_json);

    spinv_cert_free(cert);
    spinv_ising_free(inst);
    spinv_cnf_free(cnf);
}

TEST_CASE("quantize and diagonalize via the C API") {
    IsingHandle h;
    REQUIRE(spinv_ising_from_json(kTriangle, &h.ptr) == SPINV_OK);
    spinv_hamiltonian* ham = nullptr;
    REQUIRE(spinv_quantize(h.ptr, &ham) == SPINV_OK);

    uint64_t count = 0;
    REQUIRE(spinv_eigen_count(ham, &count) == SPINV_OK);
    CHECK(count == 8);

    std::vector<double> eigenvalues(count);
    double ground = 0.0;
    int method = -1;
    REQUIRE(spinv_ground_eigen(ham, 0, 0, eigenvalues.data(), count, &ground, &method) ==
            SPINV_OK);
    CHECK(ground == -1.0);
    CHECK(method == 0);
    CHECK(eigenvalues[0] == -1.0);
    CHECK(eigenvalues[7] == 3.0);

    char* json = nullptr;
    REQUIRE(spinv_hamiltonian_to_json(ham, &json) == SPINV_OK);
    spinv_hamiltonian* back = nullptr;
    REQUIRE(spinv_hamiltonian_from_json(json, &back) == SPINV_OK);
    spinv_hamiltonian* sum = nullptr;
    REQUIRE(spinv_compose(ham, back, &sum) == SPINV_OK);
    double doubled = 0.0;
    REQUIRE(spinv_ground_eigen(sum, 0, 0, nullptr, 0, &doubled, nullptr) == SPINV_OK);
    CHECK(doubled == -2.0);
    spinv_hamiltonian_free(sum);
    spinv_hamiltonian_free(back);
    spinv_string_free(json);
    spinv_hamiltonian_free(ham);
}

TEST_CASE("expression engine via the C API") {
    spinv_expr* e = nullptr;
    REQUIRE(spinv_expr_parse("exp(-(x_0_0^2)/2)", 1, 1, &e) == SPINV_OK);

    double value = 0.0;
    const double origin[1] = {0.0};
    REQUIRE(spinv_expr_eval(e, origin, 1, &value) == SPINV_OK);
    CHECK(value == 1.0);

    int64_t counted = 0, free_ops = 0;
    REQUIRE(spinv_expr_count_ops(e, &counted, &free_ops) == SPINV_OK);
    CHECK(counted == 2);

    spinv_expr* lap = nullptr;
    REQUIRE(spinv_expr_laplacian(e, 0, &lap) == SPINV_OK);
    const double at1[1] = {1.0};
    REQUIRE(spinv_expr_eval(lap, at1, 1, &value) == SPINV_OK);
    CHECK(std::abs(value) < 1e-12);  // (x^2-1)e^{-x^2/2} at x=1

    spinv_expr* de = nullptr;
    REQUIRE(spinv_expr_differentiate(e, 0, 0, &de) == SPINV_OK);
    char* printed = nullptr;
    REQUIRE(spinv_expr_print(de, &printed) == SPINV_OK);
    spinv_expr* reparsed = nullptr;
    REQUIRE(spinv_expr_parse(printed, 1, 1, &reparsed) == SPINV_OK);
    spinv_expr_free(reparsed);
    spinv_string_free(printed);
    spinv_expr_free(de);
    spinv_expr_free(lap);
    spinv_expr_free(e);

    spinv_expr* bad = nullptr;
    CHECK(spinv_expr_parse("x_5_0", 2, 1, &bad) == SPINV_ERR_VALIDATION);
}

TEST_CASE("wavefunction verification task via the C API") {
    const char* task = R"json({
      "n": 1, "d": 1, "prefactor": -0.5,
      "potential": "0.5*x_0_0^2 - 0.5",
      "psi": "exp(-(x_0_0^2)/2)",
      "energy": 0.0, "tol": 1e-8,
      "samples": 50, "box": [-3.0, 3.0], "seed": 7
    })json";
    char* report = nullptr;
    REQUIRE(spinv_verify_wave_json(task, &report) == SPINV_OK);
    const std::string text(report);
    CHECK(text.find("\"accepted\": true") != std::string::npos);
    CHECK(text.find("\"samples\": 50") != std::string::npos);
    spinv_string_free(report);
}

TEST_CASE("spin text parsing via the C API") {
    int8_t spins[8];
    size_t count = 0;
    REQUIRE(spinv_parse_spins("+1,-1,+1", spins, 8, &count) == SPINV_OK);
    REQUIRE(count == 3);
    CHECK(spins[0] == 1);
    CHECK(spins[1] == -1);
    CHECK(spins[2] == 1);
    CHECK(spinv_parse_spins("junk", spins, 8, &count) == SPINV_ERR_VALIDATION);
}

TEST_CASE("bench pipeline via the C API") {
    const int ns[4] = {4, 5, 6, 7};
    spinv_records* records = nullptr;
    REQUIRE(spinv_bench_run("random-ising", ns, 4, 3, 11, 0, &records) == SPINV_OK);
    CHECK(spinv_records_count(records) == 4);

    const auto dir = std::filesystem::temp_directory_path() / "spinv_capi_test";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "r.csv").string();
    REQUIRE(spinv_bench_emit(records, csv.c_str()) == SPINV_OK);

    spinv_records* parsed = nullptr;
    REQUIRE(spinv_records_from_csv_file(csv.c_str(), &parsed) == SPINV_OK);
    CHECK(spinv_records_count(parsed) == 4);

    char* fits = nullptr;
    REQUIRE(spinv_fit_json(parsed, &fits) == SPINV_OK);
    CHECK(std::string(fits).find("exponential") != std::string::npos);
    spinv_string_free(fits);
    spinv_records_free(parsed);
    spinv_records_free(records);
    std::filesystem::remove_all(dir);

    spinv_records* bogus = nullptr;
    CHECK(spinv_bench_run("bogus", ns, 4, 3, 11, 0, &bogus) == SPINV_ERR_VALIDATION);
}
