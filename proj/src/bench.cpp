#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "errors.hpp"
#include "json_io.hpp"
#include "pauli.hpp"
#include "verify.hpp"

namespace spinv {

namespace {

constexpr int kDiagonalFamilyCap = 24;  // 2^n eigenvalues are materialized

inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t mix_seed(std::uint64_t seed, int n) {
    return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n + 1));
}

}  // namespace

BenchFamily bench_family_from_name(const std::string& name) {
    if (name == "random-ising") return BenchFamily::random_ising;
    if (name == "sat-reduced") return BenchFamily::sat_reduced;
    if (name == "diagonal-quantized") return BenchFamily::diagonal_quantized;
    throw validation_error("unknown bench family '" + name +
                           "' (expected random-ising, sat-reduced or diagonal-quantized)");
}

std::string bench_family_name(BenchFamily family) {
    switch (family) {
        case BenchFamily::random_ising: return "random-ising";
        case BenchFamily::sat_reduced: return "sat-reduced";
        case BenchFamily::diagonal_quantized: return "diagonal-quantized";
    }
    return "?";
}

IsingInstance random_ising_instance(int n, std::uint64_t seed) {
    if (n < 2) throw validation_error("random Ising family requires n >= 2");
    std::mt19937_64 rng(mix_seed(seed, n));
    // circulant topology: a ring plus half-spacing chords. The edge set is a
    // function of n alone, so verification op counts do not depend on the
    // seed; only the coefficients are random.
    std::set<std::pair<int, int>> edges;
    for (int j = 0; j + 1 < n; ++j) edges.insert({j, j + 1});
    if (n >= 3) edges.insert({0, n - 1});
    if (n >= 4)
        for (int j = 0; j < n / 2; ++j) edges.insert({j, j + n / 2});
    std::vector<Coupling> couplings;
    couplings.reserve(edges.size());
    for (const auto& [j, k] : edges) couplings.push_back({j, k, 2.0 * u01(rng) - 1.0});
    std::vector<Field> fields;
    fields.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) fields.push_back({j, 2.0 * u01(rng) - 1.0});
    return IsingInstance(n, std::move(couplings), std::move(fields), 1.0, 0.0);
}

CnfFormula random_cnf(int num_vars, int num_clauses, int max_spins, std::uint64_t seed) {
    if (num_vars < 1) throw validation_error("random CNF requires at least 1 variable");
    std::mt19937_64 rng(seed);
    CnfFormula formula;
    formula.num_vars = num_vars;
    int width3_budget = std::max(0, max_spins - num_vars);
    for (int c = 0; c < num_clauses; ++c) {
        int width = 0;
        const double r = u01(rng);
        if (width3_budget > 0 && r < 0.65 && num_vars >= 3)
            width = 3;
        else if (r < 0.9 && num_vars >= 2)
            width = 2;
        else
            width = 1;
        if (width == 3) --width3_budget;

        std::set<int> vars;
        while (static_cast<int>(vars.size()) < width)
            vars.insert(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars)));
        Clause clause;
        for (int v : vars) clause.push_back((rng() & 1u) ? v : -v);
        formula.clauses.push_back(std::move(clause));
    }
    return formula;
}

CnfFormula sat_family_formula(int spins, std::uint64_t seed) {
    if (spins < 4) throw validation_error("sat-reduced family requires n >= 4 spins");
    std::mt19937_64 rng(mix_seed(seed, spins));
    int num_vars = std::max(3, (3 * spins) / 5);
    if (num_vars > spins) num_vars = spins;
    const int width3 = spins - num_vars;

    CnfFormula formula;
    formula.num_vars = num_vars;
    for (int c = 0; c < width3; ++c) {
        std::set<int> vars;
        while (static_cast<int>(vars.size()) < 3)
            vars.insert(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars)));
        Clause clause;
        for (int v : vars) clause.push_back((rng() & 1u) ? v : -v);
        formula.clauses.push_back(std::move(clause));
    }
    for (int c = 0; c < num_vars / 2; ++c) {
        std::set<int> vars;
        while (static_cast<int>(vars.size()) < 2)
            vars.insert(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars)));
        Clause clause;
        for (int v : vars) clause.push_back((rng() & 1u) ? v : -v);
        formula.clauses.push_back(std::move(clause));
    }
    return formula;
}

namespace {

using Clock = std::chrono::steady_clock;

// Times fn(); when a single run is sub-microsecond it is re-run in a batch
// sized off the first measurement so the timer resolution stops mattering.
template <typename F>
std::uint64_t time_ns(F&& fn) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    auto once = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    if (once >= 1000) return once;
    const std::uint64_t batch = std::clamp<std::uint64_t>(100000 / std::max<std::uint64_t>(once, 1),
                                                          16, 65536);
    t0 = Clock::now();
    for (std::uint64_t i = 0; i < batch; ++i) fn();
    t1 = Clock::now();
    auto total = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    return total / batch;
}

std::uint64_t median(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

std::vector<BenchRecord> run_scaling(const BenchSuite& suite) {
    if (suite.n_values.empty()) throw validation_error("bench suite has no n values");
    if (suite.repetitions < 3) throw validation_error("bench requires repetitions >= 3");
    std::vector<int> ns = suite.n_values;
    std::sort(ns.begin(), ns.end());

    BruteForceOptions bf;
    bf.num_threads = suite.parallel ? -1 : 1;  // -1: all hardware threads

    std::vector<BenchRecord> records;
    for (int n : ns) {
        BenchRecord rec;
        rec.n = n;
        rec.repetitions = suite.repetitions;

        std::ostringstream id;
        id << bench_family_name(suite.family) << "/n" << n << "/seed" << suite.seed;
        rec.instance_id = id.str();

        std::vector<std::uint64_t> solve_times, verify_times;
        switch (suite.family) {
            case BenchFamily::random_ising: {
                const IsingInstance inst = random_ising_instance(n, suite.seed);
                const GroundStateResult ground = brute_force_ground(inst, bf);  // warm-up
                for (int r = 0; r < suite.repetitions; ++r) {
                    solve_times.push_back(time_ns([&] { brute_force_ground(inst, bf); }));
                    verify_times.push_back(
                        time_ns([&] { verify_spin_solution(inst, ground.config, 1e-9); }));
                }
                rec.counted_ops = verify_spin_solution(inst, ground.config, 1e-9).counted_ops;
                break;
            }
            case BenchFamily::sat_reduced: {
                const CnfFormula formula = sat_family_formula(n, suite.seed);
                const Reduction red = reduce_3sat(formula);
                const GroundStateResult ground = brute_force_ground(red.instance, bf);  // warm-up
                for (int r = 0; r < suite.repetitions; ++r) {
                    solve_times.push_back(time_ns([&] { brute_force_ground(red.instance, bf); }));
                    verify_times.push_back(
                        time_ns([&] { verify_spin_solution(red.instance, ground.config, 1e-9); }));
                }
                rec.counted_ops =
                    verify_spin_solution(red.instance, ground.config, 1e-9).counted_ops;
                break;
            }
            case BenchFamily::diagonal_quantized: {
                if (n > kDiagonalFamilyCap)
                    throw cap_error("diagonal-quantized family refused: n=" + std::to_string(n) +
                                    " exceeds cap " + std::to_string(kDiagonalFamilyCap));
                const IsingInstance inst = random_ising_instance(n, suite.seed);
                const HamiltonianSpec spec = quantize_ising(inst);
                const GroundStateResult ground = brute_force_ground(inst, bf);
                ground_eigen(spec);  // warm-up
                for (int r = 0; r < suite.repetitions; ++r) {
                    solve_times.push_back(time_ns([&] { ground_eigen(spec); }));
                    verify_times.push_back(
                        time_ns([&] { verify_spin_solution(inst, ground.config, 1e-9); }));
                }
                rec.counted_ops = verify_spin_solution(inst, ground.config, 1e-9).counted_ops;
                break;
            }
        }
        rec.solve_ns = median(std::move(solve_times));
        rec.verify_ns = median(std::move(verify_times));
        records.push_back(std::move(rec));
    }
    return records;
}

namespace {

double series_value(const BenchRecord& r, BenchSeries series) {
    switch (series) {
        case BenchSeries::solve_ns: return static_cast<double>(r.solve_ns);
        case BenchSeries::verify_ns: return static_cast<double>(r.verify_ns);
        case BenchSeries::counted_ops: return static_cast<double>(r.counted_ops.counted);
    }
    return 0.0;
}

FitResult least_squares_log(const std::vector<BenchRecord>& records, BenchSeries series,
                            FitModel model) {
    if (records.size() < 4) throw validation_error("fit requires at least 4 records");
    std::set<int> distinct;
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        const double y = series_value(r, series);
        if (y <= 0.0)
            throw validation_error("fit requires positive series values (record n=" +
                                   std::to_string(r.n) + ")");
        distinct.insert(r.n);
        xs.push_back(model == FitModel::exponential ? static_cast<double>(r.n)
                                                    : std::log(static_cast<double>(r.n)));
        ys.push_back(std::log(y));
    }
    if (distinct.size() < 2) throw validation_error("degenerate regression: all n equal");

    const auto m = static_cast<double>(xs.size());
    double mean_x = 0, mean_y = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        syy += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    const double slope = sxy / sxx;

    FitResult fit;
    fit.model = model;
    fit.amplitude = std::exp(mean_y - slope * mean_x);
    fit.rate = model == FitModel::exponential ? std::exp(slope) : slope;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double pred = mean_y + slope * (xs[i] - mean_x);
            ss_res += (ys[i] - pred) * (ys[i] - pred);
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

}  // namespace

FitResult fit_exponential(const std::vector<BenchRecord>& records, BenchSeries series) {
    return least_squares_log(records, series, FitModel::exponential);
}

FitResult fit_polynomial(const std::vector<BenchRecord>& records, BenchSeries series) {
    return least_squares_log(records, series, FitModel::polynomial);
}

std::string report_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "n,solve_ns,verify_ns,counted_ops,instance_id\n";
    for (const auto& r : records)
        out << r.n << ',' << r.solve_ns << ',' << r.verify_ns << ',' << r.counted_ops.counted << ','
            << r.instance_id << '\n';
    return out.str();
}

std::string fits_json(const std::vector<FitResult>& fits) {
    nlohmann::json j;
    j["fits"] = nlohmann::json::array();
    for (const auto& f : fits) {
        nlohmann::json e;
        e["model"] = f.model == FitModel::exponential ? "exponential" : "polynomial";
        e["a"] = f.amplitude;
        e[f.model == FitModel::exponential ? "c" : "k"] = f.rate;
        e["r_squared"] = f.r_squared;
        j["fits"].push_back(std::move(e));
    }
    return j.dump(2);
}

std::string sidecar_path(const std::string& csv_path) {
    if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
        return csv_path.substr(0, csv_path.size() - 4) + ".json";
    return csv_path + ".json";
}

void emit_report(const std::vector<BenchRecord>& records, const std::vector<FitResult>& fits,
                 const std::string& csv_path) {
    write_file(csv_path, report_csv(records));
    write_file(sidecar_path(csv_path), fits_json(fits));
}

std::vector<BenchRecord> parse_report_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != "n,solve_ns,verify_ns,counted_ops,instance_id")
        throw parse_error("bad CSV header (expected n,solve_ns,verify_ns,counted_ops,instance_id)",
                          1);
    std::vector<BenchRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        BenchRecord r;
        try {
            if (!std::getline(row, cell, ',')) throw std::invalid_argument("n");
            r.n = std::stoi(cell);
            if (!std::getline(row, cell, ',')) throw std::invalid_argument("solve_ns");
            r.solve_ns = std::stoull(cell);
            if (!std::getline(row, cell, ',')) throw std::invalid_argument("verify_ns");
            r.verify_ns = std::stoull(cell);
            if (!std::getline(row, cell, ',')) throw std::invalid_argument("counted_ops");
            r.counted_ops.counted = std::stoll(cell);
        } catch (const std::exception&) {
            throw parse_error("malformed CSV row at line " + std::to_string(line_no), line_no);
        }
        std::getline(row, r.instance_id);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace spinv
