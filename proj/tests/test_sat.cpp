#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "errors.hpp"
#include "ising.hpp"
#include "json_io.hpp"
#include "oracles.hpp"
#include "sat.hpp"

using namespace spinv;

TEST_CASE("parse minimal dimacs") {
    const auto f = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(f.num_vars == 1);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == Clause{1});
    CHECK(f.warnings.empty());
}

TEST_CASE("parse two clauses with comments and split lines") {
    const auto f = parse_dimacs("c a comment\np cnf 2 2\n1 -2 0\n-1\n2 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == Clause{1, -2});
    CHECK(f.clauses[1] == Clause{-1, 2});
}

TEST_CASE("tautological clause is dropped with a count") {
    const auto f = parse_dimacs("p cnf 1 1\n1 -1 0\n");
    CHECK(f.num_vars == 1);
    CHECK(f.clauses.empty());
    CHECK(f.dropped_tautologies == 1);
}

TEST_CASE("clause count mismatch attaches a warning") {
    const auto f = parse_dimacs("p cnf 2 3\n1 0\n2 0\n");
    CHECK(f.clauses.size() == 2);
    REQUIRE(f.warnings.size() == 1);
    CHECK(f.warnings[0].find("3") != std::string::npos);
}

TEST_CASE("dimacs parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p dnf 1 1\n1 0\n"),
                         doctest::Contains("line 1"), parse_error);
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 1 1\n2 0\n"),
                         doctest::Contains("line 2"), parse_error);
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n1 2\n"),
                         doctest::Contains("terminating 0"), parse_error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n0\n"), parse_error);
    CHECK_THROWS_AS(parse_dimacs(""), parse_error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n4294967297 0\n"), parse_error);
}

TEST_CASE("empty formula reduces to the free instance") {
    CnfFormula f;
    f.num_vars = 5;
    const auto red = reduce_3sat(f);
    CHECK(red.instance.n() == 5);
    CHECK(red.instance.couplings().empty());
    CHECK(red.instance.fields().empty());
    CHECK(red.instance.offset() == 0.0);
    CHECK(has_zero_ground(red.instance));
    CHECK(red.certificate.ancilla_spins.empty());
    CHECK(red.certificate.var_to_spin.size() == 5);
}

TEST_CASE("contradiction (x1) and (not x1) has ground energy 1") {
    const auto f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    const auto red = reduce_3sat(f);
    const auto ground = brute_force_ground(red.instance);
    CHECK(ground.energy == 1.0);
    CHECK_FALSE(has_zero_ground(red.instance));
}

TEST_CASE("single width-3 clause gets one ancilla and a zero ground") {
    const auto f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    const auto red = reduce_3sat(f);
    CHECK(red.instance.n() == 4);
    CHECK(red.certificate.ancilla_spins == std::vector<int>{3});
    CHECK(red.certificate.penalty_weight == 4.0);
    CHECK(has_zero_ground(red.instance));

    const auto ground = brute_force_ground(red.instance);
    CHECK(ground.energy == 0.0);
    const auto assignment = decode(red.certificate, ground.config);
    CHECK(satisfies(f, assignment));
}

TEST_CASE("clauses wider than 3 are refused") {
    CnfFormula f;
    f.num_vars = 4;
    f.clauses.push_back({1, 2, 3, 4});
    CHECK_THROWS_AS(reduce_3sat(f), validation_error);
}

// Gadget invariant: for every sign pattern of a width-3 clause and every
// assignment of its three variables, minimizing the clause penalty over the
// ancilla gives 0 when the clause is satisfied and exactly 1 otherwise.
TEST_CASE("quadratization gadget is exact for all sign patterns") {
    for (int signs = 0; signs < 8; ++signs) {
        CnfFormula f;
        f.num_vars = 3;
        Clause clause;
        for (int i = 0; i < 3; ++i) clause.push_back((signs >> i) & 1 ? (i + 1) : -(i + 1));
        f.clauses.push_back(clause);
        const auto red = reduce_3sat(f);
        REQUIRE(red.instance.n() == 4);

        for (int bits = 0; bits < 8; ++bits) {
            bool satisfied = false;
            for (int i = 0; i < 3; ++i) {
                const bool value = (bits >> i) & 1;
                if (((signs >> i) & 1) == static_cast<int>(value)) satisfied = true;
            }
            double best = 1e300;
            for (int w = 0; w < 2; ++w) {
                SpinConfiguration config(4);
                for (int i = 0; i < 3; ++i) config[i] = ((bits >> i) & 1) ? 1 : -1;
                config[3] = w ? 1 : -1;
                best = std::min(best, energy(red.instance, config));
            }
            if (satisfied)
                REQUIRE(best == 0.0);
            else
                REQUIRE(best == 1.0);
        }
    }
}

TEST_CASE("reduction coefficients are quarter-integers bounded by 4M") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        CnfFormula f;
        f.num_vars = 3 + static_cast<int>(rng() % 6);
        const int clauses = 1 + static_cast<int>(rng() % 8);
        for (int c = 0; c < clauses; ++c) {
            const int width = 1 + static_cast<int>(rng() % 3);
            std::set<int> vars;
            while (static_cast<int>(vars.size()) < width)
                vars.insert(1 + static_cast<int>(rng() % f.num_vars));
            Clause clause;
            for (int v : vars) clause.push_back(rng() % 2 ? v : -v);
            f.clauses.push_back(clause);
        }
        const auto red = reduce_3sat(f);
        const double bound = 4.0 * red.certificate.penalty_weight;
        for (const auto& c : red.instance.couplings()) {
            REQUIRE(c.strength * 4.0 == std::round(c.strength * 4.0));
            REQUIRE(std::abs(c.strength) <= bound);
        }
        for (const auto& fl : red.instance.fields()) {
            REQUIRE(fl.strength * 4.0 == std::round(fl.strength * 4.0));
            REQUIRE(std::abs(fl.strength) <= bound);
        }
        REQUIRE(red.instance.mu() == 1.0);
    }
}

// Core soundness/completeness theorem: zero ground energy iff satisfiable,
// and the ground energy equals the minimal number of violated clauses.
TEST_CASE("reduction is sound and complete on random formulas") {
    std::mt19937_64 rng(5150);
    int sat_seen = 0, unsat_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        CnfFormula f;
        f.num_vars = 2 + static_cast<int>(rng() % 7);
        const int clauses = 1 + static_cast<int>(rng() % 10);
        int ancillas = 0;
        for (int c = 0; c < clauses; ++c) {
            int width = 1 + static_cast<int>(rng() % 3);
            if (width > f.num_vars) width = f.num_vars;
            if (ancillas + f.num_vars >= 16 && width == 3) width = 2;
            if (width == 3) ++ancillas;
            std::set<int> vars;
            while (static_cast<int>(vars.size()) < width)
                vars.insert(1 + static_cast<int>(rng() % f.num_vars));
            Clause clause;
            for (int v : vars) clause.push_back(rng() % 2 ? v : -v);
            f.clauses.push_back(clause);
        }

        const auto red = reduce_3sat(f);
        const auto oracle = test::oracle_sat(f);
        const auto ground = brute_force_ground(red.instance);
        REQUIRE(has_zero_ground(red.instance) == oracle.satisfiable);
        REQUIRE(ground.energy == static_cast<double>(oracle.min_violations));
        if (oracle.satisfiable) {
            ++sat_seen;
            REQUIRE(satisfies(f, decode(red.certificate, ground.config)));
        } else {
            ++unsat_seen;
        }
    }
    CHECK(sat_seen > 5);
    CHECK(unsat_seen > 5);
}

TEST_CASE("decode maps spins to assignments") {
    const auto f = parse_dimacs("p cnf 2 1\n1 -2 0\n");
    const auto red = reduce_3sat(f);
    auto all_up = decode(red.certificate, {1, 1});
    CHECK(all_up == std::map<int, bool>{{1, true}, {2, true}});
    auto all_down = decode(red.certificate, {-1, -1});
    CHECK(all_down == std::map<int, bool>{{1, false}, {2, false}});
    CHECK_THROWS_AS(decode(red.certificate, {1}), dimension_error);
}

TEST_CASE("spin count bound") {
    const auto f3 = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    auto b = spin_count_bound(f3);
    CHECK(b.spins == 4);
    CHECK(b.bound_ok);

    const auto f2 = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
    b = spin_count_bound(f2);
    CHECK(b.spins == 2);
    CHECK(b.bound_ok);

    CnfFormula empty;
    empty.num_vars = 5;
    b = spin_count_bound(empty);
    CHECK(b.spins == 5);
    CHECK(b.bound_ok);
}

TEST_CASE("certificate JSON round-trip") {
    const auto f = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 2 0\n");
    const auto red = reduce_3sat(f);
    const auto text = certificate_to_json(red.certificate);
    const auto back = certificate_from_json(text);
    CHECK(back.var_to_spin == red.certificate.var_to_spin);
    CHECK(back.ancilla_spins == red.certificate.ancilla_spins);
    CHECK(back.offset == red.certificate.offset);
    CHECK(back.penalty_weight == red.certificate.penalty_weight);
}
