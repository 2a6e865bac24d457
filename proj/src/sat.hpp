#ifndef SPINV_SAT_HPP
#define SPINV_SAT_HPP

#include <map>
#include <string>
#include <vector>

#include "ising.hpp"

namespace spinv {

// 3-SAT -> Ising zero-ground-energy reduction. Clause penalties are built in
// Boolean variables x in {0,1}, width-3 clauses are quadratized with one
// ancilla each (Rosenberg penalty, weight M = 4), and the quadratic Boolean
// polynomial is mapped to spins via x = (1 + sigma)/2. The guarantee is
//
//   min over spins of energy(instance) = #clauses violated by the best
//   assignment,
//
// so the instance has a zero-energy ground state iff the formula is
// satisfiable.

using Clause = std::vector<int>;  // nonzero literals; +v = variable v, -v = negation

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    int dropped_tautologies = 0;
    std::vector<std::string> warnings;
};

struct ReductionCertificate {
    std::map<int, int> var_to_spin;   // variable (1-based) -> spin index
    std::vector<int> ancilla_spins;   // one per width-3 clause, in clause order
    double offset = 0.0;              // constant folded into IsingInstance.offset
    double penalty_weight = 4.0;      // quadratization weight M
};

struct Reduction {
    IsingInstance instance;
    ReductionCertificate certificate;
};

// DIMACS CNF reader. Comment lines start with 'c', the header is
// "p cnf <vars> <clauses>", clauses are whitespace-separated literals
// terminated by 0. Tautological clauses (v and -v together) are dropped and
// counted; duplicate literals inside a clause are collapsed. A clause-count
// mismatch with the header attaches a warning instead of failing.
CnfFormula parse_dimacs(const std::string& text);

// Throws validation_error if any clause has more than 3 literals.
Reduction reduce_3sat(const CnfFormula& formula);

// Reads variable assignments off a spin configuration (ancillas ignored):
// variable v is true iff the spin at var_to_spin[v] is +1.
std::map<int, bool> decode(const ReductionCertificate& certificate,
                           const SpinConfiguration& config);

// True iff the assignment satisfies every clause.
bool satisfies(const CnfFormula& formula, const std::map<int, bool>& assignment);

struct SpinCountBound {
    int spins = 0;
    bool bound_ok = false;  // spins <= num_vars + num_clauses
};

SpinCountBound spin_count_bound(const CnfFormula& formula);

}  // namespace spinv

#endif
