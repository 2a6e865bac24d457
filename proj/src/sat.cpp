#include "sat.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string_view>

#include "errors.hpp"

namespace spinv {

namespace {

struct Token {
    std::string text;
    std::size_t line;
};

std::vector<Token> tokenize_dimacs(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view view(text.data() + start,
                              (nl == std::string::npos ? text.size() : nl) - start);
        std::size_t i = 0;
        while (i < view.size() && (view[i] == ' ' || view[i] == '\t' || view[i] == '\r')) ++i;
        if (i < view.size() && view[i] != 'c') {  // comment lines start with 'c'
            while (i < view.size()) {
                std::size_t begin = i;
                while (i < view.size() && view[i] != ' ' && view[i] != '\t' && view[i] != '\r') ++i;
                tokens.push_back({std::string(view.substr(begin, i - begin)), line});
                while (i < view.size() && (view[i] == ' ' || view[i] == '\t' || view[i] == '\r')) ++i;
            }
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
        ++line;
    }
    return tokens;
}

int parse_int_token(const Token& tok, const char* what) {
    const char* s = tok.text.c_str();
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0')
        throw parse_error(std::string("expected ") + what + ", got '" + tok.text + "' at line " +
                              std::to_string(tok.line),
                          tok.line);
    if (errno == ERANGE || v > std::numeric_limits<int>::max() ||
        v < std::numeric_limits<int>::min())
        throw parse_error(std::string(what) + " '" + tok.text + "' out of range at line " +
                              std::to_string(tok.line),
                          tok.line);
    return static_cast<int>(v);
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
    auto tokens = tokenize_dimacs(text);
    std::size_t pos = 0;
    auto need = [&](const char* what) -> const Token& {
        if (pos >= tokens.size())
            throw parse_error(std::string("unexpected end of input, expected ") + what,
                              tokens.empty() ? 1 : tokens.back().line);
        return tokens[pos++];
    };

    const Token& p = need("'p cnf' header");
    if (p.text != "p")
        throw parse_error("malformed header: expected 'p cnf <vars> <clauses>' at line " +
                              std::to_string(p.line),
                          p.line);
    const Token& cnf = need("'cnf'");
    if (cnf.text != "cnf")
        throw parse_error("malformed header: expected 'cnf' at line " + std::to_string(cnf.line),
                          cnf.line);
    CnfFormula formula;
    formula.num_vars = parse_int_token(need("variable count"), "variable count");
    int declared_clauses = parse_int_token(need("clause count"), "clause count");
    if (formula.num_vars < 0 || declared_clauses < 0)
        throw parse_error("header counts must be nonnegative at line " + std::to_string(p.line),
                          p.line);

    int clauses_seen = 0;
    Clause current;
    std::size_t clause_line = 0;
    while (pos < tokens.size()) {
        const Token& tok = tokens[pos++];
        int lit = parse_int_token(tok, "literal");
        if (lit == 0) {
            ++clauses_seen;
            if (current.empty())
                throw parse_error("empty clause at line " + std::to_string(tok.line), tok.line);
            // collapse duplicate literals, detect tautologies
            Clause dedup;
            bool tautology = false;
            for (int l : current) {
                if (std::find(dedup.begin(), dedup.end(), l) != dedup.end()) continue;
                if (std::find(dedup.begin(), dedup.end(), -l) != dedup.end()) tautology = true;
                dedup.push_back(l);
            }
            if (tautology)
                ++formula.dropped_tautologies;
            else
                formula.clauses.push_back(std::move(dedup));
            current.clear();
            continue;
        }
        int var = std::abs(lit);
        if (var > formula.num_vars)
            throw parse_error("literal " + std::to_string(lit) + " out of range at line " +
                                  std::to_string(tok.line) + " (header declares " +
                                  std::to_string(formula.num_vars) + " variables)",
                              tok.line);
        if (current.empty()) clause_line = tok.line;
        current.push_back(lit);
    }
    if (!current.empty())
        throw parse_error("clause starting at line " + std::to_string(clause_line) +
                              " is missing its terminating 0",
                          clause_line);
    if (clauses_seen != declared_clauses) {
        std::ostringstream w;
        w << "header declares " << declared_clauses << " clauses but " << clauses_seen
          << " were read";
        formula.warnings.push_back(w.str());
    }
    return formula;
}

namespace {

// Quadratic Boolean polynomial with integer coefficients:
//   c0 + sum_i b_i x_i + sum_{i<j} q_ij x_i x_j
struct QuadraticPoly {
    std::int64_t constant = 0;
    std::map<int, std::int64_t> linear;
    std::map<std::pair<int, int>, std::int64_t> quadratic;

    void add_const(std::int64_t c) { constant += c; }
    void add_linear(int i, std::int64_t c) {
        if (c) linear[i] += c;
    }
    void add_quadratic(int i, int j, std::int64_t c) {
        if (!c) return;
        if (i > j) std::swap(i, j);
        quadratic[{i, j}] += c;
    }
};

// One clause-penalty factor: s + t * x_idx. Positive literal v contributes
// (1 - x), negative literal contributes x.
struct Factor {
    std::int64_t s;
    std::int64_t t;
    int idx;
};

constexpr std::int64_t kPenaltyWeight = 4;

}  // namespace

Reduction reduce_3sat(const CnfFormula& formula) {
    int num_three = 0;
    for (const auto& clause : formula.clauses) {
        if (clause.size() > 3)
            throw validation_error("clause with " + std::to_string(clause.size()) +
                                   " literals is unsupported (width must be <= 3)");
        if (clause.size() == 3) ++num_three;
    }

    const int num_vars = formula.num_vars;
    QuadraticPoly poly;
    ReductionCertificate cert;
    cert.penalty_weight = static_cast<double>(kPenaltyWeight);
    for (int v = 1; v <= num_vars; ++v) cert.var_to_spin[v] = v - 1;

    int next_ancilla = num_vars;
    for (const auto& clause : formula.clauses) {
        std::vector<Factor> factors;
        for (int lit : clause) {
            int idx = std::abs(lit) - 1;
            if (lit > 0)
                factors.push_back({1, -1, idx});
            else
                factors.push_back({0, 1, idx});
        }
        // expand the product of factors into multilinear coefficients keyed
        // by subsets of the clause's Boolean indices
        std::map<std::vector<int>, std::int64_t> expansion;
        expansion[{}] = 1;
        for (const auto& f : factors) {
            std::map<std::vector<int>, std::int64_t> next;
            for (const auto& [subset, coeff] : expansion) {
                next[subset] += coeff * f.s;
                if (f.t) {
                    std::vector<int> with = subset;
                    with.insert(std::lower_bound(with.begin(), with.end(), f.idx), f.idx);
                    next[with] += coeff * f.t;
                }
            }
            expansion = std::move(next);
        }

        if (clause.size() < 3) {
            for (const auto& [subset, coeff] : expansion) {
                if (subset.empty())
                    poly.add_const(coeff);
                else if (subset.size() == 1)
                    poly.add_linear(subset[0], coeff);
                else
                    poly.add_quadratic(subset[0], subset[1], coeff);
            }
            continue;
        }

        // width 3: replace the product of the two smallest Boolean indices
        // with an ancilla, then add the Rosenberg consistency penalty
        std::vector<int> idx;
        for (const auto& f : factors) idx.push_back(f.idx);
        std::sort(idx.begin(), idx.end());
        const int a = idx[0], b = idx[1], c = idx[2];
        const int w = next_ancilla++;
        cert.ancilla_spins.push_back(w);

        for (const auto& [subset, coeff] : expansion) {
            if (subset.empty()) {
                poly.add_const(coeff);
            } else if (subset.size() == 1) {
                poly.add_linear(subset[0], coeff);
            } else if (subset.size() == 2) {
                if (subset[0] == a && subset[1] == b)
                    poly.add_linear(w, coeff);  // x_a x_b -> w
                else
                    poly.add_quadratic(subset[0], subset[1], coeff);
            } else {
                poly.add_quadratic(c, w, coeff);  // x_a x_b x_c -> w x_c
            }
        }
        poly.add_quadratic(a, b, kPenaltyWeight);
        poly.add_quadratic(a, w, -2 * kPenaltyWeight);
        poly.add_quadratic(b, w, -2 * kPenaltyWeight);
        poly.add_linear(w, 3 * kPenaltyWeight);
    }

    // Map x = (1 + sigma)/2. Everything is tracked in integer quarter units,
    // so the produced coefficients are exact dyadic rationals.
    const int n = num_vars + static_cast<int>(cert.ancilla_spins.size());
    std::map<std::pair<int, int>, std::int64_t> quad_quarters;
    std::vector<std::int64_t> lin_quarters(static_cast<std::size_t>(n), 0);
    std::int64_t const_quarters = 4 * poly.constant;

    for (const auto& [key, q] : poly.quadratic) {
        quad_quarters[key] += q;
        lin_quarters[static_cast<std::size_t>(key.first)] += q;
        lin_quarters[static_cast<std::size_t>(key.second)] += q;
        const_quarters += q;
    }
    for (const auto& [i, b] : poly.linear) {
        lin_quarters[static_cast<std::size_t>(i)] += 2 * b;
        const_quarters += 2 * b;
    }

    std::vector<Coupling> couplings;
    for (const auto& [key, q] : quad_quarters)
        if (q) couplings.push_back({key.first, key.second, -static_cast<double>(q) / 4.0});
    std::vector<Field> fields;
    for (int i = 0; i < n; ++i)
        if (lin_quarters[static_cast<std::size_t>(i)])
            fields.push_back({i, -static_cast<double>(lin_quarters[static_cast<std::size_t>(i)]) / 4.0});
    const double offset = static_cast<double>(const_quarters) / 4.0;
    cert.offset = offset;

    return Reduction{IsingInstance(n, std::move(couplings), std::move(fields), 1.0, offset),
                     std::move(cert)};
}

std::map<int, bool> decode(const ReductionCertificate& certificate,
                           const SpinConfiguration& config) {
    const std::size_t n = certificate.var_to_spin.size() + certificate.ancilla_spins.size();
    if (config.size() != n)
        throw dimension_error("configuration length " + std::to_string(config.size()) +
                              " does not match certificate spin count " + std::to_string(n));
    std::map<int, bool> assignment;
    for (const auto& [var, spin] : certificate.var_to_spin)
        assignment[var] = config[static_cast<std::size_t>(spin)] == 1;
    return assignment;
}

bool satisfies(const CnfFormula& formula, const std::map<int, bool>& assignment) {
    for (const auto& clause : formula.clauses) {
        bool sat = false;
        for (int lit : clause) {
            auto it = assignment.find(std::abs(lit));
            bool value = it != assignment.end() && it->second;
            if ((lit > 0 && value) || (lit < 0 && !value)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

SpinCountBound spin_count_bound(const CnfFormula& formula) {
    int num_three = 0;
    for (const auto& clause : formula.clauses)
        if (clause.size() == 3) ++num_three;
    SpinCountBound out;
    out.spins = formula.num_vars + num_three;
    out.bound_ok = out.spins <= formula.num_vars + static_cast<int>(formula.clauses.size());
    return out;
}

}  // namespace spinv
