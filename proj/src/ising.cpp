#include "ising.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <utility>

#include "errors.hpp"

namespace spinv {

IsingInstance::IsingInstance(int n, std::vector<Coupling> couplings, std::vector<Field> fields,
                             double mu, double offset)
    : n_(n), couplings_(std::move(couplings)), fields_(std::move(fields)), mu_(mu), offset_(offset) {
    if (n_ < 0) throw validation_error("spin count must be >= 0");
    std::set<std::pair<int, int>> seen;
    for (const auto& c : couplings_) {
        if (c.j < 0 || c.j >= n_ || c.k < 0 || c.k >= n_)
            throw validation_error("coupling index out of range [0," + std::to_string(n_) + ")");
        if (c.j >= c.k)
            throw validation_error("coupling requires j < k, got (" + std::to_string(c.j) + "," +
                                   std::to_string(c.k) + ")");
        if (!seen.insert({c.j, c.k}).second)
            throw validation_error("duplicate coupling pair (" + std::to_string(c.j) + "," +
                                   std::to_string(c.k) + ")");
        if (!std::isfinite(c.strength)) throw validation_error("coupling strength must be finite");
    }
    std::set<int> seen_sites;
    for (const auto& f : fields_) {
        if (f.site < 0 || f.site >= n_)
            throw validation_error("field index out of range [0," + std::to_string(n_) + ")");
        if (!seen_sites.insert(f.site).second)
            throw validation_error("duplicate field at site " + std::to_string(f.site));
        if (!std::isfinite(f.strength)) throw validation_error("field strength must be finite");
    }
    if (!std::isfinite(mu_) || !std::isfinite(offset_))
        throw validation_error("mu and offset must be finite");
}

double energy(const IsingInstance& instance, const SpinConfiguration& config) {
    if (static_cast<int>(config.size()) != instance.n())
        throw dimension_error("configuration length " + std::to_string(config.size()) +
                              " does not match instance n=" + std::to_string(instance.n()));
    for (std::int8_t s : config)
        if (s != 1 && s != -1) throw validation_error("spins must be exactly -1 or +1");

    double acc = 0.0;
    for (const auto& c : instance.couplings())
        acc -= c.strength * static_cast<double>(config[c.j] * config[c.k]);
    double field_sum = 0.0;
    for (const auto& f : instance.fields())
        field_sum += f.strength * static_cast<double>(config[f.site]);
    acc -= instance.mu() * field_sum;
    return acc + instance.offset();
}

namespace {

// Spins are packed into the bits of a 64-bit index: bit j = 0 means
// sigma_j = +1 (same convention as the quantum basis ordering).
inline double energy_of_bits(const IsingInstance& inst, std::uint64_t bits) {
    double acc = 0.0;
    for (const auto& c : inst.couplings()) {
        // sigma_j * sigma_k = +1 when bits j,k agree
        double prod = ((bits >> c.j ^ bits >> c.k) & 1u) ? -1.0 : 1.0;
        acc -= c.strength * prod;
    }
    double field_sum = 0.0;
    for (const auto& f : inst.fields()) {
        double s = ((bits >> f.site) & 1u) ? -1.0 : 1.0;
        field_sum += f.strength * s;
    }
    acc -= inst.mu() * field_sum;
    return acc + inst.offset();
}

SpinConfiguration config_of_bits(std::uint64_t bits, int n) {
    SpinConfiguration config(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) config[j] = ((bits >> j) & 1u) ? -1 : 1;
    return config;
}

// Lexicographic order scanning position 0 first, +1 before -1. This is not
// the numeric order of the packed bits (bit 0 is the least significant).
bool lex_less_bits(std::uint64_t a, std::uint64_t b, int n) {
    for (int j = 0; j < n; ++j) {
        unsigned sa = (a >> j) & 1u;
        unsigned sb = (b >> j) & 1u;
        if (sa != sb) return sa < sb;
    }
    return false;
}

struct PartialMin {
    double energy = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t degeneracy = 0;
};

PartialMin scan_range(const IsingInstance& inst, std::uint64_t begin, std::uint64_t end) {
    PartialMin best;
    best.energy = energy_of_bits(inst, begin);
    best.bits = begin;
    best.degeneracy = 1;
    for (std::uint64_t b = begin + 1; b < end; ++b) {
        double e = energy_of_bits(inst, b);
        if (e < best.energy) {
            best.energy = e;
            best.bits = b;
            best.degeneracy = 1;
        } else if (e == best.energy) {
            ++best.degeneracy;
            if (lex_less_bits(b, best.bits, inst.n())) best.bits = b;
        }
    }
    return best;
}

// Associative, order-independent merge of partial minima.
PartialMin merge_min(const PartialMin& a, const PartialMin& b, int n) {
    if (a.degeneracy == 0) return b;
    if (b.degeneracy == 0) return a;
    if (a.energy < b.energy) return a;
    if (b.energy < a.energy) return b;
    PartialMin m = a;
    m.degeneracy += b.degeneracy;
    if (lex_less_bits(b.bits, a.bits, n)) m.bits = b.bits;
    return m;
}

}  // namespace

GroundStateResult brute_force_ground(const IsingInstance& instance, const BruteForceOptions& opts) {
    const int n = instance.n();
    if (n > opts.cap)
        throw cap_error("brute-force enumeration refused: n=" + std::to_string(n) +
                        " exceeds cap " + std::to_string(opts.cap) +
                        " (raise the cap explicitly to run anyway)");

    const std::uint64_t total = std::uint64_t{1} << n;
    PartialMin best;
    int workers = opts.num_threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, 64);
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);

    if (workers == 1 || total < 4096) {
        best = scan_range(instance, 0, total);
    } else {
        std::vector<PartialMin> partial(static_cast<std::size_t>(workers));
        std::vector<std::thread> threads;
        const std::uint64_t chunk = total / workers;
        for (int w = 0; w < workers; ++w) {
            std::uint64_t begin = chunk * w;
            std::uint64_t end = (w + 1 == workers) ? total : chunk * (w + 1);
            threads.emplace_back([&instance, &partial, w, begin, end] {
                partial[static_cast<std::size_t>(w)] = scan_range(instance, begin, end);
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& p : partial) best = merge_min(best, p, n);
    }

    GroundStateResult result;
    result.config = config_of_bits(best.bits, n);
    result.energy = best.energy;
    result.degeneracy = best.degeneracy;
    return result;
}

bool has_zero_ground(const IsingInstance& instance, double tol, const BruteForceOptions& opts) {
    if (tol < 0) throw validation_error("tolerance must be >= 0");
    return std::abs(brute_force_ground(instance, opts).energy) <= tol;
}

SpinConfiguration parse_spin_text(const std::string& text) {
    SpinConfiguration config;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == ',' || ch == ' ' || ch == '\t') {
            ++i;
            continue;
        }
        if (ch == '+' || ch == '-') {
            int sign = (ch == '+') ? 1 : -1;
            ++i;
            if (i < text.size() && text[i] == '1') ++i;
            config.push_back(static_cast<std::int8_t>(sign));
        } else if (ch == '1') {
            ++i;
            config.push_back(1);
        } else {
            throw parse_error(std::string("unexpected character '") + ch + "' in spin configuration",
                              i);
        }
    }
    if (config.empty()) throw parse_error("empty spin configuration", 0);
    return config;
}

std::string spin_text(const SpinConfiguration& config) {
    std::string out;
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (i) out += ',';
        out += (config[i] > 0) ? "+1" : "-1";
    }
    return out;
}

}  // namespace spinv
