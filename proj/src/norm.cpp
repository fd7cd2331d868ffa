#include "mqlearn/norm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mqlearn {

namespace {

void check_party_count(const TruthTable& f, int parties) {
    if (parties < 1 || parties > 16) throw std::invalid_argument("party count out of range");
    if (f.arity() % parties != 0)
        throw std::invalid_argument("party count must divide the arity (pad the function first)");
}

// Point fed to f for row-selection eps: concatenation of slices[2*i + row_i].
uint32_t recombine(const std::vector<uint32_t>& slices, uint32_t eps, int parties, int len) {
    uint32_t concat = 0;
    for (int i = 0; i < parties; ++i) {
        int row = (eps >> (parties - 1 - i)) & 1u;
        concat = (concat << len) | slices[2 * i + row];
    }
    return concat;
}

}  // namespace

NormResult norm_exact(const TruthTable& f, int parties) {
    return norm_exact(f, parties, Permutation::identity(f.arity()));
}

NormResult norm_exact(const TruthTable& f, int parties, const Permutation& sigma) {
    check_party_count(f, parties);
    int n = f.arity();
    int len = n / parties;
    uint32_t slice_space = uint32_t{1} << len;
    uint32_t combos = uint32_t{1} << parties;
    bool identity = sigma.is_identity();

    // Exact integer accounting: every seed tuple contributes +/-1.
    std::vector<uint32_t> slices(2 * parties, 0);
    int64_t sum = 0;
    uint64_t tuples = uint64_t{1} << (2 * n);
    for (uint64_t seed = 0; seed < tuples; ++seed) {
        uint64_t rest = seed;
        for (int s = 2 * parties - 1; s >= 0; --s) {
            slices[s] = static_cast<uint32_t>(rest & (slice_space - 1));
            rest >>= len;
        }
        int parity = 0;
        for (uint32_t eps = 0; eps < combos; ++eps) {
            uint32_t point = recombine(slices, eps, parties, len);
            if (!identity) point = permute_bits(sigma, point);
            parity ^= f.bit(point);
        }
        sum += parity ? -1 : 1;
    }
    return NormResult{static_cast<double>(sum) / static_cast<double>(tuples), NormMethod::exact};
}

NormResult norm_weighted(const TruthTable& f, int parties, const ProductDistribution& rho) {
    check_party_count(f, parties);
    if (rho.block_count() != parties)
        throw std::invalid_argument("distribution block count must equal the party count");
    if (rho.arity() != f.arity()) throw std::invalid_argument("distribution arity mismatch");
    int n = f.arity();
    int len = n / parties;
    uint32_t slice_space = uint32_t{1} << len;
    uint32_t combos = uint32_t{1} << parties;
    const Permutation& sigma = rho.sigma();
    bool identity = sigma.is_identity();

    std::vector<uint32_t> slices(2 * parties, 0);
    double acc = 0.0;
    uint64_t tuples = uint64_t{1} << (2 * n);
    for (uint64_t seed = 0; seed < tuples; ++seed) {
        uint64_t rest = seed;
        double weight = 1.0;
        for (int s = 2 * parties - 1; s >= 0; --s) {
            slices[s] = static_cast<uint32_t>(rest & (slice_space - 1));
            rest >>= len;
            weight *= rho.block_mass(s / 2)[slices[s]];
        }
        if (weight == 0.0) continue;
        int parity = 0;
        for (uint32_t eps = 0; eps < combos; ++eps) {
            uint32_t point = recombine(slices, eps, parties, len);
            if (!identity) point = permute_bits(sigma, point);
            parity ^= f.bit(point);
        }
        acc += parity ? -weight : weight;
    }
    return NormResult{acc, NormMethod::weighted_exact};
}

NormResult norm_estimate(MQOracle& oracle, int parties, const Permutation& sigma, uint64_t samples,
                         Rng& rng) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    int n = oracle.arity();
    if (parties < 1 || n % parties != 0) throw std::invalid_argument("party count must divide the arity");
    int len = n / parties;
    uint32_t combos = uint32_t{1} << parties;
    bool identity = sigma.is_identity();

    std::vector<uint32_t> slices(2 * parties);
    int64_t sum = 0;
    for (uint64_t s = 0; s < samples; ++s) {
        for (auto& slice : slices) slice = rand_bits(rng, len);
        int product = 1;
        for (uint32_t eps = 0; eps < combos; ++eps) {
            uint32_t point = recombine(slices, eps, parties, len);
            if (!identity) point = permute_bits(sigma, point);
            product *= oracle.mq(Point{point, n}, rng);
        }
        sum += product;
    }
    NormResult result;
    result.value = static_cast<double>(sum) / static_cast<double>(samples);
    result.method = NormMethod::monte_carlo;
    result.samples = samples;
    // A +/-1 mean moves twice as far as the underlying binomial count.
    result.halfwidth = 2.0 * chernoff_halfwidth(samples, 0.05);
    return result;
}

double chernoff_halfwidth(uint64_t m, double delta) {
    if (m < 1) throw std::invalid_argument("need at least one sample");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must be in (0,1)");
    double logterm = std::log(1.0 / delta);
    double lambda = static_cast<double>(m) / 2.0;
    // t^2 = 2 (lambda + t/3) log(1/delta), solved for the positive root.
    double b = 2.0 * logterm / 3.0;
    double t = (b + std::sqrt(b * b + 8.0 * lambda * logterm)) / 2.0;
    return t / static_cast<double>(m);
}

CorrBoundReport check_corr_bound(const TruthTable& f, const NOFProtocol& pi) {
    CorrBoundReport report;
    report.cost = pi.cost();
    // The norm is taken with respect to the protocol's own partition.
    report.norm = norm_exact(f, pi.parties(), pi.partition().to_sigma()).value;
    double clamped = report.norm < 1e-12 ? 0.0 : report.norm;
    double root = std::pow(clamped, 1.0 / static_cast<double>(uint64_t{1} << pi.parties()));
    report.rhs = std::ldexp(root, report.cost);
    report.lhs = std::abs(correlation(f, pi.materialize()));
    report.holds = report.lhs <= report.rhs + 1e-9;
    return report;
}

std::string to_string(NormMethod method) {
    switch (method) {
        case NormMethod::exact: return "exact";
        case NormMethod::weighted_exact: return "weighted-exact";
        case NormMethod::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

}  // namespace mqlearn
