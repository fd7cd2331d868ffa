#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/distrib.hpp"
#include "mqlearn/oracle.hpp"
#include "mqlearn/protocol.hpp"

namespace mqlearn {

enum class NormMethod { exact, weighted_exact, monte_carlo };

struct NormResult {
    double value = 0.0;
    NormMethod method = NormMethod::exact;
    uint64_t samples = 0;      // monte carlo only
    double halfwidth = 0.0;    // monte carlo only, 95% confidence
};

// Multiparty norm of f: the expectation, over 2k independent uniform
// block slices, of the product of f on all 2^k row recombinations.
// sigma maps contiguous block slots to variable positions.
NormResult norm_exact(const TruthTable& f, int parties, const Permutation& sigma);
NormResult norm_exact(const TruthTable& f, int parties);

// Same expectation with each block pair drawn from rho's block masses;
// rho must be a `parties`-product (its sigma fixes the variable layout).
NormResult norm_weighted(const TruthTable& f, int parties, const ProductDistribution& rho);

// Monte Carlo estimate through a membership-query oracle: each sample costs
// 2^parties queries. Halfwidth is the 95% Chernoff bound for a +/-1 mean.
NormResult norm_estimate(MQOracle& oracle, int parties, const Permutation& sigma, uint64_t samples,
                         Rng& rng);

// Smallest t/m such that a Bin(m,1/2) count deviates from its mean by t with
// probability at most delta, from the bound exp(-t^2 / (2(m/2 + t/3))).
double chernoff_halfwidth(uint64_t m, double delta);

struct CorrBoundReport {
    double lhs = 0.0;    // |E[f * pi]| over uniform inputs
    double rhs = 0.0;    // 2^cost * norm^(1/2^k), norm clamped at 0
    double norm = 0.0;
    int cost = 0;
    bool holds = false;
};

// Executable form of the multiparty correlation bound for one protocol.
CorrBoundReport check_corr_bound(const TruthTable& f, const NOFProtocol& pi);

std::string to_string(NormMethod method);

}  // namespace mqlearn
