#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mqlearn/design.hpp"
#include "mqlearn/distrib.hpp"
#include "mqlearn/oracle.hpp"

namespace mqlearn {

struct LearnerParams {
    int parties = 2;
    // Assumed touchstone correlation and protocol cost budget; alpha is
    // recomputed from these unless set explicitly.
    double gamma = 1.0;
    int cost = 2;
    double alpha = 0.0;
    // Amplifier budgets; zero means derive ceil(16 / alpha^2).
    uint64_t candidates = 0;
    uint64_t validation = 0;

    double effective_alpha() const;
    uint64_t candidate_count() const;
    uint64_t validation_count() const;
};

// Derived weak advantage gamma * 2^(-cost * 2^parties - parties).
double weak_advantage(double gamma, int cost, int parties);

// Hypothesis produced by one preprocessing run: the filled slice row, the
// hard-wired signs, and the lookup table of queried labels. Evaluation is
// total and deterministic.
class LookupHypothesis {
public:
    LookupHypothesis(int n, int parties, Permutation sigma, uint32_t fill_rows,
                     std::vector<uint32_t> slices, std::vector<int> signs,
                     std::shared_ptr<const LabelStore> table);

    int arity() const { return n_; }
    int parties() const { return parties_; }
    uint32_t fill_rows() const { return fill_rows_; }
    uint32_t eval_rows() const { return complement_bits(fill_rows_, parties_); }
    const Permutation& sigma() const { return sigma_; }
    const std::vector<uint32_t>& slices() const { return slices_; }
    const std::vector<int>& signs() const { return signs_; }
    const LabelStore& table() const { return *table_; }

    // Literal evaluation v * v' * r_eval (the eval-row sign appears in both
    // factors and cancels; the literal form is kept and tested).
    int eval(Point z) const;
    // Algebraically simplified form, for the identity check.
    int eval_cancelled(Point z) const;

    TruthTable materialize() const;

private:
    uint32_t table_key(uint32_t design_index, const uint32_t* z_blocks) const;

    int n_;
    int parties_;
    Permutation sigma_;
    Permutation sigma_inv_;
    uint32_t fill_rows_;
    std::vector<uint32_t> slices_;
    std::vector<int> signs_;
    std::shared_ptr<const LabelStore> table_;
};

// One preprocessing pass: sample two unlabelled examples, slice them, draw
// the fill string and signs, query the needed block restrictions through
// the dedup history, and wire up the hypothesis.
LookupHypothesis weak_learn_once(LabeledOracle& oracle, const ProductDistribution& rho,
                                 const LearnerParams& params, QueryHistory& history, Rng& rng);
LookupHypothesis weak_learn_once(LabeledOracle& oracle, const ProductDistribution& rho,
                                 const LearnerParams& params, Rng& rng);

struct AdvantageEstimate {
    double agreement = 0.0;   // mean of 1[h(z) = label]
    double halfwidth = 0.0;   // 95% Chernoff
    uint64_t draws = 0;
    uint64_t max_run_queries = 0;
};

// Monte Carlo estimate of the per-draw agreement of a fresh hypothesis with
// the concept, over independent (run randomness, example) pairs.
AdvantageEstimate measure_advantage(const Concept& target, const ProductDistribution& rho,
                                    const LearnerParams& params, uint64_t runs,
                                    uint64_t points_per_run, Rng& rng);

struct AmplifyResult {
    LookupHypothesis hypothesis;
    double validation_score = 0.0;  // winning agreement on validation draws
    uint64_t candidates = 0;
    uint64_t mq_calls = 0;
    uint64_t duplicate_mq_calls = 0;
};

// Trial-and-error amplification: draws candidate hypotheses through a shared
// dedup history and returns the one with the best validation agreement
// (ties to the lowest candidate index).
AmplifyResult amplify(LabeledOracle& oracle, const ProductDistribution& rho,
                      const LearnerParams& params, Rng& rng);

}  // namespace mqlearn
