#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mqlearn/boosting.hpp"
#include "mqlearn/compress.hpp"

namespace mqlearn {

struct ExactLearnTrace {
    uint64_t eq_calls = 0;
    uint64_t mq_calls = 0;
    std::vector<uint32_t> patch_sequence;
    bool terminated = false;
    uint32_t initial_mistakes = 0;  // Hamming distance of the pre-loop hypothesis
};

struct ExactLearnParams {
    CompressParams learner;
};

struct ExactLearnResult {
    TruthTable hypothesis;
    ExactLearnTrace trace;
};

// Learns once through the compression pipeline's learner, then repairs the
// hypothesis counterexample by counterexample until the equivalence oracle
// accepts; each patch negates the stored value at the returned point.
ExactLearnResult exact_learn(MQOracle& mq, EQOracle& eq, const ExactLearnParams& params, Rng& rng);

struct PacDiParams {
    ExactLearnParams exact;
    double epsilon = 0.1;
    double delta = 0.1;
    double schedule_constant = 2.0;  // union-bound slack in the sample schedule
};

struct PacDiTrace {
    std::vector<uint64_t> samples_per_round;
    uint64_t total_examples = 0;
};

struct PacDiResult {
    TruthTable hypothesis;
    PacDiTrace trace;
};

// Per-round simulated-equivalence sample budget.
uint64_t pac_di_round_samples(uint64_t round, double epsilon, double delta, double constant);

// Distribution-independent realizable PAC with membership queries: the
// inner learner runs over uniform MQ access; each equivalence query is
// simulated by fresh labelled draws from the target distribution.
PacDiResult pac_di_learn(MQOracle& mq, const TruthTable& target, const JointDistribution& dist,
                         const PacDiParams& params, Rng& rng);

}  // namespace mqlearn
