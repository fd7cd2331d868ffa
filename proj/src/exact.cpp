#include "mqlearn/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace mqlearn {

namespace {

// Shared first stage: learn the target once over uniform examples.
TruthTable learn_base_hypothesis(MQOracle& mq, const ExactLearnParams& params, Rng& rng) {
    int n = mq.arity();
    BoostParams boost_params = params.learner.boost;
    boost_params.weak.parties = params.learner.parties;
    boost_params.epsilon = params.learner.epsilon > 0.0 ? params.learner.epsilon
                                                        : default_compression_epsilon(n);
    const TruthTable* exact = mq.target().deterministic() ? &mq.target().table() : nullptr;
    return boost(mq, mq.target().marginal(), boost_params, rng, exact).hypothesis;
}

}  // namespace

ExactLearnResult exact_learn(MQOracle& mq, EQOracle& eq, const ExactLearnParams& params, Rng& rng) {
    if (!mq.target().deterministic())
        throw std::invalid_argument("exact learning needs a deterministic target");
    uint64_t mq_before = mq.mq_calls();
    TruthTable hypothesis = learn_base_hypothesis(mq, params, rng);

    ExactLearnTrace trace;
    trace.initial_mistakes = hypothesis.hamming_distance(mq.target().table());
    while (true) {
        ++trace.eq_calls;
        auto counterexample = eq.eq(hypothesis);
        if (!counterexample) break;
        hypothesis.flip_bit(counterexample->bits);
        trace.patch_sequence.push_back(counterexample->bits);
    }
    trace.terminated = true;
    trace.mq_calls = mq.mq_calls() - mq_before;
    return ExactLearnResult{std::move(hypothesis), std::move(trace)};
}

uint64_t pac_di_round_samples(uint64_t round, double epsilon, double delta, double constant) {
    double count = std::ceil(
        (1.0 / epsilon) * std::log(static_cast<double>(round + 1) * (1.0 / delta) * constant));
    return count < 0.0 ? 0 : static_cast<uint64_t>(count);
}

PacDiResult pac_di_learn(MQOracle& mq, const TruthTable& target, const JointDistribution& dist,
                         const PacDiParams& params, Rng& rng) {
    if (params.epsilon <= 0.0 || params.epsilon > 1.0 || params.delta <= 0.0 || params.delta >= 1.0)
        throw std::invalid_argument("accuracy parameters out of range");
    TruthTable hypothesis = learn_base_hypothesis(mq, params.exact, rng);

    PacDiTrace trace;
    // Any hypothesis meets the accuracy target; no equivalence rounds needed.
    if (params.epsilon >= 1.0) return PacDiResult{std::move(hypothesis), std::move(trace)};
    for (uint64_t round = 0;; ++round) {
        uint64_t budget =
            pac_di_round_samples(round, params.epsilon, params.delta, params.schedule_constant);
        trace.samples_per_round.push_back(budget);
        trace.total_examples += budget;
        bool found = false;
        for (uint64_t i = 0; i < budget; ++i) {
            Point z = dist.sample(rng);
            int label = target.eval(z);
            if (hypothesis.eval(z) != label) {
                hypothesis.flip_bit(z.bits);
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return PacDiResult{std::move(hypothesis), std::move(trace)};
}

}  // namespace mqlearn
