#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mqlearn/learner.hpp"
#include "mqlearn/oracle.hpp"

namespace mqlearn {

struct BoostParams {
    LearnerParams weak;
    double epsilon = 0.1;
    // Margin step added per accepted round; zero means alpha / 2.
    double step = 0.0;
    // Hard round cap; zero means ceil(8 / alpha^2) * ceil(log2(1/epsilon)).
    uint64_t rounds_cap = 0;
    // Plateau stop: no trace improvement above `plateau_tol` within the
    // last `plateau_window` rounds. Zero window disables it.
    uint64_t plateau_window = 5;
    double plateau_tol = 0.01;
    // Fresh relabeled examples per round for the weak-edge probe.
    uint64_t edge_probe = 2048;
    // Labelled holdout draws for the per-round trace when no exact table
    // is supplied.
    uint64_t holdout = 4096;

    double step_size() const;
    uint64_t round_limit() const;
};

struct BoostRound {
    uint64_t round = 0;
    double weak_edge = 0.0;   // probe of E[h_t * y] under the relabeled oracle
    double correlation = 0.0; // sign(g_t) against the concept (trace metric)
    bool skipped = false;
};

struct BoostResult {
    TruthTable hypothesis;
    std::vector<BoostRound> trace;
    std::vector<std::pair<double, LookupHypothesis>> ensemble;
    uint64_t rounds_run = 0;
    uint64_t retries = 0;
};

// Margin state of the booster: g_t as a lazily filled sum of step-scaled
// weak hypotheses over the points touched so far.
class BoosterState {
public:
    BoosterState(double step, int arity);

    double margin(Point z) const;
    void add_round(const LookupHypothesis& h);
    uint64_t rounds() const { return ensemble_.size(); }
    const std::vector<std::pair<double, LookupHypothesis>>& ensemble() const { return ensemble_; }

    int sign_at(Point z) const { return margin(z) >= 0.0 ? 1 : -1; }
    TruthTable materialize_sign() const;

private:
    double step_;
    int n_;
    std::vector<std::pair<double, LookupHypothesis>> ensemble_;
    mutable std::unordered_map<uint32_t, double> cache_;
};

// Oracle view with the same unlabelled-example marginal but labels passed
// through the capped-linear reweighting: the base label is kept with
// probability clamp(1 - margin * label / 2, 0, 1), otherwise replaced by a
// fresh coin. Label coins come from a private stream so the example
// marginal consumes the caller's randomness exactly as the base sampler.
class RelabeledOracle : public LabeledOracle {
public:
    RelabeledOracle(MQOracle& base, const BoosterState& state, uint64_t coin_seed);

    int arity() const override;
    int mq(Point z, Rng& rng) override;
    std::pair<Point, int> ex(Rng& rng) override;

private:
    int relabel(Point z, Rng& rng);

    MQOracle* base_;
    const BoosterState* state_;
    Rng coin_rng_;
    std::unordered_map<uint32_t, int> cache_;
};

double relabel_keep_probability(double margin_times_label);

// Distribution-specific boosting: repeatedly runs the amplified weak
// learner against the relabeled oracle and accumulates the margin. The
// returned table is the sign of the final margin. When `exact_trace` is
// set, per-round correlations are computed against it exactly; otherwise
// they are estimated on holdout examples.
BoostResult boost(MQOracle& oracle, const ProductDistribution& rho, const BoostParams& params, Rng& rng,
                  const TruthTable* exact_trace = nullptr);

}  // namespace mqlearn
