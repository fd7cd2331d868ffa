#include "mqlearn/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mqlearn {

double BoostParams::step_size() const { return step > 0.0 ? step : weak.effective_alpha() / 2.0; }

uint64_t BoostParams::round_limit() const {
    if (rounds_cap > 0) return rounds_cap;
    double a = weak.effective_alpha();
    double rounds = std::ceil(8.0 / (a * a));
    double passes = std::ceil(std::log2(1.0 / epsilon));
    return static_cast<uint64_t>(rounds * std::max(1.0, passes));
}

BoosterState::BoosterState(double step, int arity) : step_(step), n_(arity) {}

double BoosterState::margin(Point z) const {
    auto it = cache_.find(z.bits);
    if (it != cache_.end()) return it->second;
    double m = 0.0;
    for (const auto& [scale, h] : ensemble_) m += scale * h.eval(z);
    cache_.emplace(z.bits, m);
    return m;
}

void BoosterState::add_round(const LookupHypothesis& h) {
    for (auto& [bits, m] : cache_) m += step_ * h.eval(Point{bits, n_});
    ensemble_.emplace_back(step_, h);
}

TruthTable BoosterState::materialize_sign() const {
    TruthTable f(n_);
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        f.set_bit(idx, label_to_bit(sign_at(Point{idx, n_})));
    return f;
}

double relabel_keep_probability(double margin_times_label) {
    return std::clamp(1.0 - margin_times_label / 2.0, 0.0, 1.0);
}

RelabeledOracle::RelabeledOracle(MQOracle& base, const BoosterState& state, uint64_t coin_seed)
    : base_(&base), state_(&state), coin_rng_(make_rng(coin_seed)) {}

int RelabeledOracle::arity() const { return base_->arity(); }

int RelabeledOracle::relabel(Point z, Rng& rng) {
    auto it = cache_.find(z.bits);
    if (it != cache_.end()) return it->second;
    int label = base_->mq(z, rng);
    double keep = relabel_keep_probability(state_->margin(z) * label);
    int out = uniform01(coin_rng_) < keep ? label : rand_sign(coin_rng_);
    cache_.emplace(z.bits, out);
    return out;
}

int RelabeledOracle::mq(Point z, Rng& rng) { return relabel(z, rng); }

std::pair<Point, int> RelabeledOracle::ex(Rng& rng) {
    Point z = base_->target().marginal().sample(rng);
    return {z, relabel(z, rng)};
}

namespace {

double trace_correlation(const BoosterState& state, MQOracle& oracle, const TruthTable* exact,
                         uint64_t holdout, Rng& rng) {
    if (exact) {
        double acc = 0.0;
        int n = exact->arity();
        for (uint32_t idx = 0; idx < exact->size(); ++idx)
            acc += state.sign_at(Point{idx, n}) * exact->eval_idx(idx);
        return acc / static_cast<double>(exact->size());
    }
    int64_t acc = 0;
    for (uint64_t i = 0; i < holdout; ++i) {
        auto [z, label] = oracle.ex(rng);
        acc += state.sign_at(z) * label;
    }
    return static_cast<double>(acc) / static_cast<double>(holdout);
}

}  // namespace

BoostResult boost(MQOracle& oracle, const ProductDistribution& rho, const BoostParams& params, Rng& rng,
                  const TruthTable* exact_trace) {
    double step = params.step_size();
    double alpha = params.weak.effective_alpha();
    uint64_t limit = params.round_limit();
    BoosterState state(step, oracle.arity());
    std::vector<BoostRound> trace;
    uint64_t retries = 0;

    for (uint64_t round = 0; round < limit; ++round) {
        BoostRound record;
        record.round = round;

        // One weak attempt plus a single retry on a failed round.
        std::optional<LookupHypothesis> accepted;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            RelabeledOracle view(oracle, state, rng());
            AmplifyResult amp = amplify(view, rho, params.weak, rng);
            double edge = 0.0;
            if (params.edge_probe > 0) {
                int64_t acc = 0;
                for (uint64_t i = 0; i < params.edge_probe; ++i) {
                    auto [z, label] = view.ex(rng);
                    acc += amp.hypothesis.eval(z) * label;
                }
                edge = static_cast<double>(acc) / static_cast<double>(params.edge_probe);
            }
            record.weak_edge = edge;
            if (params.edge_probe == 0 || edge > alpha / 4.0) {
                accepted = std::move(amp.hypothesis);
            } else if (attempt == 0) {
                ++retries;
            }
        }

        if (accepted) {
            state.add_round(*accepted);
        } else {
            record.skipped = true;
        }
        record.correlation = trace_correlation(state, oracle, exact_trace, params.holdout, rng);
        trace.push_back(record);

        // Two skipped rounds in a row: no residual signal for the weak learner.
        if (record.skipped && trace.size() >= 2 && trace[trace.size() - 2].skipped) break;
        // Nothing the hypothesis class could add beyond this.
        if (record.correlation >= 1.0 - params.epsilon / 2.0) break;
        if (params.plateau_window > 0 && trace.size() > params.plateau_window) {
            double recent = trace[trace.size() - 1 - params.plateau_window].correlation;
            if (record.correlation <= recent + params.plateau_tol) break;
        }
    }

    BoostResult result{state.materialize_sign(), std::move(trace), state.ensemble(),
                       state.rounds(), retries};
    return result;
}

}  // namespace mqlearn
