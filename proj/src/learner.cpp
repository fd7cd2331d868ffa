#include "mqlearn/learner.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "mqlearn/norm.hpp"

namespace mqlearn {

double weak_advantage(double gamma, int cost, int parties) {
    return gamma * std::ldexp(1.0, -cost * (1 << parties) - parties);
}

double LearnerParams::effective_alpha() const {
    double a = alpha > 0.0 ? alpha : weak_advantage(gamma, cost, parties);
    if (a <= 0.0 || a > gamma) throw std::invalid_argument("advantage must satisfy 0 < alpha <= gamma");
    return a;
}

uint64_t LearnerParams::candidate_count() const {
    if (candidates > 0) return candidates;
    double a = effective_alpha();
    return static_cast<uint64_t>(std::ceil(16.0 / (a * a)));
}

uint64_t LearnerParams::validation_count() const {
    if (validation > 0) return validation;
    double a = effective_alpha();
    return static_cast<uint64_t>(std::ceil(16.0 / (a * a)));
}

LookupHypothesis::LookupHypothesis(int n, int parties, Permutation sigma, uint32_t fill_rows,
                                   std::vector<uint32_t> slices, std::vector<int> signs,
                                   std::shared_ptr<const LabelStore> table)
    : n_(n),
      parties_(parties),
      sigma_(std::move(sigma)),
      sigma_inv_(invert_perm(sigma_)),
      fill_rows_(fill_rows),
      slices_(std::move(slices)),
      signs_(std::move(signs)),
      table_(std::move(table)) {
    if (static_cast<int>(slices_.size()) != parties_) throw std::invalid_argument("slice count mismatch");
    if (signs_.size() != size_t{1} << parties_) throw std::invalid_argument("sign count mismatch");
}

uint32_t LookupHypothesis::table_key(uint32_t design_index, const uint32_t* z_blocks) const {
    int len = n_ / parties_;
    uint32_t concat = 0;
    for (int i = 0; i < parties_; ++i) {
        bool fill_row = design_bit(design_index, parties_, i) == design_bit(fill_rows_, parties_, i);
        concat = (concat << len) | (fill_row ? slices_[i] : z_blocks[i]);
    }
    return concat;
}

int LookupHypothesis::eval(Point z) const {
    if (z.n != n_) throw std::invalid_argument("point arity does not match hypothesis");
    int len = n_ / parties_;
    uint32_t unpermuted = sigma_.is_identity() ? z.bits : permute_bits(sigma_inv_, z.bits);
    std::array<uint32_t, 16> z_blocks;
    for (int i = 0; i < parties_; ++i) z_blocks[i] = block_of(unpermuted, i, parties_, len);

    uint32_t eval_row = eval_rows();
    int value = 1;
    for (uint32_t a = 0; a < eval_row; ++a) {
        auto it = table_->labels.find(table_key(a, z_blocks.data()));
        if (it == table_->labels.end())
            throw std::logic_error("lookup table is missing a preprocessed point");
        value *= it->second;
    }
    for (uint32_t a = eval_row; a < signs_.size(); ++a) value *= signs_[a];
    return value * signs_[eval_row];
}

int LookupHypothesis::eval_cancelled(Point z) const {
    int len = n_ / parties_;
    uint32_t unpermuted = sigma_.is_identity() ? z.bits : permute_bits(sigma_inv_, z.bits);
    std::array<uint32_t, 16> z_blocks;
    for (int i = 0; i < parties_; ++i) z_blocks[i] = block_of(unpermuted, i, parties_, len);

    uint32_t eval_row = eval_rows();
    int value = 1;
    for (uint32_t a = 0; a < eval_row; ++a) value *= table_->labels.at(table_key(a, z_blocks.data()));
    for (uint32_t a = eval_row + 1; a < signs_.size(); ++a) value *= signs_[a];
    return value;
}

TruthTable LookupHypothesis::materialize() const {
    TruthTable f(n_);
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        f.set_bit(idx, label_to_bit(eval(Point{idx, n_})));
    return f;
}

LookupHypothesis weak_learn_once(LabeledOracle& oracle, const ProductDistribution& rho,
                                 const LearnerParams& params, QueryHistory& history, Rng& rng) {
    int n = oracle.arity();
    int parties = params.parties;
    if (rho.arity() != n) throw std::invalid_argument("distribution arity does not match oracle");
    if (rho.block_count() != parties)
        throw std::invalid_argument("distribution must be a product over the party blocks");
    int len = n / parties;
    const Permutation& sigma = rho.sigma();
    Permutation sigma_inv = invert_perm(sigma);

    // Two unlabelled samples, unpermuted and sliced into the 2k seed blocks.
    uint32_t sample0 = permute_bits(sigma_inv, rho.sample(rng).bits);
    uint32_t sample1 = permute_bits(sigma_inv, rho.sample(rng).bits);

    uint32_t fill_rows = rand_bits(rng, parties);
    std::vector<int> signs(size_t{1} << parties);
    for (auto& s : signs) s = rand_sign(rng);

    std::vector<uint32_t> slices(parties);
    for (int i = 0; i < parties; ++i) {
        uint32_t source = design_bit(fill_rows, parties, i) ? sample1 : sample0;
        slices[i] = block_of(source, i, parties, len);
    }

    // Blocks read by some design index below the eval row, gathered in the
    // paper's order (last block first).
    uint32_t eval_row = complement_bits(fill_rows, parties);
    std::vector<BlockRestriction> restrictions;
    for (int i = parties - 1; i >= 0; --i) {
        bool needed = false;
        for (uint32_t a = 0; a < eval_row && !needed; ++a)
            needed = design_bit(a, parties, i) == design_bit(fill_rows, parties, i);
        if (needed) restrictions.push_back(BlockRestriction{i, slices[i]});
    }

    dedup_enumerate(restrictions, history, sigma, [&](uint32_t point, uint32_t query) {
        history.labels->labels.emplace(point, oracle.mq(Point{query, n}, rng));
    });

    return LookupHypothesis(n, parties, sigma, fill_rows, std::move(slices), std::move(signs),
                            history.labels);
}

LookupHypothesis weak_learn_once(LabeledOracle& oracle, const ProductDistribution& rho,
                                 const LearnerParams& params, Rng& rng) {
    QueryHistory history(params.parties, oracle.arity() / params.parties);
    return weak_learn_once(oracle, rho, params, history, rng);
}

AdvantageEstimate measure_advantage(const Concept& target, const ProductDistribution& rho,
                                    const LearnerParams& params, uint64_t runs,
                                    uint64_t points_per_run, Rng& rng) {
    AdvantageEstimate est;
    uint64_t agreements = 0;
    for (uint64_t run = 0; run < runs; ++run) {
        MQOracle oracle(target);
        uint64_t before = oracle.mq_calls();
        LookupHypothesis h = weak_learn_once(oracle, rho, params, rng);
        est.max_run_queries = std::max(est.max_run_queries, oracle.mq_calls() - before);
        for (uint64_t p = 0; p < points_per_run; ++p) {
            auto [z, label] = oracle.ex(rng);
            if (h.eval(z) == label) ++agreements;
        }
    }
    est.draws = runs * points_per_run;
    est.agreement = static_cast<double>(agreements) / static_cast<double>(est.draws);
    est.halfwidth = chernoff_halfwidth(est.draws, 0.05);
    return est;
}

AmplifyResult amplify(LabeledOracle& oracle, const ProductDistribution& rho,
                      const LearnerParams& params, Rng& rng) {
    uint64_t candidates = params.candidate_count();
    uint64_t validation = params.validation_count();
    QueryHistory history(params.parties, oracle.arity() / params.parties);

    auto* counting = dynamic_cast<MQOracle*>(&oracle);
    uint64_t mq_before = counting ? counting->mq_calls() : 0;
    uint64_t dup_before = counting ? counting->duplicate_calls() : 0;

    std::optional<LookupHypothesis> best;
    uint64_t best_score = 0;
    for (uint64_t c = 0; c < candidates; ++c) {
        LookupHypothesis h = weak_learn_once(oracle, rho, params, history, rng);
        uint64_t score = 0;
        for (uint64_t v = 0; v < validation; ++v) {
            auto [z, label] = oracle.ex(rng);
            if (h.eval(z) == label) ++score;
        }
        if (!best || score > best_score) {
            best = std::move(h);
            best_score = score;
        }
    }

    AmplifyResult result{std::move(*best),
                         static_cast<double>(best_score) / static_cast<double>(validation), candidates,
                         0, 0};
    if (counting) {
        result.mq_calls = counting->mq_calls() - mq_before;
        result.duplicate_mq_calls = counting->duplicate_calls() - dup_before;
    }
    return result;
}

}  // namespace mqlearn
