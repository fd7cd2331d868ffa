#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/distrib.hpp"

namespace mqlearn {

// A concept is a distribution over {0,1}^n x {-1,+1}: an unlabelled-example
// marginal plus per-point label conditionals. The deterministic case stores
// a truth table; the probabilistic case stores Pr[label=+1] per point.
class Concept {
public:
    Concept(TruthTable table, ProductDistribution marginal);
    Concept(std::vector<double> plus_prob, ProductDistribution marginal);

    int arity() const { return n_; }
    bool deterministic() const { return std::holds_alternative<TruthTable>(labels_); }
    const TruthTable& table() const { return std::get<TruthTable>(labels_); }
    const ProductDistribution& marginal() const { return marginal_; }

    double plus_prob(Point z) const;
    int sample_label(Point z, Rng& rng) const;

    // Same labels over a different unlabelled-example marginal.
    Concept with_marginal(ProductDistribution marginal) const;

private:
    int n_;
    std::variant<TruthTable, std::vector<double>> labels_;
    ProductDistribution marginal_;
};

// Oracle surface the learner sees: membership queries plus labelled examples.
class LabeledOracle {
public:
    virtual ~LabeledOracle() = default;
    virtual int arity() const = 0;
    virtual int mq(Point z, Rng& rng) = 0;
    virtual std::pair<Point, int> ex(Rng& rng) = 0;
};

// Membership-query oracle with query accounting. With caching on (the
// default), the first answer at each point is pinned, so a probabilistic
// concept behaves like a deterministic one within a run.
class MQOracle : public LabeledOracle {
public:
    explicit MQOracle(const Concept& target, bool caching = true);

    int arity() const override { return concept_->arity(); }
    int mq(Point z, Rng& rng) override;
    std::pair<Point, int> ex(Rng& rng) override;

    uint64_t mq_calls() const { return mq_calls_; }
    uint64_t ex_calls() const { return ex_calls_; }
    uint64_t distinct_points() const { return seen_.size(); }
    uint64_t duplicate_calls() const { return mq_calls_ - seen_.size(); }
    const Concept& target() const { return *concept_; }

private:
    int label_at(Point z, Rng& rng);

    const Concept* concept_;
    bool caching_;
    std::unordered_map<uint32_t, int> cache_;
    std::unordered_set<uint32_t> seen_;
    uint64_t mq_calls_ = 0;
    uint64_t ex_calls_ = 0;
};

enum class CounterexamplePolicy { lowest_index, seeded_random };

// Equivalence-query oracle for a deterministic target.
class EQOracle {
public:
    EQOracle(const TruthTable& target, CounterexamplePolicy policy = CounterexamplePolicy::lowest_index,
             uint64_t seed = 0);

    // Empty on success, otherwise a disagreement point chosen by the policy.
    std::optional<Point> eq(const TruthTable& hypothesis);

    uint64_t eq_calls() const { return eq_calls_; }

private:
    const TruthTable* target_;
    CounterexamplePolicy policy_;
    Rng rng_;
    uint64_t eq_calls_ = 0;
};

}  // namespace mqlearn
