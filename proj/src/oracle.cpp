#include "mqlearn/oracle.hpp"

#include <stdexcept>

namespace mqlearn {

Concept::Concept(TruthTable table, ProductDistribution marginal)
    : n_(table.arity()), labels_(std::move(table)), marginal_(std::move(marginal)) {
    if (marginal_.arity() != n_) throw std::invalid_argument("marginal arity does not match concept");
}

Concept::Concept(std::vector<double> plus_prob, ProductDistribution marginal)
    : n_(marginal.arity()), labels_(std::move(plus_prob)), marginal_(std::move(marginal)) {
    const auto& p = std::get<std::vector<double>>(labels_);
    if (p.size() != size_t{1} << n_) throw std::invalid_argument("plus-probability table has wrong size");
    for (double v : p)
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("label probability outside [0,1]");
}

double Concept::plus_prob(Point z) const {
    if (z.n != n_) throw std::invalid_argument("point arity does not match concept");
    if (deterministic()) return table().eval_idx(z.bits) > 0 ? 1.0 : 0.0;
    return std::get<std::vector<double>>(labels_)[z.bits];
}

int Concept::sample_label(Point z, Rng& rng) const {
    if (deterministic()) {
        if (z.n != n_) throw std::invalid_argument("point arity does not match concept");
        return table().eval_idx(z.bits);
    }
    return uniform01(rng) < plus_prob(z) ? 1 : -1;
}

Concept Concept::with_marginal(ProductDistribution marginal) const {
    Concept copy = *this;
    if (marginal.arity() != n_) throw std::invalid_argument("marginal arity does not match concept");
    copy.marginal_ = std::move(marginal);
    return copy;
}

MQOracle::MQOracle(const Concept& target, bool caching) : concept_(&target), caching_(caching) {}

int MQOracle::label_at(Point z, Rng& rng) {
    if (caching_) {
        auto it = cache_.find(z.bits);
        if (it != cache_.end()) return it->second;
        int label = concept_->sample_label(z, rng);
        cache_.emplace(z.bits, label);
        return label;
    }
    return concept_->sample_label(z, rng);
}

int MQOracle::mq(Point z, Rng& rng) {
    if (z.n != concept_->arity()) throw std::invalid_argument("query arity does not match concept");
    ++mq_calls_;
    seen_.insert(z.bits);
    return label_at(z, rng);
}

std::pair<Point, int> MQOracle::ex(Rng& rng) {
    ++ex_calls_;
    Point z = concept_->marginal().sample(rng);
    return {z, label_at(z, rng)};
}

EQOracle::EQOracle(const TruthTable& target, CounterexamplePolicy policy, uint64_t seed)
    : target_(&target), policy_(policy), rng_(make_rng(seed)) {}

std::optional<Point> EQOracle::eq(const TruthTable& hypothesis) {
    if (hypothesis.arity() != target_->arity()) throw std::invalid_argument("hypothesis arity mismatch");
    ++eq_calls_;
    int n = target_->arity();
    if (policy_ == CounterexamplePolicy::lowest_index) {
        for (uint32_t idx = 0; idx < target_->size(); ++idx)
            if (hypothesis.bit(idx) != target_->bit(idx)) return Point{idx, n};
        return std::nullopt;
    }
    std::vector<uint32_t> diffs;
    for (uint32_t idx = 0; idx < target_->size(); ++idx)
        if (hypothesis.bit(idx) != target_->bit(idx)) diffs.push_back(idx);
    if (diffs.empty()) return std::nullopt;
    return Point{diffs[rng_() % diffs.size()], n};
}

}  // namespace mqlearn
