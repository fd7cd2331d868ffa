#include "mqlearn/compress.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace mqlearn {

namespace {

using nlohmann::json;

// Block-space keys a hypothesis can touch: the union of its design regions.
std::unordered_set<uint32_t> needed_keys(const LookupHypothesis& h) {
    std::unordered_set<uint32_t> keys;
    int parties = h.parties();
    int len = h.arity() / parties;
    uint32_t block_mask = (uint32_t{1} << len) - 1;
    Permutation identity = Permutation::identity(h.arity());
    for (uint32_t a = 0; a < h.eval_rows(); ++a) {
        PartialAssignment pa;
        pa.n = h.arity();
        for (int i = 0; i < parties; ++i) {
            if (design_bit(a, parties, i) != design_bit(h.fill_rows(), parties, i)) continue;
            int shift = (parties - 1 - i) * len;
            pa.mask |= block_mask << shift;
            pa.value |= h.slices()[i] << shift;
        }
        for_each_consistent(pa, identity, [&](uint32_t point, uint32_t) { keys.insert(point); });
    }
    return keys;
}

}  // namespace

CompressedCircuit::CompressedCircuit(int n, std::vector<std::pair<double, LookupHypothesis>> ensemble,
                                     std::vector<std::pair<uint32_t, int>> patches)
    : n_(n), ensemble_(std::move(ensemble)), patches_(std::move(patches)) {
    std::sort(patches_.begin(), patches_.end());
}

int CompressedCircuit::eval(Point z) const {
    if (z.n != n_) throw std::invalid_argument("point arity does not match circuit");
    auto it = std::lower_bound(patches_.begin(), patches_.end(), std::pair<uint32_t, int>{z.bits, -2});
    if (it != patches_.end() && it->first == z.bits) return it->second;
    if (ensemble_.empty()) return 1;
    double margin = 0.0;
    for (const auto& [step, h] : ensemble_) margin += step * h.eval(z);
    return margin >= 0.0 ? 1 : -1;
}

TruthTable CompressedCircuit::materialize() const {
    TruthTable f(n_);
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        f.set_bit(idx, label_to_bit(eval(Point{idx, n_})));
    return f;
}

uint64_t CompressedCircuit::stored_entries() const {
    uint64_t total = 0;
    for (const auto& [step, h] : ensemble_) total += needed_keys(h).size();
    return total;
}

double default_compression_epsilon(int n) {
    double exponent = std::ceil(std::pow(static_cast<double>(n), 0.99));
    return std::max(std::exp2(-exponent), std::exp2(-static_cast<double>(n)));
}

CompressResult compress(const TruthTable& table, const CompressParams& params, Rng& rng) {
    int n = table.arity();
    Concept target(table, ProductDistribution::uniform(n, params.parties));
    MQOracle oracle(target);

    BoostParams boost_params = params.boost;
    boost_params.weak.parties = params.parties;
    boost_params.epsilon = params.epsilon > 0.0 ? params.epsilon : default_compression_epsilon(n);
    BoostResult boosted = boost(oracle, target.marginal(), boost_params, rng, &table);

    std::vector<std::pair<uint32_t, int>> patches;
    for (uint32_t idx = 0; idx < table.size(); ++idx)
        if (boosted.hypothesis.bit(idx) != table.bit(idx))
            patches.emplace_back(idx, table.eval_idx(idx));

    CompressedCircuit circuit(n, std::move(boosted.ensemble), std::move(patches));
    CompressResult result{std::move(circuit), {}, oracle.mq_calls()};
    result.report = size_report(result.circuit);
    return result;
}

SizeReport size_report(const CompressedCircuit& circuit) {
    SizeReport report;
    report.entries = circuit.stored_entries();
    report.patches = circuit.patches().size();
    // Per-hypothesis wiring: slices, signs, and the fill string.
    uint64_t overhead = 1;
    for (const auto& [step, h] : circuit.ensemble())
        overhead += static_cast<uint64_t>(h.parties()) + (uint64_t{1} << h.parties()) + 1;
    report.total = report.entries + report.patches + overhead;
    report.ratio = static_cast<double>(report.total) / std::exp2(circuit.arity());
    report.incompressible = report.ratio >= 0.5;
    return report;
}

void write_circuit(std::ostream& out, const CompressedCircuit& circuit) {
    json j;
    j["n"] = circuit.arity();
    j["ensemble"] = json::array();
    for (const auto& [step, h] : circuit.ensemble()) {
        json jh;
        jh["step"] = step;
        jh["parties"] = h.parties();
        jh["fill_rows"] = h.fill_rows();
        jh["slices"] = h.slices();
        jh["signs"] = h.signs();
        jh["sigma"] = h.sigma().map();
        std::vector<std::pair<uint32_t, int>> entries;
        for (uint32_t key : needed_keys(h)) entries.emplace_back(key, h.table().labels.at(key));
        std::sort(entries.begin(), entries.end());
        jh["table"] = entries;
        j["ensemble"].push_back(std::move(jh));
    }
    j["patches"] = circuit.patches();
    out << j.dump() << '\n';
}

CompressedCircuit read_circuit(std::istream& in) {
    json j;
    in >> j;
    int n = j.at("n").get<int>();
    std::vector<std::pair<double, LookupHypothesis>> ensemble;
    for (const auto& jh : j.at("ensemble")) {
        auto store = std::make_shared<LabelStore>();
        for (const auto& entry : jh.at("table"))
            store->labels[entry.at(0).get<uint32_t>()] = entry.at(1).get<int>();
        LookupHypothesis h(n, jh.at("parties").get<int>(),
                           Permutation(jh.at("sigma").get<std::vector<int>>()),
                           jh.at("fill_rows").get<uint32_t>(),
                           jh.at("slices").get<std::vector<uint32_t>>(),
                           jh.at("signs").get<std::vector<int>>(), std::move(store));
        ensemble.emplace_back(jh.at("step").get<double>(), std::move(h));
    }
    auto patches = j.at("patches").get<std::vector<std::pair<uint32_t, int>>>();
    return CompressedCircuit(n, std::move(ensemble), std::move(patches));
}

}  // namespace mqlearn
