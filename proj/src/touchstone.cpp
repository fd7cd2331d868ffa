#include "mqlearn/touchstone.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mqlearn {

namespace {

template <typename Coeff>
void check_monomials(int n, int degree, const std::vector<Monomial<Coeff>>& monomials) {
    if (n < 1 || n > TruthTable::max_arity) throw std::invalid_argument("arity out of range");
    if (degree < 0) throw std::invalid_argument("negative degree");
    for (const auto& m : monomials) {
        if (m.vars >> n) throw std::invalid_argument("monomial uses a variable beyond the arity");
        if (std::popcount(m.vars) > degree) throw std::invalid_argument("monomial beyond the degree");
    }
}

// Monomial masks address variables by index (bit j of the mask = x_{j+1}),
// while points keep x_1 most significant.
inline bool monomial_on(uint32_t vars, uint32_t x, int n) {
    uint32_t present = 0;
    for (int j = 0; j < n; ++j)
        present |= static_cast<uint32_t>(bit_at(x, n, j)) << j;
    return (present & vars) == vars;
}

}  // namespace

PTF::PTF(int n, int degree, std::vector<Monomial<double>> monomials)
    : n_(n), degree_(degree), monomials_(std::move(monomials)) {
    check_monomials(n_, degree_, monomials_);
}

double PTF::polynomial_value(uint32_t x) const {
    double acc = 0.0;
    for (const auto& m : monomials_)
        if (monomial_on(m.vars, x, n_)) acc += m.coeff;
    return acc;
}

int PTF::eval(Point x) const {
    if (x.n != n_) throw std::invalid_argument("point arity does not match instance");
    return eval_bits(x.bits);
}

SymPlus::SymPlus(int n, int degree, int64_t size, std::vector<Monomial<int64_t>> monomials,
                 std::map<int64_t, int> theta, int default_sign)
    : n_(n),
      degree_(degree),
      size_(size),
      monomials_(std::move(monomials)),
      theta_(std::move(theta)),
      default_sign_(default_sign) {
    check_monomials(n_, degree_, monomials_);
    if (size_ < 0) throw std::invalid_argument("negative size bound");
    for (const auto& m : monomials_)
        if (std::abs(m.coeff) > size_) throw std::invalid_argument("coefficient beyond the size bound");
    for (const auto& [value, sign] : theta_)
        if (sign != 1 && sign != -1) throw std::invalid_argument("theta must map to +/-1");
    if (default_sign_ != 1 && default_sign_ != -1) throw std::invalid_argument("bad default sign");
}

int64_t SymPlus::polynomial_value(uint32_t x) const {
    int64_t acc = 0;
    for (const auto& m : monomials_)
        if (monomial_on(m.vars, x, n_)) acc += m.coeff;
    return acc;
}

int SymPlus::eval_bits(uint32_t x) const {
    auto it = theta_.find(polynomial_value(x));
    return it != theta_.end() ? it->second : default_sign_;
}

int SymPlus::eval(Point x) const {
    if (x.n != n_) throw std::invalid_argument("point arity does not match instance");
    return eval_bits(x.bits);
}

namespace {

template <typename Gate>
void validate_circuit(const GateCircuit<Gate>& c) {
    if (c.n < 1 || c.n > TruthTable::max_arity) throw std::invalid_argument("arity out of range");
    if (c.gates.empty()) throw std::invalid_argument("circuit needs at least one gate");
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const auto& gate = c.gates[g];
        if (gate.fn.arity() != static_cast<int>(gate.wires.size()))
            throw std::invalid_argument("gate arity does not match its wire list");
        for (int w : gate.wires) {
            bool var = w >= 0 && w < c.n;
            bool earlier = w >= c.n && w - c.n < static_cast<int>(g);
            if (!var && !earlier) throw std::invalid_argument("gate wired to an unavailable value");
        }
    }
}

template <typename Gate>
int eval_circuit(const GateCircuit<Gate>& c, uint32_t x) {
    std::vector<int> gate_bit(c.gates.size());
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const auto& gate = c.gates[g];
        int m = static_cast<int>(gate.wires.size());
        uint32_t input = 0;
        for (int pos = 0; pos < m; ++pos) {
            int w = gate.wires[pos];
            int bit = w < c.n ? bit_at(x, c.n, w) : gate_bit[w - c.n];
            input |= static_cast<uint32_t>(bit) << (m - 1 - pos);
        }
        gate_bit[g] = label_to_bit(gate.fn.eval_bits(input));
    }
    return bit_to_label(gate_bit.back());
}

inline int encode_leaf(int label) { return tree_leaf(label); }
inline int decode_leaf(int child) { return tree_leaf_label(child); }

template <typename Query>
void validate_tree(const QueryTree<Query>& t) {
    if (t.n < 1 || t.n > TruthTable::max_arity) throw std::invalid_argument("arity out of range");
    if (t.leaf_label != 1 && t.leaf_label != -1) throw std::invalid_argument("bad leaf label");
    std::vector<int> depth(t.nodes.size(), 0);
    for (int i = static_cast<int>(t.nodes.size()) - 1; i >= 0; --i) {
        const auto& node = t.nodes[i];
        if (node.query.arity() != t.n) throw std::invalid_argument("query arity does not match tree");
        int d = 0;
        for (int c : node.child) {
            if (c < 0) {
                if (c != encode_leaf(1) && c != encode_leaf(-1))
                    throw std::invalid_argument("bad leaf encoding");
                continue;
            }
            if (c <= i || c >= static_cast<int>(t.nodes.size()))
                throw std::invalid_argument("tree children must be topologically ordered");
            d = std::max(d, depth[c]);
        }
        depth[i] = 1 + d;
    }
    if (!t.nodes.empty() && depth[0] > t.depth_bound)
        throw std::invalid_argument("tree exceeds its depth bound");
}

template <typename Query>
int eval_tree(const QueryTree<Query>& t, uint32_t x) {
    if (t.nodes.empty()) return t.leaf_label;
    int node = 0;
    while (true) {
        const auto& cur = t.nodes[node];
        int next = cur.child[cur.query.eval_bits(x) > 0 ? 0 : 1];
        if (next < 0) return decode_leaf(next);
        node = next;
    }
}

}  // namespace

int class_arity(const ClassInstance& instance) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PTF> || std::is_same_v<T, SymPlus>)
                return v.arity();
            else
                return v.n;
        },
        instance);
}

void validate_class(const ClassInstance& instance) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PTFCircuit> || std::is_same_v<T, SymPlusCircuit>)
                validate_circuit(v);
            else if constexpr (std::is_same_v<T, PTFDecisionTree> || std::is_same_v<T, SymPlusDecisionTree>)
                validate_tree(v);
            else
                (void)v;  // scalar gates validate in their constructors
        },
        instance);
}

int eval_class(const ClassInstance& instance, Point x) {
    if (x.n != class_arity(instance)) throw std::invalid_argument("point arity does not match instance");
    return std::visit(
        [&](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PTF> || std::is_same_v<T, SymPlus>)
                return v.eval_bits(x.bits);
            else if constexpr (std::is_same_v<T, PTFCircuit> || std::is_same_v<T, SymPlusCircuit>)
                return eval_circuit(v, x.bits);
            else
                return eval_tree(v, x.bits);
        },
        instance);
}

TruthTable materialize_class(const ClassInstance& instance) {
    int n = class_arity(instance);
    TruthTable f(n);
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        f.set_bit(idx, label_to_bit(eval_class(instance, Point{idx, n})));
    return f;
}

SymPlus ptf_as_sym_plus(const PTF& ptf) {
    std::vector<Monomial<int64_t>> monomials;
    int64_t bound = 0;
    for (const auto& m : ptf.monomials()) {
        auto coeff = static_cast<int64_t>(m.coeff);
        if (static_cast<double>(coeff) != m.coeff)
            throw std::invalid_argument("only integer-coefficient threshold functions embed exactly");
        monomials.push_back(Monomial<int64_t>{m.vars, coeff});
        bound = std::max(bound, std::abs(coeff));
    }
    // theta = sign with the >= 0 tie convention; attained values resolve
    // through the default for nonnegatives.
    std::map<int64_t, int> theta;
    SymPlus probe(ptf.arity(), ptf.degree(), bound, monomials, {}, 1);
    for (uint32_t x = 0; x < uint32_t{1} << ptf.arity(); ++x) {
        int64_t v = probe.polynomial_value(x);
        theta[v] = v >= 0 ? 1 : -1;
    }
    return SymPlus(ptf.arity(), ptf.degree(), bound, std::move(monomials), std::move(theta), 1);
}

namespace {

uint32_t random_var_set(int n, int degree, Rng& rng) {
    int width = 1 + static_cast<int>(rng() % static_cast<uint64_t>(degree));
    uint32_t vars = 0;
    while (std::popcount(vars) < width) vars |= uint32_t{1} << (rng() % static_cast<uint64_t>(n));
    return vars;
}

PTF random_ptf(int n, int degree, Rng& rng) {
    int count = 2 + static_cast<int>(rng() % 5);
    std::vector<Monomial<double>> monomials;
    monomials.push_back(Monomial<double>{0, static_cast<double>(static_cast<int64_t>(rng() % 9) - 4)});
    for (int i = 1; i < count; ++i) {
        int64_t coeff = static_cast<int64_t>(rng() % 17) - 8;
        if (coeff == 0) coeff = 1;
        monomials.push_back(Monomial<double>{random_var_set(n, degree, rng), static_cast<double>(coeff)});
    }
    return PTF(n, degree, std::move(monomials));
}

SymPlus random_sym_plus(int n, int degree, int64_t size, Rng& rng) {
    int count = 2 + static_cast<int>(rng() % 5);
    std::vector<Monomial<int64_t>> monomials;
    for (int i = 0; i < count; ++i) {
        int64_t coeff = static_cast<int64_t>(rng() % static_cast<uint64_t>(2 * size + 1)) - size;
        monomials.push_back(Monomial<int64_t>{i == 0 ? 0 : random_var_set(n, degree, rng), coeff});
    }
    SymPlus probe(n, degree, size, monomials, {}, 1);
    std::map<int64_t, int> theta;
    for (uint32_t x = 0; x < uint32_t{1} << n; ++x) {
        int64_t v = probe.polynomial_value(x);
        if (!theta.count(v)) theta[v] = rand_sign(rng);
    }
    return SymPlus(n, degree, size, std::move(monomials), std::move(theta), 1);
}

template <typename Gate, typename Maker>
GateCircuit<Gate> random_circuit(int n, int gate_count, Maker&& make_gate, Rng& rng) {
    GateCircuit<Gate> c;
    c.n = n;
    for (int g = 0; g < gate_count; ++g) {
        int fan_in = 2 + static_cast<int>(rng() % 3);
        std::vector<int> wires;
        for (int i = 0; i < fan_in; ++i) {
            int limit = n + g;
            wires.push_back(static_cast<int>(rng() % static_cast<uint64_t>(limit)));
        }
        typename GateCircuit<Gate>::GateSpec spec{make_gate(fan_in), std::move(wires)};
        c.gates.push_back(std::move(spec));
    }
    validate_circuit(c);
    return c;
}

template <typename Query, typename Maker>
QueryTree<Query> random_tree(int n, int depth, Maker&& make_query, Rng& rng) {
    QueryTree<Query> t;
    t.n = n;
    t.depth_bound = depth;
    if (depth == 0) {
        t.leaf_label = rand_sign(rng);
        return t;
    }
    // Build level by level; each node may close a branch with a leaf.
    struct Pending {
        int parent;
        int slot;
        int remaining;
    };
    std::vector<Pending> queue{{-1, 0, depth}};
    while (!queue.empty()) {
        Pending cur = queue.back();
        queue.pop_back();
        bool make_leaf = cur.remaining == 0 || (cur.parent >= 0 && rng() % 3 == 0);
        if (make_leaf) {
            if (cur.parent >= 0) t.nodes[cur.parent].child[cur.slot] = encode_leaf(rand_sign(rng));
            continue;
        }
        typename QueryTree<Query>::Node node{make_query(), {encode_leaf(1), encode_leaf(1)}};
        t.nodes.push_back(std::move(node));
        int index = static_cast<int>(t.nodes.size()) - 1;
        if (cur.parent >= 0) t.nodes[cur.parent].child[cur.slot] = index;
        queue.push_back(Pending{index, 0, cur.remaining - 1});
        queue.push_back(Pending{index, 1, cur.remaining - 1});
    }
    validate_tree(t);
    return t;
}

}  // namespace

Planted plant(const PlantSpec& spec, Rng& rng) {
    ClassInstance instance = [&]() -> ClassInstance {
        switch (spec.kind) {
            case TouchstoneKind::ptf_circuit:
                return random_circuit<PTF>(
                    spec.n, spec.gates, [&](int fan) { return random_ptf(fan, spec.degree, rng); }, rng);
            case TouchstoneKind::ptf_tree:
                return random_tree<PTF>(
                    spec.n, spec.gates, [&]() { return random_ptf(spec.n, spec.degree, rng); }, rng);
            case TouchstoneKind::symp_circuit:
                return random_circuit<SymPlus>(
                    spec.n, spec.gates,
                    [&](int fan) { return random_sym_plus(fan, spec.degree, spec.size, rng); }, rng);
            case TouchstoneKind::symp_tree:
                return random_tree<SymPlus>(
                    spec.n, spec.gates,
                    [&]() { return random_sym_plus(spec.n, spec.degree, spec.size, rng); }, rng);
        }
        throw std::invalid_argument("unknown touchstone kind");
    }();
    TruthTable table = materialize_class(instance);
    return Planted{std::move(instance), std::move(table)};
}

OptResult opt_bruteforce(const Concept& target, const std::vector<ClassInstance>& instances) {
    if (instances.empty()) throw std::invalid_argument("empty hypothesis list");
    OptResult best{-2.0, 0};
    int n = target.arity();
    for (size_t i = 0; i < instances.size(); ++i) {
        double acc = 0.0;
        for (uint32_t idx = 0; idx < uint32_t{1} << n; ++idx) {
            Point z{idx, n};
            acc += target.marginal().mass(z) * eval_class(instances[i], z) *
                   (2.0 * target.plus_prob(z) - 1.0);
        }
        if (acc > best.gamma) best = OptResult{acc, i};
    }
    return best;
}

SavingsReport savings_params(TouchstoneKind kind, int n, int degree, int64_t units, int64_t size,
                             double gamma, const SavingsConstants& constants) {
    if (n < 1 || degree < 0 || units < 0 || gamma <= 0.0 || gamma > 1.0)
        throw std::invalid_argument("savings parameters out of range");
    SavingsReport report;
    double log_gamma_inv = std::log2(1.0 / gamma);
    double m = static_cast<double>(units);
    double k = static_cast<double>(degree);
    switch (kind) {
        case TouchstoneKind::ptf_circuit:
        case TouchstoneKind::ptf_tree: {
            report.parties = degree + 1;
            double pow2k = std::ldexp(1.0, degree);
            report.cost = constants.cost * m * k * k * k * std::log2(std::max(2.0, double(n))) *
                          std::log2(std::max(2.0, m * n));
            report.savings = static_cast<double>(n) / (k + 1.0) -
                             constants.savings * (log_gamma_inv +
                                                  pow2k * m * std::log2(std::max(2.0, double(n))) *
                                                      std::log2(std::max(2.0, m * n)));
            // Randomized-protocol route: the cost budget scales with the
            // error amplification factor log(1/gamma).
            report.alpha =
                gamma * std::exp2(-report.cost * std::max(1.0, log_gamma_inv) * std::ldexp(1.0, report.parties) -
                                  report.parties);
            break;
        }
        case TouchstoneKind::symp_circuit:
        case TouchstoneKind::symp_tree: {
            report.parties = degree + 1;
            double parties = static_cast<double>(report.parties);
            double pow2k = std::ldexp(1.0, report.parties);
            report.cost = constants.cost * m * std::log2(std::max<double>(2.0, static_cast<double>(size)));
            report.savings = static_cast<double>(n) / parties - std::log2(parties) +
                             4.0 * constants.savings * (std::log2(gamma) - pow2k * report.cost + parties);
            report.alpha = gamma * std::exp2(-report.cost * pow2k - parties);
            break;
        }
    }
    report.trivial = report.savings <= 0.0;
    return report;
}

std::string to_string(TouchstoneKind kind) {
    switch (kind) {
        case TouchstoneKind::ptf_circuit: return "ptf-circuit";
        case TouchstoneKind::ptf_tree: return "ptf-tree";
        case TouchstoneKind::symp_circuit: return "symp-circuit";
        case TouchstoneKind::symp_tree: return "symp-tree";
    }
    return "unknown";
}

TouchstoneKind touchstone_kind_from_string(const std::string& name) {
    if (name == "ptf-circuit") return TouchstoneKind::ptf_circuit;
    if (name == "ptf-tree") return TouchstoneKind::ptf_tree;
    if (name == "symp-circuit") return TouchstoneKind::symp_circuit;
    if (name == "symp-tree") return TouchstoneKind::symp_tree;
    throw std::invalid_argument("unknown touchstone kind: " + name);
}

}  // namespace mqlearn
