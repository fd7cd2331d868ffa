#include "mqlearn/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace mqlearn {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

ProductDistribution distribution_from_json(const json& j) {
    int n = j.at("n").get<int>();
    int t = j.at("t").get<int>();
    if (t < 1 || n % t != 0) throw std::runtime_error("distribution config: t must divide n");
    size_t block_size = size_t{1} << (n / t);
    std::vector<std::vector<double>> blocks;
    for (const auto& jb : j.at("blocks")) {
        if (jb.is_string() && jb.get<std::string>() == "uniform")
            blocks.emplace_back(block_size, 1.0 / static_cast<double>(block_size));
        else
            blocks.push_back(jb.get<std::vector<double>>());
    }
    Permutation sigma = j.contains("sigma") ? Permutation(j.at("sigma").get<std::vector<int>>())
                                            : Permutation::identity(n);
    return ProductDistribution(n, t, std::move(blocks), std::move(sigma));
}

json distribution_to_json(const ProductDistribution& rho) {
    json j;
    j["n"] = rho.arity();
    j["t"] = rho.block_count();
    j["sigma"] = rho.sigma().map();
    j["blocks"] = json::array();
    for (int i = 0; i < rho.block_count(); ++i) j["blocks"].push_back(rho.block_mass(i));
    return j;
}

ProductDistribution load_distribution(const std::string& path) {
    return distribution_from_json(read_json_file(path));
}

Concept concept_from_json(const json& j) {
    if (j.contains("fn")) {
        int n = j.at("n").get<int>();
        TruthTable table = make_named(j.at("fn").get<std::string>(), n);
        ProductDistribution marginal = j.contains("dist") ? distribution_from_json(j.at("dist"))
                                                          : ProductDistribution::uniform(n, 1);
        return Concept(std::move(table), std::move(marginal));
    }
    if (j.contains("table")) {
        TruthTable table = load_table(j.at("table").get<std::string>());
        int n = table.arity();
        ProductDistribution marginal = j.contains("dist") ? distribution_from_json(j.at("dist"))
                                                          : ProductDistribution::uniform(n, 1);
        return Concept(std::move(table), std::move(marginal));
    }
    if (j.contains("probabilistic")) {
        auto p = j.at("probabilistic").get<std::vector<double>>();
        if (!j.contains("dist"))
            throw std::runtime_error("probabilistic concept config needs a dist entry");
        return Concept(std::move(p), distribution_from_json(j.at("dist")));
    }
    throw std::runtime_error("concept config needs fn, table, or probabilistic");
}

Concept load_concept(const std::string& path) { return concept_from_json(read_json_file(path)); }

namespace {

template <typename Coeff>
json monomials_to_json(const std::vector<Monomial<Coeff>>& monomials) {
    json out = json::array();
    for (const auto& m : monomials) {
        std::vector<int> vars;
        for (int j = 0; j < 32; ++j)
            if (m.vars & (uint32_t{1} << j)) vars.push_back(j + 1);
        out.push_back(json{{"vars", vars}, {"coeff", m.coeff}});
    }
    return out;
}

template <typename Coeff>
std::vector<Monomial<Coeff>> monomials_from_json(const json& j) {
    std::vector<Monomial<Coeff>> out;
    for (const auto& jm : j) {
        Monomial<Coeff> m;
        m.coeff = jm.at("coeff").get<Coeff>();
        for (int v : jm.at("vars").get<std::vector<int>>()) m.vars |= uint32_t{1} << (v - 1);
        out.push_back(m);
    }
    return out;
}

json ptf_to_json(const PTF& p) {
    return json{{"class", "ptf"},
                {"n", p.arity()},
                {"degree", p.degree()},
                {"monomials", monomials_to_json(p.monomials())}};
}

PTF ptf_from_json(const json& j) {
    return PTF(j.at("n").get<int>(), j.at("degree").get<int>(),
               monomials_from_json<double>(j.at("monomials")));
}

json sym_plus_to_json(const SymPlus& s) {
    json theta = json::array();
    for (const auto& [value, sign] : s.theta()) theta.push_back(json::array({value, sign}));
    return json{{"class", "sym_plus"},
                {"n", s.arity()},
                {"degree", s.degree()},
                {"size", s.size_bound()},
                {"monomials", monomials_to_json(s.monomials())},
                {"theta", theta},
                {"default_sign", s.default_sign()}};
}

SymPlus sym_plus_from_json(const json& j) {
    std::map<int64_t, int> theta;
    for (const auto& jt : j.at("theta")) theta[jt.at(0).get<int64_t>()] = jt.at(1).get<int>();
    return SymPlus(j.at("n").get<int>(), j.at("degree").get<int>(), j.at("size").get<int64_t>(),
                   monomials_from_json<int64_t>(j.at("monomials")), std::move(theta),
                   j.value("default_sign", 1));
}

template <typename Gate>
json circuit_to_json(const GateCircuit<Gate>& c, const char* tag,
                     json (*gate_to_json)(const Gate&)) {
    json gates = json::array();
    for (const auto& g : c.gates) gates.push_back(json{{"gate", gate_to_json(g.fn)}, {"wires", g.wires}});
    return json{{"class", tag}, {"n", c.n}, {"gates", gates}};
}

template <typename Gate>
GateCircuit<Gate> circuit_from_json(const json& j, Gate (*gate_from_json)(const json&)) {
    GateCircuit<Gate> c;
    c.n = j.at("n").get<int>();
    for (const auto& jg : j.at("gates")) {
        typename GateCircuit<Gate>::GateSpec spec{gate_from_json(jg.at("gate")),
                                                  jg.at("wires").get<std::vector<int>>()};
        c.gates.push_back(std::move(spec));
    }
    return c;
}

template <typename Query>
json tree_to_json(const QueryTree<Query>& t, const char* tag, json (*query_to_json)(const Query&)) {
    json nodes = json::array();
    for (const auto& node : t.nodes) {
        json jn{{"query", query_to_json(node.query)}};
        for (int slot = 0; slot < 2; ++slot) {
            const char* key = slot == 0 ? "on_plus" : "on_minus";
            if (node.child[slot] < 0)
                jn[key] = json{{"label", tree_leaf_label(node.child[slot])}};
            else
                jn[key] = json{{"node", node.child[slot]}};
        }
        nodes.push_back(std::move(jn));
    }
    return json{{"class", tag},
                {"n", t.n},
                {"depth", t.depth_bound},
                {"nodes", nodes},
                {"leaf_label", t.leaf_label}};
}

template <typename Query>
QueryTree<Query> tree_from_json(const json& j, Query (*query_from_json)(const json&)) {
    QueryTree<Query> t;
    t.n = j.at("n").get<int>();
    t.depth_bound = j.at("depth").get<int>();
    t.leaf_label = j.value("leaf_label", 1);
    for (const auto& jn : j.at("nodes")) {
        typename QueryTree<Query>::Node node{query_from_json(jn.at("query")), {0, 0}};
        for (int slot = 0; slot < 2; ++slot) {
            const json& jc = jn.at(slot == 0 ? "on_plus" : "on_minus");
            node.child[slot] = jc.contains("label") ? tree_leaf(jc.at("label").get<int>())
                                                    : jc.at("node").get<int>();
        }
        t.nodes.push_back(std::move(node));
    }
    return t;
}

}  // namespace

json class_instance_to_json(const ClassInstance& instance) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PTF>)
                return ptf_to_json(v);
            else if constexpr (std::is_same_v<T, SymPlus>)
                return sym_plus_to_json(v);
            else if constexpr (std::is_same_v<T, PTFCircuit>)
                return circuit_to_json<PTF>(v, "ptf_circuit", ptf_to_json);
            else if constexpr (std::is_same_v<T, SymPlusCircuit>)
                return circuit_to_json<SymPlus>(v, "sym_plus_circuit", sym_plus_to_json);
            else if constexpr (std::is_same_v<T, PTFDecisionTree>)
                return tree_to_json<PTF>(v, "ptf_tree", ptf_to_json);
            else
                return tree_to_json<SymPlus>(v, "sym_plus_tree", sym_plus_to_json);
        },
        instance);
}

ClassInstance class_instance_from_json(const json& j) {
    std::string tag = j.at("class").get<std::string>();
    ClassInstance instance = [&]() -> ClassInstance {
        if (tag == "ptf") return ptf_from_json(j);
        if (tag == "sym_plus") return sym_plus_from_json(j);
        if (tag == "ptf_circuit") return circuit_from_json<PTF>(j, ptf_from_json);
        if (tag == "sym_plus_circuit") return circuit_from_json<SymPlus>(j, sym_plus_from_json);
        if (tag == "ptf_tree") return tree_from_json<PTF>(j, ptf_from_json);
        if (tag == "sym_plus_tree") return tree_from_json<SymPlus>(j, sym_plus_from_json);
        throw std::runtime_error("unknown class tag: " + tag);
    }();
    validate_class(instance);
    return instance;
}

ClassInstance load_class_instance(const std::string& path) {
    return class_instance_from_json(read_json_file(path));
}

void save_class_instance(const std::string& path, const ClassInstance& instance) {
    write_json_file(path, class_instance_to_json(instance));
}

namespace {

json protocol_node_to_json(const NOFProtocol& pi, int index) {
    const auto& node = pi.nodes()[index];
    std::string bits(node.message.size(), '0');
    for (size_t i = 0; i < node.message.size(); ++i) bits[i] = node.message[i] ? '1' : '0';
    json j{{"speaker", node.speaker}, {"message", bits}};
    for (int b = 0; b < 2; ++b) {
        const char* key = b == 0 ? "on0" : "on1";
        if (node.child[b] == NOFProtocol::leaf)
            j[key] = json{{"label", bit_to_label(b)}};
        else
            j[key] = protocol_node_to_json(pi, node.child[b]);
    }
    return j;
}

int protocol_node_from_json(const json& j, std::vector<NOFProtocol::Node>& nodes) {
    NOFProtocol::Node node;
    node.speaker = j.at("speaker").get<int>();
    std::string bits = j.at("message").get<std::string>();
    node.message.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::runtime_error("protocol message must be 0/1 bits");
        node.message.push_back(static_cast<uint8_t>(c - '0'));
    }
    int index = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    for (int b = 0; b < 2; ++b) {
        const json& jc = j.at(b == 0 ? "on0" : "on1");
        if (jc.contains("label")) {
            if (jc.at("label").get<int>() != bit_to_label(b))
                throw std::runtime_error("leaf label must equal the last transmitted bit");
            nodes[index].child[b] = NOFProtocol::leaf;
        } else {
            nodes[index].child[b] = protocol_node_from_json(jc, nodes);
        }
    }
    return index;
}

}  // namespace

json protocol_to_json(const NOFProtocol& pi) {
    std::vector<int> owner(pi.arity());
    for (int j = 0; j < pi.arity(); ++j) owner[j] = pi.partition().owner(j);
    return json{{"n", pi.arity()},
                {"parties", pi.parties()},
                {"owner", owner},
                {"tree", protocol_node_to_json(pi, 0)}};
}

NOFProtocol protocol_from_json(const json& j) {
    Partition part(j.at("n").get<int>(), j.at("parties").get<int>(),
                   j.at("owner").get<std::vector<int>>());
    std::vector<NOFProtocol::Node> nodes;
    protocol_node_from_json(j.at("tree"), nodes);
    return NOFProtocol(std::move(part), std::move(nodes));
}

NOFProtocol load_protocol(const std::string& path) { return protocol_from_json(read_json_file(path)); }

void save_protocol(const std::string& path, const NOFProtocol& pi) {
    write_json_file(path, protocol_to_json(pi));
}

uint64_t config_hash(const json& j) { return fnv1a(j.dump()); }

}  // namespace mqlearn
