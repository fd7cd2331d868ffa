#include "mqlearn/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace mqlearn {

Partition::Partition(int n, int parties, std::vector<int> owner)
    : n_(n), parties_(parties), owner_(std::move(owner)), vars_of_(parties) {
    if (parties < 1 || n % parties != 0) throw std::invalid_argument("party count must divide n");
    if (static_cast<int>(owner_.size()) != n) throw std::invalid_argument("owner list has wrong size");
    for (int j = 0; j < n; ++j) {
        if (owner_[j] < 0 || owner_[j] >= parties) throw std::invalid_argument("owner out of range");
        vars_of_[owner_[j]].push_back(j);
    }
    for (const auto& vars : vars_of_)
        if (static_cast<int>(vars.size()) != block_len())
            throw std::invalid_argument("partition blocks must have equal size");
}

Partition Partition::contiguous(int n, int parties) {
    std::vector<int> owner(n);
    int len = n / parties;
    for (int j = 0; j < n; ++j) owner[j] = j / len;
    return Partition(n, parties, std::move(owner));
}

Partition Partition::random(int n, int parties, Rng& rng) {
    std::vector<int> owner(n);
    int len = n / parties;
    for (int j = 0; j < n; ++j) owner[j] = j / len;
    for (int j = n - 1; j > 0; --j) {
        int i = static_cast<int>(rng() % static_cast<uint64_t>(j + 1));
        std::swap(owner[j], owner[i]);
    }
    return Partition(n, parties, std::move(owner));
}

uint32_t Partition::visible_index(uint32_t x, int speaker) const {
    uint32_t out = 0;
    for (int j = 0; j < n_; ++j) {
        if (owner_[j] == speaker) continue;
        out = (out << 1) | static_cast<uint32_t>(bit_at(x, n_, j));
    }
    return out;
}

Permutation Partition::to_sigma() const {
    // sigma[var] = slot of var in the contiguous block layout.
    std::vector<int> map(n_);
    for (int i = 0; i < parties_; ++i) {
        const auto& vars = vars_of_[i];
        for (size_t s = 0; s < vars.size(); ++s) map[vars[s]] = i * block_len() + static_cast<int>(s);
    }
    return Permutation(std::move(map));
}

NOFProtocol::NOFProtocol(Partition partition, std::vector<Node> nodes)
    : part_(std::move(partition)), nodes_(std::move(nodes)), cost_(0) {
    if (nodes_.empty()) throw std::invalid_argument("protocol needs at least one broadcast");
    size_t visible_size = size_t{1} << (part_.arity() - part_.block_len());
    for (const auto& node : nodes_) {
        if (node.speaker < 0 || node.speaker >= part_.parties())
            throw std::invalid_argument("speaker out of range");
        if (node.message.size() != visible_size)
            throw std::invalid_argument("message table must cover the speaker's visible inputs");
        for (uint8_t b : node.message)
            if (b > 1) throw std::invalid_argument("message bits must be 0/1");
        for (int c : node.child)
            if (c != leaf && (c < 0 || c >= static_cast<int>(nodes_.size())))
                throw std::invalid_argument("child index out of range");
    }
    // Depth via DFS; also rejects cycles (children must have larger index).
    std::vector<int> depth(nodes_.size(), 0);
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
        int d = 0;
        for (int c : nodes_[i].child) {
            if (c == leaf) continue;
            if (c <= i) throw std::invalid_argument("protocol tree must be topologically ordered");
            d = std::max(d, depth[c]);
        }
        depth[i] = 1 + d;
    }
    cost_ = depth[0];
}

int NOFProtocol::run(Point x) const {
    if (x.n != arity()) throw std::invalid_argument("input arity does not match protocol");
    int node = 0;
    while (true) {
        const Node& cur = nodes_[node];
        int bit = cur.message[part_.visible_index(x.bits, cur.speaker)];
        int next = cur.child[bit];
        if (next == leaf) return bit_to_label(bit);
        node = next;
    }
}

std::vector<std::pair<int, int>> NOFProtocol::run_transcript(Point x) const {
    if (x.n != arity()) throw std::invalid_argument("input arity does not match protocol");
    std::vector<std::pair<int, int>> transcript;
    int node = 0;
    while (node != leaf) {
        const Node& cur = nodes_[node];
        int bit = cur.message[part_.visible_index(x.bits, cur.speaker)];
        transcript.emplace_back(cur.speaker, bit);
        node = cur.child[bit];
    }
    return transcript;
}

TruthTable NOFProtocol::materialize() const {
    TruthTable f(arity());
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        f.set_bit(idx, label_to_bit(run(Point{idx, arity()})));
    return f;
}

NOFProtocol constant_protocol(const Partition& partition, int label) {
    size_t visible_size = size_t{1} << (partition.arity() - partition.block_len());
    NOFProtocol::Node root{0, std::vector<uint8_t>(visible_size, static_cast<uint8_t>(label_to_bit(label))),
                           {NOFProtocol::leaf, NOFProtocol::leaf}};
    return NOFProtocol(partition, {root});
}

NOFProtocol bit_broadcast_protocol(const Partition& partition, int var) {
    int speaker = (partition.owner(var) + 1) % partition.parties();
    int n = partition.arity();
    size_t visible_size = size_t{1} << (n - partition.block_len());
    std::vector<uint8_t> msg(visible_size);
    // Position of var among the speaker's visible variables.
    int pos = 0;
    for (int j = 0; j < var; ++j)
        if (partition.owner(j) != speaker) ++pos;
    int visible_bits = n - partition.block_len();
    for (uint32_t v = 0; v < visible_size; ++v) msg[v] = static_cast<uint8_t>(bit_at(v, visible_bits, pos));
    NOFProtocol::Node root{speaker, std::move(msg), {NOFProtocol::leaf, NOFProtocol::leaf}};
    return NOFProtocol(partition, {root});
}

NOFProtocol parity_protocol(const Partition& partition) {
    int n = partition.arity();
    int visible_bits = n - partition.block_len();
    size_t visible_size = size_t{1} << visible_bits;

    auto visible_parity = [&](int /*speaker*/, uint32_t v) {
        int acc = 0;
        for (int j = 0; j < visible_bits; ++j) acc ^= bit_at(v, visible_bits, j);
        return acc;
    };

    // Party 0 announces the parity of everything it sees; party 1 completes
    // with the parity of block 0 folded into the transcript bit.
    std::vector<NOFProtocol::Node> nodes(3);
    std::vector<uint8_t> first(visible_size);
    for (uint32_t v = 0; v < visible_size; ++v) first[v] = static_cast<uint8_t>(visible_parity(0, v));
    nodes[0] = NOFProtocol::Node{0, std::move(first), {1, 2}};

    for (int transcript_bit = 0; transcript_bit <= 1; ++transcript_bit) {
        std::vector<uint8_t> msg(visible_size);
        for (uint32_t v = 0; v < visible_size; ++v) {
            // Party 1 sees block 0; the visible string excludes block 1 only.
            int block0_parity = 0;
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                if (partition.owner(j) == 1) continue;
                if (partition.owner(j) == 0) block0_parity ^= bit_at(v, visible_bits, pos);
                ++pos;
            }
            msg[v] = static_cast<uint8_t>(block0_parity ^ transcript_bit);
        }
        nodes[1 + transcript_bit] =
            NOFProtocol::Node{1, std::move(msg), {NOFProtocol::leaf, NOFProtocol::leaf}};
    }
    return NOFProtocol(partition, std::move(nodes));
}

bool verify_computes(const NOFProtocol& pi, const TruthTable& f) {
    if (pi.arity() != f.arity()) throw std::invalid_argument("arity mismatch");
    return pi.materialize() == f;
}

bool verify_class_membership(const std::function<NOFProtocol(const Partition&)>& builder,
                             const TruthTable& f, int parties, int extra_random, uint64_t seed) {
    int n = f.arity();
    std::vector<Partition> sweep;
    Partition base = Partition::contiguous(n, parties);
    // Block-to-party relabelings of the contiguous partition.
    std::vector<int> relabel(parties);
    for (int i = 0; i < parties; ++i) relabel[i] = i;
    do {
        std::vector<int> owner(n);
        for (int j = 0; j < n; ++j) owner[j] = relabel[base.owner(j)];
        sweep.emplace_back(n, parties, std::move(owner));
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    Rng rng = make_rng(seed);
    for (int i = 0; i < extra_random; ++i) sweep.push_back(Partition::random(n, parties, rng));

    for (const auto& part : sweep)
        if (!verify_computes(builder(part), f)) return false;
    return true;
}

RandomizedNOFProtocol::RandomizedNOFProtocol(std::vector<NOFProtocol> members)
    : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("empty protocol family");
    for (const auto& m : members_)
        if (!(m.partition() == members_.front().partition()))
            throw std::invalid_argument("family members must share the partition");
}

int RandomizedNOFProtocol::cost() const {
    int c = 0;
    for (const auto& m : members_) c = std::max(c, m.cost());
    return c;
}

double RandomizedNOFProtocol::error_against(const TruthTable& f) const {
    if (f.arity() != members_.front().arity()) throw std::invalid_argument("arity mismatch");
    double worst = 0.0;
    for (uint32_t idx = 0; idx < f.size(); ++idx) {
        int wrong = 0;
        for (const auto& m : members_)
            if (m.run(Point{idx, f.arity()}) != f.eval_idx(idx)) ++wrong;
        worst = std::max(worst, static_cast<double>(wrong) / static_cast<double>(members_.size()));
    }
    return worst;
}

}  // namespace mqlearn
