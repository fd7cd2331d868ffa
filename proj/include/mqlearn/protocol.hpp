#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/distrib.hpp"

namespace mqlearn {

// Equal-size assignment of the n variables to `parties` blocks.
class Partition {
public:
    Partition(int n, int parties, std::vector<int> owner);
    static Partition contiguous(int n, int parties);
    static Partition random(int n, int parties, Rng& rng);

    int arity() const { return n_; }
    int parties() const { return parties_; }
    int block_len() const { return n_ / parties_; }
    int owner(int var) const { return owner_[var]; }
    const std::vector<int>& variables_of(int party) const { return vars_of_[party]; }

    // Index of x restricted to what `speaker` sees (all blocks but its own),
    // contiguous over the visible variables in ascending order.
    uint32_t visible_index(uint32_t x, int speaker) const;

    // Permutation mapping contiguous block layout to this partition's
    // variable positions (block i slot s feeds party i's s-th variable).
    Permutation to_sigma() const;

    bool operator==(const Partition&) const = default;

private:
    int n_;
    int parties_;
    std::vector<int> owner_;
    std::vector<std::vector<int>> vars_of_;
};

// Deterministic number-on-forehead protocol as a binary broadcast tree.
// Each internal node names a speaker and an explicit message table over the
// speaker's visible input; the transmitted bit selects the child. The last
// transmitted bit is the output, so the leaf under bit b carries label
// (-1)^b; cost is the maximum number of bits on any root-to-leaf path.
class NOFProtocol {
public:
    struct Node {
        int speaker;
        std::vector<uint8_t> message;  // indexed by visible_index
        int child[2];                  // >= 0: node index; -1: leaf (label forced by bit)
    };
    static constexpr int leaf = -1;

    NOFProtocol(Partition partition, std::vector<Node> nodes);

    const Partition& partition() const { return part_; }
    int parties() const { return part_.parties(); }
    int arity() const { return part_.arity(); }
    int cost() const { return cost_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    int run(Point x) const;
    // Transcript bits, for visibility tests.
    std::vector<std::pair<int, int>> run_transcript(Point x) const;

    TruthTable materialize() const;

private:
    Partition part_;
    std::vector<Node> nodes_;
    int cost_;
};

// Cost-1 protocol that always outputs `label` (a broadcast of a constant bit).
NOFProtocol constant_protocol(const Partition& partition, int label);
// Cost-1 protocol where some non-owner party broadcasts variable `var`.
NOFProtocol bit_broadcast_protocol(const Partition& partition, int var);
// Cost-2 protocol computing the parity of all n bits.
NOFProtocol parity_protocol(const Partition& partition);

bool verify_computes(const NOFProtocol& pi, const TruthTable& f);

// Checks a protocol family (one protocol per partition) against f on a
// partition sweep: the contiguous partition, its block-to-party relabelings,
// and `extra_random` seeded random partitions.
bool verify_class_membership(const std::function<NOFProtocol(const Partition&)>& builder,
                             const TruthTable& f, int parties, int extra_random, uint64_t seed);

// Public-coin protocol: one deterministic member per coin string.
class RandomizedNOFProtocol {
public:
    explicit RandomizedNOFProtocol(std::vector<NOFProtocol> members);

    const std::vector<NOFProtocol>& members() const { return members_; }
    int cost() const;

    // max over inputs of the fraction of coins with a wrong output.
    double error_against(const TruthTable& f) const;

private:
    std::vector<NOFProtocol> members_;
};

}  // namespace mqlearn
