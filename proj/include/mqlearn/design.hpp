#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/distrib.hpp"

namespace mqlearn {

// Design indices and fill strings are k-bit values, bit for block i at
// position k-1-i so that "<" is the list order of the design loop.
inline int design_bit(uint32_t value, int parties, int block) {
    return (value >> (parties - 1 - block)) & 1u;
}

inline uint32_t complement_bits(uint32_t value, int parties) {
    return ~value & ((uint32_t{1} << parties) - 1);
}

// Partial assignment of n bits in block space: fixed positions carry
// `value` bits under `mask`, the rest are free.
struct PartialAssignment {
    int n = 0;
    uint32_t mask = 0;
    uint32_t value = 0;

    int star_count() const;
    uint64_t consistent_count() const { return uint64_t{1} << star_count(); }
};

// The 2 x k slice table of the preprocessing stage: cell [row][block]
// holds an n/k-bit slice or is unfilled.
class SeedTable {
public:
    SeedTable(int parties, int block_len, uint32_t fill_rows, const std::vector<uint32_t>& slices);

    int parties() const { return parties_; }
    int block_len() const { return block_len_; }
    int arity() const { return parties_ * block_len_; }
    uint32_t fill_rows() const { return fill_rows_; }

    bool filled(int row, int block) const { return cells_[block][row].has_value(); }
    uint32_t cell(int row, int block) const { return *cells_[block][row]; }
    void place(int row, int block, uint32_t slice);

    // Concatenation of row selections: cell [a_i][i] per block, unfilled
    // cells contributing stars.
    PartialAssignment project(uint32_t design_index) const;

private:
    int parties_;
    int block_len_;
    uint32_t fill_rows_;
    std::vector<std::array<std::optional<uint32_t>, 2>> cells_;
};

// Emits sigma(completion) for every completion of pa, ascending by the
// completed index. Callback receives (block-space point, query point).
void for_each_consistent(const PartialAssignment& pa, const Permutation& sigma,
                         const std::function<void(uint32_t, uint32_t)>& fn);

std::vector<Point> enumerate_consistent(const PartialAssignment& pa, const Permutation& sigma);

// All membership queries ever answered, keyed by block-space index.
struct LabelStore {
    std::unordered_map<uint32_t, int> labels;
};

// Representative log shared across the runs of one learner instance:
// rep (block i, value v) records that every point with block i equal to v
// has been enumerated before.
class QueryHistory {
public:
    QueryHistory(int parties, int block_len);

    int parties() const { return parties_; }
    int block_len() const { return block_len_; }
    bool known_rep(int block, uint32_t value) const { return reps_[block].count(value) > 0; }
    void add_rep(int block, uint32_t value) { reps_[block].insert(value); }
    // True when some logged representative already covers the point.
    bool covered(uint32_t point) const;

    std::shared_ptr<LabelStore> labels;

private:
    int parties_;
    int block_len_;
    std::vector<std::unordered_set<uint32_t>> reps_;
};

// One block restriction: all blocks free except `block` fixed to `value`.
struct BlockRestriction {
    int block;
    uint32_t value;
};

PartialAssignment restriction_assignment(const BlockRestriction& r, int parties, int block_len);

// Streams the union of the given block restrictions, skipping every point
// covered by an earlier representative (within this call or a prior run
// logged in `history`). Each restriction's representative is logged once
// its points have been emitted.
void dedup_enumerate(const std::vector<BlockRestriction>& restrictions, QueryHistory& history,
                     const Permutation& sigma, const std::function<void(uint32_t, uint32_t)>& fn);

}  // namespace mqlearn
