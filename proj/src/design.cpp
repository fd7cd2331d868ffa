#include "mqlearn/design.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace mqlearn {

int PartialAssignment::star_count() const {
    uint32_t free = ~mask & ((n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1));
    return std::popcount(free);
}

SeedTable::SeedTable(int parties, int block_len, uint32_t fill_rows, const std::vector<uint32_t>& slices)
    : parties_(parties), block_len_(block_len), fill_rows_(fill_rows), cells_(parties) {
    if (parties < 1 || parties > 16) throw std::invalid_argument("party count out of range");
    if (static_cast<int>(slices.size()) != parties)
        throw std::invalid_argument("need one preprocessing slice per block");
    for (int i = 0; i < parties; ++i) {
        if (slices[i] >> block_len) throw std::invalid_argument("slice wider than the block length");
        cells_[i][design_bit(fill_rows, parties, i)] = slices[i];
    }
}

void SeedTable::place(int row, int block, uint32_t slice) {
    if (slice >> block_len_) throw std::invalid_argument("slice wider than the block length");
    cells_[block][row] = slice;
}

PartialAssignment SeedTable::project(uint32_t design_index) const {
    PartialAssignment pa;
    pa.n = arity();
    uint32_t block_mask = (uint32_t{1} << block_len_) - 1;
    for (int i = 0; i < parties_; ++i) {
        int row = design_bit(design_index, parties_, i);
        int shift = (parties_ - 1 - i) * block_len_;
        if (cells_[i][row]) {
            pa.mask |= block_mask << shift;
            pa.value |= *cells_[i][row] << shift;
        }
    }
    return pa;
}

void for_each_consistent(const PartialAssignment& pa, const Permutation& sigma,
                         const std::function<void(uint32_t, uint32_t)>& fn) {
    if (sigma.size() != pa.n) throw std::invalid_argument("sigma arity does not match assignment");
    // Free positions from most to least significant, so completions ascend.
    std::array<int, 32> free_pos{};
    int stars = 0;
    for (int j = 0; j < pa.n; ++j) {
        uint32_t bit = uint32_t{1} << (pa.n - 1 - j);
        if (!(pa.mask & bit)) free_pos[stars++] = pa.n - 1 - j;
    }
    bool identity = sigma.is_identity();
    uint64_t total = uint64_t{1} << stars;
    for (uint64_t s = 0; s < total; ++s) {
        uint32_t point = pa.value;
        for (int b = 0; b < stars; ++b)
            point |= static_cast<uint32_t>((s >> (stars - 1 - b)) & 1u) << free_pos[b];
        fn(point, identity ? point : permute_bits(sigma, point));
    }
}

std::vector<Point> enumerate_consistent(const PartialAssignment& pa, const Permutation& sigma) {
    std::vector<Point> out;
    for_each_consistent(pa, sigma, [&](uint32_t, uint32_t query) { out.push_back(Point{query, pa.n}); });
    return out;
}

QueryHistory::QueryHistory(int parties, int block_len)
    : labels(std::make_shared<LabelStore>()), parties_(parties), block_len_(block_len), reps_(parties) {}

bool QueryHistory::covered(uint32_t point) const {
    for (int j = 0; j < parties_; ++j)
        if (reps_[j].count(block_of(point, j, parties_, block_len_))) return true;
    return false;
}

PartialAssignment restriction_assignment(const BlockRestriction& r, int parties, int block_len) {
    PartialAssignment pa;
    pa.n = parties * block_len;
    int shift = (parties - 1 - r.block) * block_len;
    pa.mask = ((uint32_t{1} << block_len) - 1) << shift;
    pa.value = r.value << shift;
    return pa;
}

void dedup_enumerate(const std::vector<BlockRestriction>& restrictions, QueryHistory& history,
                     const Permutation& sigma, const std::function<void(uint32_t, uint32_t)>& fn) {
    for (const auto& r : restrictions) {
        if (history.known_rep(r.block, r.value)) continue;
        PartialAssignment pa = restriction_assignment(r, history.parties(), history.block_len());
        for_each_consistent(pa, sigma, [&](uint32_t point, uint32_t query) {
            if (history.covered(point)) return;
            fn(point, query);
        });
        history.add_rep(r.block, r.value);
    }
}

}  // namespace mqlearn
