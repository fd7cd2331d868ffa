#include "doctest.h"

#include <set>
#include <string>

#include "mqlearn/design.hpp"

using namespace mqlearn;

namespace {

// Projection by literal string concatenation, as an independent oracle.
std::string naive_project(const SeedTable& table, uint32_t a) {
    std::string out;
    for (int i = 0; i < table.parties(); ++i) {
        int row = design_bit(a, table.parties(), i);
        if (!table.filled(row, i)) {
            out += std::string(table.block_len(), '*');
            continue;
        }
        uint32_t v = table.cell(row, i);
        for (int j = 0; j < table.block_len(); ++j)
            out += bit_at(v, table.block_len(), j) ? '1' : '0';
    }
    return out;
}

std::string assignment_string(const PartialAssignment& pa) {
    std::string out;
    for (int j = 0; j < pa.n; ++j) {
        uint32_t bit = uint32_t{1} << (pa.n - 1 - j);
        if (!(pa.mask & bit))
            out += '*';
        else
            out += (pa.value & bit) ? '1' : '0';
    }
    return out;
}

}  // namespace

TEST_CASE("projection matches the fill rule") {
    // n=4, k=2, fill rows b=(0,1): row 0 of block 1, row 1 of block 2.
    SeedTable table(2, 2, 0b01, {0b10, 0b11});

    PartialAssignment full = table.project(0b01);
    CHECK(full.star_count() == 0);
    CHECK(assignment_string(full) == "1011");

    PartialAssignment starred = table.project(0b00);
    CHECK(starred.star_count() == 2);
    CHECK(assignment_string(starred) == "10**");

    // Projecting at the fill string itself returns the seeds exactly.
    CHECK(assignment_string(table.project(0b01)) == "1011");
    CHECK(table.project(0b01).consistent_count() == 1);
}

TEST_CASE("projection agrees with naive concatenation on random tables") {
    Rng rng = make_rng(50);
    for (int trial = 0; trial < 20; ++trial) {
        int parties = 2 + static_cast<int>(rng() % 2);
        int len = 2;
        uint32_t fill = rand_bits(rng, parties);
        std::vector<uint32_t> slices;
        for (int i = 0; i < parties; ++i) slices.push_back(rand_bits(rng, len));
        SeedTable table(parties, len, fill, slices);
        for (uint32_t a = 0; a < uint32_t{1} << parties; ++a)
            CHECK(assignment_string(table.project(a)) == naive_project(table, a));
    }
}

TEST_CASE("consistent-point enumeration") {
    // pa = x1||** with x1 = (1,0), identity sigma.
    PartialAssignment pa{4, 0b1100, 0b1000};
    auto points = enumerate_consistent(pa, Permutation::identity(4));
    REQUIRE(points.size() == 4);
    CHECK(points[0].bits == 0b1000);
    CHECK(points[1].bits == 0b1001);
    CHECK(points[2].bits == 0b1010);
    CHECK(points[3].bits == 0b1011);

    // Zero stars: the single point, pushed through sigma.
    PartialAssignment fixed{4, 0b1111, 0b0110};
    auto single = enumerate_consistent(fixed, Permutation::reversal(4));
    REQUIRE(single.size() == 1);
    CHECK(single[0].bits == 0b0110);  // a palindrome mask; reversal fixes it

    // All stars: the whole cube.
    PartialAssignment open{3, 0, 0};
    CHECK(enumerate_consistent(open, Permutation::identity(3)).size() == 8);
}

TEST_CASE("dedup enumeration skips covered points") {
    // Restrictions {**||v} then {u||**}: the overlap point u||v is skipped.
    QueryHistory history(2, 2);
    std::vector<uint32_t> seen;
    dedup_enumerate({{1, 0b11}, {0, 0b10}}, history, Permutation::identity(4),
                    [&](uint32_t point, uint32_t) { seen.push_back(point); });
    CHECK(seen.size() == 7);
    std::set<uint32_t> unique(seen.begin(), seen.end());
    CHECK(unique.size() == 7);
    CHECK(unique.count(0b1011) == 1);  // emitted once, by the first restriction

    // A repeated restriction contributes nothing.
    std::vector<uint32_t> more;
    dedup_enumerate({{1, 0b11}}, history, Permutation::identity(4),
                    [&](uint32_t point, uint32_t) { more.push_back(point); });
    CHECK(more.empty());
}

TEST_CASE("dedup across runs matches a set-union oracle") {
    Rng rng = make_rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        int parties = 2;
        int len = 3;
        QueryHistory history(parties, len);
        Permutation sigma = Permutation::random(parties * len, rng);
        std::set<uint32_t> oracle_union;
        uint64_t emitted = 0;
        for (int run = 0; run < 4; ++run) {
            std::vector<BlockRestriction> restrictions;
            for (int i = parties - 1; i >= 0; --i)
                restrictions.push_back(BlockRestriction{i, rand_bits(rng, len)});
            std::set<uint32_t> before = oracle_union;
            for (const auto& r : restrictions) {
                PartialAssignment pa = restriction_assignment(r, parties, len);
                for_each_consistent(pa, sigma,
                                    [&](uint32_t, uint32_t query) { oracle_union.insert(query); });
            }
            uint64_t expect_new = oracle_union.size() - before.size();
            uint64_t got = 0;
            std::set<uint32_t> fresh;
            dedup_enumerate(restrictions, history, sigma, [&](uint32_t, uint32_t query) {
                ++got;
                CHECK(fresh.insert(query).second);       // no repeats within the stream
                CHECK(before.count(query) == 0);         // no repeats across runs
            });
            CHECK(got == expect_new);
            emitted += got;
        }
        CHECK(emitted == oracle_union.size());
    }
}

TEST_CASE("query points map through sigma") {
    QueryHistory history(2, 2);
    Permutation sigma = Permutation::reversal(4);
    dedup_enumerate({{0, 0b10}}, history, sigma, [&](uint32_t point, uint32_t query) {
        CHECK(query == permute_bits(sigma, point));
    });
}
