#include "doctest.h"

#include <cmath>
#include <vector>

#include "mqlearn/distrib.hpp"

using namespace mqlearn;

TEST_CASE("permutation application and inversion") {
    Permutation id = Permutation::identity(4);
    CHECK(apply_perm(id, Point{0b1010, 4}) == Point{0b1010, 4});

    // p = (2,1) on 2 bits swaps the positions.
    Permutation swap2({1, 0});
    CHECK(apply_perm(swap2, Point{0b10, 2}) == Point{0b01, 2});

    Rng rng = make_rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Permutation p = Permutation::random(6, rng);
        Point z{rand_bits(rng, 6), 6};
        CHECK(apply_perm(invert_perm(p), apply_perm(p, z)) == z);
    }

    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("product distribution mass") {
    auto uniform = ProductDistribution::uniform(4, 2);
    for (uint32_t idx = 0; idx < 16; ++idx)
        CHECK(uniform.mass(Point{idx, 4}) == doctest::Approx(1.0 / 16.0));

    // Point-mass blocks concentrate on a single point.
    std::vector<std::vector<double>> blocks{{0, 0, 1, 0}, {0, 1, 0, 0}};
    ProductDistribution pointy(4, 2, blocks, Permutation::identity(4));
    for (uint32_t idx = 0; idx < 16; ++idx)
        CHECK(pointy.mass(Point{idx, 4}) == doctest::Approx(idx == 0b1001 ? 1.0 : 0.0));

    // Two Bernoulli(1/4 on bit 1) blocks: mass of sigma(1,1) = 1/16.
    auto bern = ProductDistribution::bernoulli_blocks(2, 2, {0.25, 0.25});
    CHECK(bern.mass(Point{0b11, 2}) == doctest::Approx(1.0 / 16.0));

    CHECK_THROWS_AS(ProductDistribution(4, 2, {{0.5, 0.5, 0.5, 0.5}, {1, 0, 0, 0}},
                                        Permutation::identity(4)),
                    std::invalid_argument);
}

TEST_CASE("total mass sums to one") {
    Rng rng = make_rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 8;
        std::vector<std::vector<double>> blocks;
        for (int i = 0; i < 2; ++i) {
            std::vector<double> m(16);
            double sum = 0;
            for (auto& v : m) {
                v = uniform01(rng) + 0.01;
                sum += v;
            }
            for (auto& v : m) v /= sum;
            blocks.push_back(m);
        }
        ProductDistribution rho(n, 2, blocks, Permutation::random(n, rng));
        double total = 0;
        for (uint32_t idx = 0; idx < uint32_t{1} << n; ++idx) total += rho.mass(Point{idx, n});
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("sampler respects degenerate blocks and the permutation") {
    Rng rng = make_rng(9);

    // Uniform blocks, identity sigma: every output bit is a fair coin.
    auto uniform = ProductDistribution::uniform(6, 3);
    std::vector<int> ones(6, 0);
    int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        Point z = uniform.sample(rng);
        for (int j = 0; j < 6; ++j) ones[j] += bit_at(z.bits, 6, j);
    }
    for (int j = 0; j < 6; ++j) {
        // 4 sigma band around 1/2.
        double dev = std::abs(ones[j] - draws / 2.0);
        CHECK(dev < 4.0 * std::sqrt(draws * 0.25));
    }

    // First block a point mass on zeros: those bits of the unpermuted
    // sample are always zero.
    std::vector<std::vector<double>> blocks{{1, 0, 0, 0}, {0.25, 0.25, 0.25, 0.25}};
    ProductDistribution degenerate(4, 2, blocks, Permutation::random(4, rng));
    Permutation inv = invert_perm(degenerate.sigma());
    for (int i = 0; i < 200; ++i) {
        Point z = degenerate.sample(rng);
        uint32_t u = permute_bits(inv, z.bits);
        CHECK(block_of(u, 0, 2, 2) == 0);
    }

    // t=2, n=4, block 2 point mass on (1,1), sigma = reversal: outputs
    // always start with bits (1,1).
    std::vector<std::vector<double>> rev_blocks{{0.25, 0.25, 0.25, 0.25}, {0, 0, 0, 1}};
    ProductDistribution reversed(4, 2, rev_blocks, Permutation::reversal(4));
    for (int i = 0; i < 100; ++i) {
        Point z = reversed.sample(rng);
        CHECK(bit_at(z.bits, 4, 0) == 1);
        CHECK(bit_at(z.bits, 4, 1) == 1);
    }
}

TEST_CASE("empirical block frequencies match the mass function") {
    Rng rng = make_rng(33);
    auto rho = ProductDistribution::bernoulli_blocks(6, 2, {0.3, 0.8});
    int draws = 100000;
    std::vector<int> counts(64, 0);
    for (int i = 0; i < draws; ++i) ++counts[rho.sample(rng).bits];
    for (uint32_t idx = 0; idx < 64; ++idx) {
        double p = rho.mass(Point{idx, 6});
        double sd = std::sqrt(draws * p * (1 - p));
        CHECK(std::abs(counts[idx] - draws * p) <= 4.0 * sd + 1.0);
    }
}

TEST_CASE("alignment re-cuts blocks and pads to the party count") {
    // 4-product regrouped into 2 parties: tensor of adjacent blocks.
    auto rho4 = ProductDistribution::bernoulli_blocks(8, 4, {0.1, 0.4, 0.6, 0.9});
    ProductDistribution rho2 = align_to_parties(rho4, 2);
    CHECK(rho2.block_count() == 2);
    CHECK(rho2.arity() == 8);
    for (uint32_t idx = 0; idx < 256; ++idx)
        CHECK(rho2.mass(Point{idx, 8}) == doctest::Approx(rho4.mass(Point{idx, 8})));

    // Pad 7 bits to 8: appended bit is fixed to zero.
    auto rho7 = ProductDistribution::uniform(7, 1);
    ProductDistribution padded = align_to_parties(rho7, 2);
    CHECK(padded.arity() == 8);
    CHECK(padded.block_count() == 2);
    double total = 0.0;
    for (uint32_t idx = 0; idx < 256; ++idx) {
        double m = padded.mass(Point{idx, 8});
        if (idx & 1u)
            CHECK(m == doctest::Approx(0.0));
        else
            CHECK(m == doctest::Approx(1.0 / 128.0));
        total += m;
    }
    CHECK(total == doctest::Approx(1.0));

    // A correlated block that straddles the new boundary cannot be re-cut.
    std::vector<double> corr_block{0.5, 0.0, 0.0, 0.5};  // bits equal with prob 1
    ProductDistribution correlated(4, 2, {corr_block, corr_block}, Permutation::identity(4));
    CHECK_THROWS_AS(align_to_parties(correlated, 4), std::invalid_argument);

    // Aligned input comes back unchanged.
    auto rho = ProductDistribution::uniform(8, 2);
    CHECK(align_to_parties(rho, 2).block_count() == 2);
}

TEST_CASE("joint distribution sampling matches its mass") {
    Rng rng = make_rng(17);
    JointDistribution d = JointDistribution::random(5, rng);
    double total = 0.0;
    for (uint32_t idx = 0; idx < 32; ++idx) total += d.mass(Point{idx, 5});
    CHECK(total == doctest::Approx(1.0));

    int draws = 50000;
    std::vector<int> counts(32, 0);
    for (int i = 0; i < draws; ++i) ++counts[d.sample(rng).bits];
    for (uint32_t idx = 0; idx < 32; ++idx) {
        double p = d.mass(Point{idx, 5});
        CHECK(std::abs(counts[idx] - draws * p) <= 4.0 * std::sqrt(draws * p * (1 - p)) + 1.0);
    }
}
