#include "doctest.h"

#include <cmath>

#include "mqlearn/oracle.hpp"

using namespace mqlearn;

namespace {

Concept xor_concept(int n) {
    return Concept(make_named(Family::parity, n), ProductDistribution::uniform(n, 1));
}

}  // namespace

TEST_CASE("membership queries on deterministic concepts") {
    Concept c = xor_concept(4);
    MQOracle oracle(c);
    Rng rng = make_rng(1);
    for (uint32_t idx = 0; idx < 16; ++idx)
        CHECK(oracle.mq(Point{idx, 4}, rng) == c.table().eval_idx(idx));
    CHECK(oracle.mq_calls() == 16);
    CHECK(oracle.distinct_points() == 16);

    oracle.mq(Point{3, 4}, rng);
    CHECK(oracle.mq_calls() == 17);
    CHECK(oracle.distinct_points() == 16);
    CHECK(oracle.duplicate_calls() == 1);
}

TEST_CASE("probabilistic concepts: degenerate and cached behavior") {
    int n = 3;
    std::vector<double> always_plus(8, 1.0);
    Concept sure(always_plus, ProductDistribution::uniform(n, 1));
    MQOracle oracle(sure);
    Rng rng = make_rng(2);
    for (uint32_t idx = 0; idx < 8; ++idx) CHECK(oracle.mq(Point{idx, n}, rng) == 1);

    std::vector<double> fair(8, 0.5);
    Concept coin(fair, ProductDistribution::uniform(n, 1));
    MQOracle cached(coin);
    int first = cached.mq(Point{5, n}, rng);
    for (int i = 0; i < 20; ++i) CHECK(cached.mq(Point{5, n}, rng) == first);
}

TEST_CASE("first answers at a fair point average to zero across oracles") {
    int n = 3;
    std::vector<double> fair(8, 0.5);
    Concept coin(fair, ProductDistribution::uniform(n, 1));
    Rng rng = make_rng(4);
    int trials = 10000;
    long sum = 0;
    for (int i = 0; i < trials; ++i) {
        MQOracle oracle(coin);
        sum += oracle.mq(Point{2, n}, rng);
    }
    CHECK(std::abs(static_cast<double>(sum) / trials) < 0.05);
}

TEST_CASE("labelled examples agree with the concept") {
    Concept c = xor_concept(4);
    MQOracle oracle(c);
    Rng rng = make_rng(6);
    long agree = 0;
    int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        auto [z, label] = oracle.ex(rng);
        agree += label * c.table().eval(z);
    }
    CHECK(static_cast<double>(agree) / draws > 0.95);
    CHECK(oracle.ex_calls() == static_cast<uint64_t>(draws));
    CHECK(oracle.mq_calls() == 0);

    // Point-mass marginal: every example shares the same point.
    std::vector<std::vector<double>> blocks{{0, 0, 0, 0, 0, 0, 1, 0}};
    Concept fixed(make_named(Family::parity, 3),
                  ProductDistribution(3, 1, blocks, Permutation::identity(3)));
    MQOracle fixed_oracle(fixed);
    for (int i = 0; i < 20; ++i) CHECK(fixed_oracle.ex(rng).first.bits == 6);

    // All-minus labels.
    std::vector<double> never(16, 0.0);
    Concept flip(never, ProductDistribution::uniform(4, 1));
    MQOracle flip_oracle(flip);
    for (int i = 0; i < 20; ++i) CHECK(flip_oracle.ex(rng).second == -1);
}

TEST_CASE("equivalence oracle policies") {
    TruthTable target = make_named(Family::parity, 4);
    EQOracle eq(target);
    CHECK(!eq.eq(target).has_value());

    TruthTable off = target;
    off.flip_bit(5);
    auto cex = eq.eq(off);
    REQUIRE(cex.has_value());
    CHECK(cex->bits == 5);

    // Any point is a valid counterexample for the negated table.
    EQOracle random_eq(target, CounterexamplePolicy::seeded_random, 7);
    auto any = random_eq.eq(negated(target));
    REQUIRE(any.has_value());
    CHECK(off.eval(*any) == off.eval(*any));  // in-range point
    CHECK(random_eq.eq_calls() == 1);
}
