#include "doctest.h"

#include <sstream>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/distrib.hpp"

using namespace mqlearn;

TEST_CASE("evaluation follows the (-1)^bit convention") {
    TruthTable one = make_named(Family::constant_one, 3);
    for (uint32_t idx = 0; idx < 8; ++idx) CHECK(one.eval_idx(idx) == 1);

    TruthTable xor2 = make_named(Family::parity, 2);
    CHECK(xor2.eval(Point{0b10, 2}) == -1);  // x = (1,0), parity 1
    CHECK(xor2.eval(Point{0b11, 2}) == 1);

    // x = (1,0,1,0): blocks u = (1,0), v = (1,0), <u,v> = 1 mod 2.
    TruthTable ip4 = make_named(Family::inner_product, 4);
    CHECK(ip4.eval(Point{0b1010, 4}) == -1);

    CHECK_THROWS_AS(ip4.eval(Point{0, 3}), std::invalid_argument);
}

TEST_CASE("named families") {
    CHECK(make_named(Family::parity, 1) == make_named(Family::dictator, 1, 1));
    CHECK(make_named("GIP2", 2) == [] {
        // One group: AND of the two bits, as a label (-1)^AND.
        TruthTable t(2);
        t.set_bit(0b11, 1);
        return t;
    }());
    CHECK(make_named(Family::inner_product, 4).count_minus_ones() == 6);
    CHECK(make_named("IP", 4) == make_named("GIP2", 4));

    CHECK_THROWS_AS(make_named(Family::inner_product, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_named(Family::gip, 8, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_named(Family::dictator, 4, 5), std::invalid_argument);
}

TEST_CASE("correlation over uniform inputs") {
    TruthTable f = make_named(Family::majority, 4);
    CHECK(correlation(f, f) == doctest::Approx(1.0));
    CHECK(correlation(f, negated(f)) == doctest::Approx(-1.0));
    CHECK(correlation(make_named(Family::parity, 2), make_named(Family::dictator, 2, 1)) ==
          doctest::Approx(0.0));
}

TEST_CASE("correlation extremes only at equality up to sign") {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        TruthTable f = make_random(5, rng);
        TruthTable g = make_random(5, rng);
        double c = correlation(f, g);
        CHECK(c <= 1.0);
        CHECK(c >= -1.0);
        if (c == 1.0) CHECK(f == g);
        if (c == -1.0) CHECK(f == negated(g));
        CHECK(correlation(negated(f), g) == doctest::Approx(-c));
        CHECK(correlation(g, f) == doctest::Approx(c));
    }
}

TEST_CASE("index round trip through bit_at") {
    int n = 6;
    Rng rng = make_rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        uint32_t idx = rand_bits(rng, n);
        uint32_t rebuilt = 0;
        for (int j = 0; j < n; ++j)
            rebuilt |= static_cast<uint32_t>(bit_at(idx, n, j)) << (n - 1 - j);
        CHECK(rebuilt == idx);
    }
}

TEST_CASE("table file round trip is bit-exact") {
    Rng rng = make_rng(3);
    TruthTable f = make_random(6, rng);
    std::stringstream buffer;
    write_table(buffer, f);
    CHECK(read_table(buffer) == f);

    std::stringstream bad("n=2\n01\n");
    CHECK_THROWS(read_table(bad));
}

TEST_CASE("padding appends ignored variables") {
    TruthTable f = make_named(Family::parity, 3);
    TruthTable g = pad_table(f, 2);
    CHECK(g.arity() == 5);
    for (uint32_t idx = 0; idx < g.size(); ++idx) CHECK(g.eval_idx(idx) == f.eval_idx(idx >> 2));
}
