#include "doctest.h"

#include <cmath>
#include <vector>

#include "mqlearn/norm.hpp"

using namespace mqlearn;

namespace {

// Straightforward re-enumeration of the defining expectation, kept separate
// from the library path: odometer over the 2k slices, evaluation through
// Point, optional per-slice weights.
double naive_norm(const TruthTable& f, int parties, const Permutation& sigma,
                  const ProductDistribution* rho = nullptr) {
    int n = f.arity();
    int len = n / parties;
    uint32_t space = uint32_t{1} << len;
    std::vector<uint32_t> slice(2 * parties, 0);
    double acc = 0.0;
    double total_weight = 0.0;
    while (true) {
        double weight = 1.0;
        if (rho)
            for (int s = 0; s < 2 * parties; ++s) weight *= rho->block_mass(s / 2)[slice[s]];
        double product = 1.0;
        for (uint32_t eps = 0; eps < uint32_t{1} << parties; ++eps) {
            uint32_t concat = 0;
            for (int i = 0; i < parties; ++i) {
                int row = (eps >> (parties - 1 - i)) & 1u;
                concat = (concat << len) | slice[2 * i + row];
            }
            product *= f.eval(apply_perm(sigma, Point{concat, n}));
        }
        acc += weight * product;
        total_weight += weight;
        int pos = 2 * parties - 1;
        while (pos >= 0 && slice[pos] + 1 == space) slice[pos--] = 0;
        if (pos < 0) break;
        ++slice[pos];
    }
    return rho ? acc : acc / total_weight;
}

}  // namespace

TEST_CASE("exact norm on the named families") {
    CHECK(norm_exact(make_named(Family::constant_one, 6), 2).value == doctest::Approx(1.0));
    CHECK(norm_exact(make_named(Family::constant_one, 6), 3).value == doctest::Approx(1.0));
    CHECK(norm_exact(make_named(Family::parity, 4), 2).value == doctest::Approx(1.0));
    CHECK(norm_exact(make_named(Family::inner_product, 4), 2).value == doctest::Approx(0.25));
    CHECK(norm_exact(make_named(Family::inner_product, 6), 2).value ==
          doctest::Approx(std::exp2(-3.0)));
}

TEST_CASE("exact norm agrees with the naive oracle") {
    Rng rng = make_rng(40);
    for (int trial = 0; trial < 4; ++trial) {
        TruthTable f = make_random(6, rng);
        Permutation sigma = trial % 2 ? Permutation::random(6, rng) : Permutation::identity(6);
        for (int parties : {2, 3}) {
            double expect = naive_norm(f, parties, sigma);
            CHECK(norm_exact(f, parties, sigma).value == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("norm is empirically nonnegative and negation invariant") {
    Rng rng = make_rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        TruthTable f = make_random(6, rng);
        double value = norm_exact(f, 2).value;
        CHECK(value >= -1e-12);
        CHECK(value <= 1.0);
        CHECK(norm_exact(negated(f), 2).value == doctest::Approx(value));
    }
}

TEST_CASE("weighted norm") {
    TruthTable ip4 = make_named(Family::inner_product, 4);

    // Uniform blocks reduce to the unweighted norm.
    auto uniform = ProductDistribution::uniform(4, 2);
    CHECK(norm_weighted(ip4, 2, uniform).value == doctest::Approx(norm_exact(ip4, 2).value));

    // Point-mass second block: the recombinations collapse pairwise.
    std::vector<std::vector<double>> blocks{{0.25, 0.25, 0.25, 0.25}, {0, 0, 1, 0}};
    ProductDistribution pointy(4, 2, blocks, Permutation::identity(4));
    CHECK(norm_weighted(ip4, 2, pointy).value == doctest::Approx(1.0));

    // All blocks point masses: the product is a square.
    std::vector<std::vector<double>> locked{{0, 1, 0, 0}, {0, 0, 1, 0}};
    ProductDistribution both(4, 2, locked, Permutation::identity(4));
    CHECK(norm_weighted(ip4, 2, both).value == doctest::Approx(1.0));

    Rng rng = make_rng(42);
    for (int trial = 0; trial < 3; ++trial) {
        TruthTable f = make_random(6, rng);
        auto rho = ProductDistribution::bernoulli_blocks(6, 2, {0.2, 0.7});
        CHECK(norm_weighted(f, 2, rho).value ==
              doctest::Approx(naive_norm(f, 2, rho.sigma(), &rho)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(norm_weighted(ip4, 2, ProductDistribution::uniform(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("chernoff halfwidth inverts the tail bound") {
    // delta -> 1 sends the halfwidth to zero.
    CHECK(chernoff_halfwidth(1000, 0.999999) < 1e-3);

    uint64_t m = 10000;
    double h = chernoff_halfwidth(m, 0.05);
    double t = h * m;
    double bound = std::exp(-t * t / (2.0 * (m / 2.0 + t / 3.0)));
    CHECK(bound == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(h == doctest::Approx(0.01741).epsilon(1e-3));

    // Doubling the sample count shrinks the width by about sqrt(2).
    CHECK(chernoff_halfwidth(2 * m, 0.05) == doctest::Approx(h / std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("monte carlo estimator") {
    Rng rng = make_rng(43);

    Concept ones(make_named(Family::constant_one, 6), ProductDistribution::uniform(6, 1));
    MQOracle ones_oracle(ones);
    CHECK(norm_estimate(ones_oracle, 2, Permutation::identity(6), 200, rng).value ==
          doctest::Approx(1.0));

    Concept xors(make_named(Family::parity, 6), ProductDistribution::uniform(6, 1));
    MQOracle xor_oracle(xors);
    CHECK(norm_estimate(xor_oracle, 2, Permutation::identity(6), 200, rng).value ==
          doctest::Approx(1.0));

    Concept ip(make_named(Family::inner_product, 8), ProductDistribution::uniform(8, 1));
    double exact = norm_exact(ip.table(), 2).value;
    int covered = 0;
    for (int trial = 0; trial < 30; ++trial) {
        MQOracle oracle(ip);
        NormResult est = norm_estimate(oracle, 2, Permutation::identity(8), 3000, rng);
        if (std::abs(est.value - exact) <= est.halfwidth) ++covered;
    }
    CHECK(covered >= 27);
}

TEST_CASE("correlation bound reports") {
    Partition part = Partition::contiguous(4, 2);

    TruthTable constant = make_named(Family::constant_one, 4);
    auto report = check_corr_bound(constant, constant_protocol(part, 1));
    CHECK(report.lhs == doctest::Approx(1.0));
    CHECK(report.rhs == doctest::Approx(2.0));
    CHECK(report.holds);

    TruthTable ip4 = make_named(Family::inner_product, 4);
    report = check_corr_bound(ip4, constant_protocol(part, 1));
    CHECK(report.lhs == doctest::Approx(0.25));
    CHECK(report.rhs == doctest::Approx(2.0 * std::pow(0.25, 0.25)));
    CHECK(report.holds);

    TruthTable xor4 = make_named(Family::parity, 4);
    report = check_corr_bound(xor4, parity_protocol(part));
    CHECK(report.lhs == doctest::Approx(1.0));
    CHECK(report.rhs == doctest::Approx(4.0));
    CHECK(report.holds);
}
