#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqlearn/boolfn.hpp"
#include "mqlearn/rng.hpp"

namespace mqlearn {

// Bijection on bit positions. Applying p to z yields w with w[j] = z[map[j]]
// (0-based positions, position 0 = most significant input).
class Permutation {
public:
    static Permutation identity(int n);
    static Permutation reversal(int n);
    static Permutation random(int n, Rng& rng);
    explicit Permutation(std::vector<int> map);

    int size() const { return static_cast<int>(map_.size()); }
    int operator[](int j) const { return map_[j]; }
    bool is_identity() const;
    const std::vector<int>& map() const { return map_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> map_;
};

Permutation invert_perm(const Permutation& p);
Point apply_perm(const Permutation& p, Point z);
// Bit-packed fast path, arity given by the permutation.
uint32_t permute_bits(const Permutation& p, uint32_t bits);

// A t-product distribution over {0,1}^n: t explicit block mass functions,
// each over {0,1}^(n/t), composed with a bit permutation. Sampling draws
// each block independently and permutes the concatenation.
class ProductDistribution {
public:
    ProductDistribution(int n, int t, std::vector<std::vector<double>> blocks, Permutation sigma);

    static ProductDistribution uniform(int n, int t);
    // Each block an independent-Bernoulli product with the given per-bit
    // probability of 1.
    static ProductDistribution bernoulli_blocks(int n, int t, const std::vector<double>& p_one);

    int arity() const { return n_; }
    int block_count() const { return t_; }
    int block_len() const { return n_ / t_; }
    const Permutation& sigma() const { return sigma_; }
    const std::vector<double>& block_mass(int i) const { return blocks_[i]; }
    bool all_uniform() const { return all_uniform_; }

    Point sample(Rng& rng) const;
    uint32_t sample_block(int i, Rng& rng) const;
    double mass(Point z) const;

private:
    int n_;
    int t_;
    std::vector<std::vector<double>> blocks_;
    std::vector<std::vector<double>> cdf_;
    Permutation sigma_;
    Permutation sigma_inv_;
    bool all_uniform_;
};

// Re-expresses rho as a `parties`-product, appending zero-fixed pad bits
// when parties does not divide n. Block boundaries are re-cut; an original
// block straddling a new boundary must factor across it (checked
// numerically), otherwise the result is not a product and this throws.
ProductDistribution align_to_parties(const ProductDistribution& rho, int parties);

// Pad width needed so that parties divides n + pad.
inline int pad_width(int n, int parties) { return (parties - n % parties) % parties; }

// An arbitrary explicit distribution over {0,1}^n; used where no product
// structure is assumed (distribution-independent pipelines).
class JointDistribution {
public:
    JointDistribution(int n, std::vector<double> mass);
    static JointDistribution random(int n, Rng& rng);

    int arity() const { return n_; }
    Point sample(Rng& rng) const;
    double mass(Point z) const;

private:
    int n_;
    std::vector<double> mass_;
    std::vector<double> cdf_;
};

}  // namespace mqlearn
