#include "mqlearn/distrib.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mqlearn {

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    int n = static_cast<int>(map_.size());
    std::vector<char> seen(n, 0);
    for (int v : map_) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("permutation is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::reversal(int n) {
    std::vector<int> m(n);
    for (int j = 0; j < n; ++j) m[j] = n - 1 - j;
    return Permutation(std::move(m));
}

Permutation Permutation::random(int n, Rng& rng) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    for (int j = n - 1; j > 0; --j) {
        int i = static_cast<int>(rng() % static_cast<uint64_t>(j + 1));
        std::swap(m[j], m[i]);
    }
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
    for (int j = 0; j < size(); ++j)
        if (map_[j] != j) return false;
    return true;
}

Permutation invert_perm(const Permutation& p) {
    std::vector<int> inv(p.size());
    for (int j = 0; j < p.size(); ++j) inv[p[j]] = j;
    return Permutation(std::move(inv));
}

uint32_t permute_bits(const Permutation& p, uint32_t bits) {
    int n = p.size();
    uint32_t out = 0;
    for (int j = 0; j < n; ++j)
        out |= static_cast<uint32_t>(bit_at(bits, n, p[j])) << (n - 1 - j);
    return out;
}

Point apply_perm(const Permutation& p, Point z) {
    if (z.n != p.size()) throw std::invalid_argument("point arity does not match permutation");
    return Point{permute_bits(p, z.bits), z.n};
}

namespace {

constexpr double kBlockMassTol = 1e-12;

bool mass_is_uniform(const std::vector<double>& m) {
    double expect = 1.0 / static_cast<double>(m.size());
    for (double v : m)
        if (std::abs(v - expect) > kBlockMassTol) return false;
    return true;
}

std::vector<double> cumulative(const std::vector<double>& m) {
    std::vector<double> cdf(m.size());
    double acc = 0.0;
    for (size_t i = 0; i < m.size(); ++i) {
        acc += m[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

uint32_t sample_cdf(const std::vector<double>& cdf, Rng& rng) {
    double u = uniform01(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<uint32_t>(it - cdf.begin());
}

}  // namespace

ProductDistribution::ProductDistribution(int n, int t, std::vector<std::vector<double>> blocks,
                                         Permutation sigma)
    : n_(n), t_(t), blocks_(std::move(blocks)), sigma_(std::move(sigma)), sigma_inv_(invert_perm(sigma_)) {
    if (n < 1 || n > TruthTable::max_arity) throw std::invalid_argument("distribution arity out of range");
    if (t < 1 || n % t != 0) throw std::invalid_argument("block count must divide n");
    if (sigma_.size() != n) throw std::invalid_argument("sigma size must equal n");
    if (static_cast<int>(blocks_.size()) != t) throw std::invalid_argument("need one mass function per block");
    size_t block_size = size_t{1} << (n / t);
    all_uniform_ = true;
    for (const auto& m : blocks_) {
        if (m.size() != block_size) throw std::invalid_argument("block mass table has wrong size");
        double sum = 0.0;
        for (double v : m) {
            if (v < 0.0) throw std::invalid_argument("negative block mass");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kBlockMassTol) throw std::invalid_argument("block mass does not sum to 1");
        all_uniform_ = all_uniform_ && mass_is_uniform(m);
        cdf_.push_back(cumulative(m));
    }
}

ProductDistribution ProductDistribution::uniform(int n, int t) {
    size_t block_size = size_t{1} << (n / t);
    std::vector<std::vector<double>> blocks(
        t, std::vector<double>(block_size, 1.0 / static_cast<double>(block_size)));
    return ProductDistribution(n, t, std::move(blocks), Permutation::identity(n));
}

ProductDistribution ProductDistribution::bernoulli_blocks(int n, int t, const std::vector<double>& p_one) {
    if (static_cast<int>(p_one.size()) != t) throw std::invalid_argument("need one probability per block");
    int len = n / t;
    std::vector<std::vector<double>> blocks;
    for (int i = 0; i < t; ++i) {
        std::vector<double> m(size_t{1} << len);
        for (uint32_t v = 0; v < m.size(); ++v) {
            double prob = 1.0;
            for (int j = 0; j < len; ++j) prob *= bit_at(v, len, j) ? p_one[i] : 1.0 - p_one[i];
            m[v] = prob;
        }
        blocks.push_back(std::move(m));
    }
    return ProductDistribution(n, t, std::move(blocks), Permutation::identity(n));
}

uint32_t ProductDistribution::sample_block(int i, Rng& rng) const {
    if (mass_is_uniform(blocks_[i])) return rand_bits(rng, block_len());
    return sample_cdf(cdf_[i], rng);
}

Point ProductDistribution::sample(Rng& rng) const {
    int len = block_len();
    uint32_t concat = 0;
    for (int i = 0; i < t_; ++i) concat = (concat << len) | sample_block(i, rng);
    return Point{sigma_.is_identity() ? concat : permute_bits(sigma_, concat), n_};
}

double ProductDistribution::mass(Point z) const {
    if (z.n != n_) throw std::invalid_argument("point arity does not match distribution");
    uint32_t u = sigma_.is_identity() ? z.bits : permute_bits(sigma_inv_, z.bits);
    double prob = 1.0;
    for (int i = 0; i < t_; ++i) prob *= blocks_[i][block_of(u, i, t_, block_len())];
    return prob;
}

namespace {

struct Atom {
    int len;
    std::vector<double> mass;
};

std::vector<double> marginal_prefix(const Atom& a, int s) {
    std::vector<double> m(size_t{1} << s, 0.0);
    int rest = a.len - s;
    for (uint32_t v = 0; v < a.mass.size(); ++v) m[v >> rest] += a.mass[v];
    return m;
}

std::vector<double> marginal_suffix(const Atom& a, int s) {
    int rest = a.len - s;
    std::vector<double> m(size_t{1} << rest, 0.0);
    uint32_t mask = (uint32_t{1} << rest) - 1;
    for (uint32_t v = 0; v < a.mass.size(); ++v) m[v & mask] += a.mass[v];
    return m;
}

// Splits an atom at prefix length s; valid only if its mass factors there.
std::pair<Atom, Atom> split_atom(const Atom& a, int s) {
    auto pre = marginal_prefix(a, s);
    auto suf = marginal_suffix(a, s);
    int rest = a.len - s;
    for (uint32_t v = 0; v < a.mass.size(); ++v) {
        double expect = pre[v >> rest] * suf[v & ((uint32_t{1} << rest) - 1)];
        if (std::abs(a.mass[v] - expect) > 1e-9)
            throw std::invalid_argument("block distribution does not factor across the new party boundary");
    }
    return {Atom{s, std::move(pre)}, Atom{rest, std::move(suf)}};
}

Atom tensor(const Atom& a, const Atom& b) {
    Atom out{a.len + b.len, std::vector<double>(size_t{1} << (a.len + b.len))};
    for (uint32_t u = 0; u < a.mass.size(); ++u)
        for (uint32_t v = 0; v < b.mass.size(); ++v)
            out.mass[(u << b.len) | v] = a.mass[u] * b.mass[v];
    return out;
}

}  // namespace

ProductDistribution align_to_parties(const ProductDistribution& rho, int parties) {
    int n = rho.arity();
    int pad = pad_width(n, parties);
    if (pad == 0 && rho.block_count() == parties) return rho;

    std::vector<Atom> atoms;
    for (int i = 0; i < rho.block_count(); ++i)
        atoms.push_back(Atom{rho.block_len(), rho.block_mass(i)});
    if (pad > 0) {
        std::vector<double> point_mass(size_t{1} << pad, 0.0);
        point_mass[0] = 1.0;
        atoms.push_back(Atom{pad, std::move(point_mass)});
    }

    int total = n + pad;
    int new_len = total / parties;
    std::vector<std::vector<double>> new_blocks;
    Atom current{0, {1.0}};
    size_t next = 0;
    while (static_cast<int>(new_blocks.size()) < parties) {
        int need = new_len - current.len;
        if (need == 0) {
            new_blocks.push_back(std::move(current.mass));
            current = Atom{0, {1.0}};
            continue;
        }
        Atom a = std::move(atoms[next++]);
        if (a.len <= need) {
            current = tensor(current, a);
        } else {
            auto [pre, suf] = split_atom(a, need);
            current = tensor(current, pre);
            atoms[--next] = std::move(suf);
        }
    }

    std::vector<int> map(total);
    for (int j = 0; j < n; ++j) map[j] = rho.sigma()[j];
    for (int j = n; j < total; ++j) map[j] = j;
    return ProductDistribution(total, parties, std::move(new_blocks), Permutation(std::move(map)));
}

JointDistribution::JointDistribution(int n, std::vector<double> mass) : n_(n), mass_(std::move(mass)) {
    if (n < 1 || n > TruthTable::max_arity) throw std::invalid_argument("arity out of range");
    if (mass_.size() != size_t{1} << n) throw std::invalid_argument("mass table has wrong size");
    double sum = 0.0;
    for (double v : mass_) {
        if (v < 0.0) throw std::invalid_argument("negative mass");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("mass does not sum to 1");
    cdf_ = cumulative(mass_);
}

JointDistribution JointDistribution::random(int n, Rng& rng) {
    std::vector<double> mass(size_t{1} << n);
    double sum = 0.0;
    for (double& v : mass) {
        v = uniform01(rng) + 0.02;
        sum += v;
    }
    for (double& v : mass) v /= sum;
    return JointDistribution(n, std::move(mass));
}

Point JointDistribution::sample(Rng& rng) const { return Point{sample_cdf(cdf_, rng), n_}; }

double JointDistribution::mass(Point z) const {
    if (z.n != n_) throw std::invalid_argument("point arity does not match distribution");
    return mass_[z.bits];
}

}  // namespace mqlearn
