#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqlearn/rng.hpp"

namespace mqlearn {

class ProductDistribution;

// A point of {0,1}^n. Input x_1 is the most significant bit of `bits`,
// so `bits` doubles as the row index of the point in a truth table.
struct Point {
    uint32_t bits = 0;
    int n = 0;

    bool operator==(const Point&) const = default;
};

// Bit j (0-based from x_1) of an n-bit index.
inline int bit_at(uint32_t bits, int n, int j) { return (bits >> (n - 1 - j)) & 1u; }

// Block i (0-based) of length len, blocks laid out left to right.
inline uint32_t block_of(uint32_t bits, int i, int parties, int len) {
    return (bits >> ((parties - 1 - i) * len)) & ((uint32_t{1} << len) - 1);
}

// Labels are +1/-1 ints; bit b encodes the label (-1)^b.
inline int bit_to_label(int b) { return 1 - 2 * b; }
inline int label_to_bit(int l) { return (1 - l) / 2; }

// Bit-packed total function {0,1}^n -> {-1,+1}.
class TruthTable {
public:
    static constexpr int max_arity = 26;

    explicit TruthTable(int n);

    int arity() const { return n_; }
    uint32_t size() const { return uint32_t{1} << n_; }

    int bit(uint32_t idx) const { return static_cast<int>((words_[idx >> 6] >> (idx & 63u)) & 1u); }
    int eval_idx(uint32_t idx) const { return bit_to_label(bit(idx)); }
    int eval(Point x) const;

    void set_bit(uint32_t idx, int b);
    void flip_bit(uint32_t idx);

    uint32_t count_minus_ones() const;
    uint32_t hamming_distance(const TruthTable& other) const;

    bool operator==(const TruthTable&) const = default;

private:
    int n_;
    std::vector<uint64_t> words_;
};

enum class Family { constant_one, parity, dictator, majority, inner_product, gip };

// Named function families. `param` is the 1-based variable for dictator
// and the group count k for gip (must divide n); inner_product requires 2|n.
TruthTable make_named(Family family, int n, int param = 0);
TruthTable make_named(const std::string& name, int n);

TruthTable make_random(int n, Rng& rng);
TruthTable negated(const TruthTable& f);

// E_x[f(x) g(x)], x uniform. Exact.
double correlation(const TruthTable& f, const TruthTable& g);

// E_{x~rho}[f(x) g(x)], exact from the block mass functions.
double correlation(const TruthTable& f, const TruthTable& g, const ProductDistribution& rho);

// Extends f to n+pad variables that are ignored (appended after x_n).
TruthTable pad_table(const TruthTable& f, int pad);

// Text format: line 1 "n=<int>", line 2 the 2^n bits in idx order.
void write_table(std::ostream& out, const TruthTable& f);
TruthTable read_table(std::istream& in);
void save_table(const std::string& path, const TruthTable& f);
TruthTable load_table(const std::string& path);

}  // namespace mqlearn
