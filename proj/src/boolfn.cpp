#include "mqlearn/boolfn.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "mqlearn/distrib.hpp"

namespace mqlearn {

TruthTable::TruthTable(int n) : n_(n) {
    if (n < 1 || n > max_arity) throw std::invalid_argument("truth table arity out of range");
    words_.assign(((uint64_t{1} << n) + 63) / 64, 0);
}

int TruthTable::eval(Point x) const {
    if (x.n != n_) throw std::invalid_argument("point arity does not match table");
    return eval_idx(x.bits);
}

void TruthTable::set_bit(uint32_t idx, int b) {
    uint64_t mask = uint64_t{1} << (idx & 63u);
    if (b)
        words_[idx >> 6] |= mask;
    else
        words_[idx >> 6] &= ~mask;
}

void TruthTable::flip_bit(uint32_t idx) { words_[idx >> 6] ^= uint64_t{1} << (idx & 63u); }

uint32_t TruthTable::count_minus_ones() const {
    uint64_t total = 0;
    uint32_t tail = size() & 63u;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t v = words_[w];
        if (w + 1 == words_.size() && tail != 0) v &= (uint64_t{1} << tail) - 1;
        total += std::popcount(v);
    }
    return static_cast<uint32_t>(total);
}

uint32_t TruthTable::hamming_distance(const TruthTable& other) const {
    if (other.n_ != n_) throw std::invalid_argument("arity mismatch");
    uint64_t total = 0;
    uint32_t tail = size() & 63u;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t v = words_[w] ^ other.words_[w];
        if (w + 1 == words_.size() && tail != 0) v &= (uint64_t{1} << tail) - 1;
        total += std::popcount(v);
    }
    return static_cast<uint32_t>(total);
}

namespace {

int gip_bit(uint32_t idx, int n, int groups) {
    int len = n / groups;
    int acc = 0;
    for (int j = 0; j < len; ++j) {
        int conj = 1;
        for (int i = 0; i < groups && conj; ++i)
            conj &= bit_at(block_of(idx, i, groups, len), len, j);
        acc ^= conj;
    }
    return acc;
}

}  // namespace

TruthTable make_named(Family family, int n, int param) {
    TruthTable f(n);
    switch (family) {
        case Family::constant_one:
            break;
        case Family::parity:
            for (uint32_t idx = 0; idx < f.size(); ++idx)
                f.set_bit(idx, std::popcount(idx) & 1);
            break;
        case Family::dictator: {
            if (param < 1 || param > n) throw std::invalid_argument("dictator variable out of range");
            for (uint32_t idx = 0; idx < f.size(); ++idx)
                f.set_bit(idx, bit_at(idx, n, param - 1));
            break;
        }
        case Family::majority:
            for (uint32_t idx = 0; idx < f.size(); ++idx)
                f.set_bit(idx, 2 * std::popcount(idx) >= n ? 0 : 1);
            break;
        case Family::inner_product:
            if (n % 2 != 0) throw std::invalid_argument("inner product needs even arity");
            for (uint32_t idx = 0; idx < f.size(); ++idx)
                f.set_bit(idx, gip_bit(idx, n, 2));
            break;
        case Family::gip: {
            if (param < 1 || n % param != 0) throw std::invalid_argument("gip group count must divide n");
            for (uint32_t idx = 0; idx < f.size(); ++idx)
                f.set_bit(idx, gip_bit(idx, n, param));
            break;
        }
    }
    return f;
}

TruthTable make_named(const std::string& name, int n) {
    if (name == "ONE") return make_named(Family::constant_one, n);
    if (name == "XOR") return make_named(Family::parity, n);
    if (name == "MAJ") return make_named(Family::majority, n);
    if (name == "IP") return make_named(Family::inner_product, n);
    if (name.rfind("DICT", 0) == 0) return make_named(Family::dictator, n, std::stoi(name.substr(4)));
    if (name.rfind("GIP", 0) == 0) return make_named(Family::gip, n, std::stoi(name.substr(3)));
    throw std::invalid_argument("unknown function family: " + name);
}

TruthTable make_random(int n, Rng& rng) {
    TruthTable f(n);
    for (uint32_t idx = 0; idx < f.size(); ++idx) f.set_bit(idx, rand_bit(rng));
    return f;
}

TruthTable negated(const TruthTable& f) {
    TruthTable g(f.arity());
    for (uint32_t idx = 0; idx < f.size(); ++idx) g.set_bit(idx, 1 - f.bit(idx));
    return g;
}

double correlation(const TruthTable& f, const TruthTable& g) {
    if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
    // sum of f*g = (#agree) - (#disagree) = 2^n - 2*hamming
    int64_t total = static_cast<int64_t>(f.size());
    int64_t ham = f.hamming_distance(g);
    return static_cast<double>(total - 2 * ham) / static_cast<double>(total);
}

double correlation(const TruthTable& f, const TruthTable& g, const ProductDistribution& rho) {
    if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
    if (rho.arity() != f.arity()) throw std::invalid_argument("distribution arity mismatch");
    double acc = 0.0;
    for (uint32_t idx = 0; idx < f.size(); ++idx)
        acc += rho.mass(Point{idx, f.arity()}) * f.eval_idx(idx) * g.eval_idx(idx);
    return acc;
}

TruthTable pad_table(const TruthTable& f, int pad) {
    if (pad < 0) throw std::invalid_argument("negative pad");
    if (pad == 0) return f;
    TruthTable g(f.arity() + pad);
    for (uint32_t idx = 0; idx < g.size(); ++idx) g.set_bit(idx, f.bit(idx >> pad));
    return g;
}

void write_table(std::ostream& out, const TruthTable& f) {
    out << "n=" << f.arity() << '\n';
    for (uint32_t idx = 0; idx < f.size(); ++idx) out << (f.bit(idx) ? '1' : '0');
    out << '\n';
}

TruthTable read_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0)
        throw std::runtime_error("truth table file: missing n= header");
    int n = std::stoi(header.substr(2));
    TruthTable f(n);
    std::string row;
    if (!std::getline(in, row) || row.size() != f.size())
        throw std::runtime_error("truth table file: wrong bit-row length");
    for (uint32_t idx = 0; idx < f.size(); ++idx) {
        char c = row[idx];
        if (c != '0' && c != '1') throw std::runtime_error("truth table file: bad character");
        f.set_bit(idx, c - '0');
    }
    return f;
}

void save_table(const std::string& path, const TruthTable& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_table(out, f);
}

TruthTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_table(in);
}

}  // namespace mqlearn
