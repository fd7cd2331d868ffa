#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mqlearn/oracle.hpp"

namespace mqlearn {

// Monomial over 0/1 inputs: the product of the variables in `vars` (a bit
// mask over the point), scaled by `coeff`.
template <typename Coeff>
struct Monomial {
    uint32_t vars = 0;
    Coeff coeff{};
};

// Sign of a real polynomial over {0,1}^n; ties (p(x) = 0) evaluate to +1.
class PTF {
public:
    PTF(int n, int degree, std::vector<Monomial<double>> monomials);

    int arity() const { return n_; }
    int degree() const { return degree_; }
    const std::vector<Monomial<double>>& monomials() const { return monomials_; }

    double polynomial_value(uint32_t x) const;
    int eval_bits(uint32_t x) const { return polynomial_value(x) >= 0.0 ? 1 : -1; }
    int eval(Point x) const;

private:
    int n_;
    int degree_;
    std::vector<Monomial<double>> monomials_;
};

// Integer polynomial of bounded degree and coefficient magnitude, composed
// with an explicit value-to-sign map (default +1 off the attained range).
class SymPlus {
public:
    SymPlus(int n, int degree, int64_t size, std::vector<Monomial<int64_t>> monomials,
            std::map<int64_t, int> theta, int default_sign = 1);

    int arity() const { return n_; }
    int degree() const { return degree_; }
    int64_t size_bound() const { return size_; }
    const std::vector<Monomial<int64_t>>& monomials() const { return monomials_; }
    const std::map<int64_t, int>& theta() const { return theta_; }
    int default_sign() const { return default_sign_; }

    int64_t polynomial_value(uint32_t x) const;
    int eval_bits(uint32_t x) const;
    int eval(Point x) const;

private:
    int n_;
    int degree_;
    int64_t size_;
    std::vector<Monomial<int64_t>> monomials_;
    std::map<int64_t, int> theta_;
    int default_sign_;
};

// Circuit of gates over {input variables, earlier gate outputs}; gate
// output labels feed later gates through the global label/bit encoding.
template <typename Gate>
struct GateCircuit {
    struct GateSpec {
        Gate fn;                     // over the wires listed below, in order
        std::vector<int> wires;      // < n: input variable; >= n: gate index + n
    };
    int n = 0;
    std::vector<GateSpec> gates;     // output = last gate
};

// Binary decision tree with class-instance queries at internal nodes;
// query label +1 branches to `child[0]`, -1 to `child[1]`.
template <typename Query>
struct QueryTree {
    struct Node {
        Query query;
        int child[2];                // >= 0: node index; < 0: leaf, see tree_leaf
    };
    int n = 0;
    int depth_bound = 0;
    std::vector<Node> nodes;         // root 0; empty tree = constant leaf_label
    int leaf_label = 1;
};

// Leaf slots encode the label's bit: child = ~bit for label (-1)^bit.
inline int tree_leaf(int label) { return ~label_to_bit(label); }
inline int tree_leaf_label(int child) { return bit_to_label(~child); }

using PTFCircuit = GateCircuit<PTF>;
using SymPlusCircuit = GateCircuit<SymPlus>;
using PTFDecisionTree = QueryTree<PTF>;
using SymPlusDecisionTree = QueryTree<SymPlus>;

using ClassInstance =
    std::variant<PTF, SymPlus, PTFCircuit, SymPlusCircuit, PTFDecisionTree, SymPlusDecisionTree>;

int eval_class(const ClassInstance& instance, Point x);
int class_arity(const ClassInstance& instance);
void validate_class(const ClassInstance& instance);
TruthTable materialize_class(const ClassInstance& instance);

// Wraps an integer-coefficient PTF as the equivalent sign-threshold SymPlus.
SymPlus ptf_as_sym_plus(const PTF& ptf);

enum class TouchstoneKind { ptf_circuit, ptf_tree, symp_circuit, symp_tree };

struct PlantSpec {
    TouchstoneKind kind = TouchstoneKind::ptf_circuit;
    int n = 8;
    int degree = 1;
    int gates = 1;       // gate count or tree depth
    int64_t size = 8;    // coefficient bound for SYM+ variants
};

struct Planted {
    ClassInstance instance;
    TruthTable table;
};

Planted plant(const PlantSpec& spec, Rng& rng);

// Exact maximum of E[(c(x) * y] over the listed instances.
struct OptResult {
    double gamma = 0.0;
    size_t argmax = 0;
};
OptResult opt_bruteforce(const Concept& target, const std::vector<ClassInstance>& instances);

// Leading constants for the savings formulas; the analysis leaves them
// unspecified, so they are configuration with default 1.
struct SavingsConstants {
    double cost = 1.0;
    double savings = 1.0;
};

struct SavingsReport {
    int parties = 0;
    double cost = 0.0;
    double savings = 0.0;
    double alpha = 0.0;
    bool trivial = false;  // savings <= 0: no speedup over exhaustive search
};

// Plug-in evaluation of the savings/advantage parameter formulas for the
// four touchstone classes. `units` is the circuit size (gate count m or
// tree depth d); `size` is the SYM+ coefficient bound.
SavingsReport savings_params(TouchstoneKind kind, int n, int degree, int64_t units, int64_t size,
                             double gamma, const SavingsConstants& constants = {});

std::string to_string(TouchstoneKind kind);
TouchstoneKind touchstone_kind_from_string(const std::string& name);

}  // namespace mqlearn
