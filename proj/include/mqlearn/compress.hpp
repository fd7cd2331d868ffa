#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mqlearn/boosting.hpp"

namespace mqlearn {

// Learned generator plus a sorted patch list; evaluates the source table
// exactly on every point by construction.
class CompressedCircuit {
public:
    CompressedCircuit(int n, std::vector<std::pair<double, LookupHypothesis>> ensemble,
                      std::vector<std::pair<uint32_t, int>> patches);

    int arity() const { return n_; }
    const std::vector<std::pair<double, LookupHypothesis>>& ensemble() const { return ensemble_; }
    const std::vector<std::pair<uint32_t, int>>& patches() const { return patches_; }

    int eval(Point z) const;
    TruthTable materialize() const;

    // Stored lookup-table entries across the ensemble (labels the circuit
    // hard-wires), counted once per distinct point per round.
    uint64_t stored_entries() const;

private:
    int n_;
    std::vector<std::pair<double, LookupHypothesis>> ensemble_;
    std::vector<std::pair<uint32_t, int>> patches_;
};

struct SizeReport {
    uint64_t entries = 0;
    uint64_t patches = 0;
    uint64_t total = 0;      // entries + patches + constant structure overhead
    double ratio = 0.0;      // total / 2^n
    bool incompressible = false;
};

struct CompressParams {
    int parties = 2;
    double epsilon = 0.0;    // zero: max(2^-ceil(n^0.99), 2^-n)
    BoostParams boost;       // weak/boost budgets; epsilon is filled in
};

struct CompressResult {
    CompressedCircuit circuit;
    SizeReport report;
    uint64_t mq_calls = 0;
};

double default_compression_epsilon(int n);

// Treats the table as a membership-query oracle over the uniform marginal,
// learns it, then hard-wires every residual disagreement.
CompressResult compress(const TruthTable& table, const CompressParams& params, Rng& rng);

SizeReport size_report(const CompressedCircuit& circuit);

// Bit-exact circuit file (JSON).
void write_circuit(std::ostream& out, const CompressedCircuit& circuit);
CompressedCircuit read_circuit(std::istream& in);

}  // namespace mqlearn
