#pragma once

// Structural reductions for small-space sources: the adaptive fixing procedure
// down to simple bit-block sources, the fixed-grid reduction to total-entropy
// components, and the sqrt(n) barrier accounting.

#include <cstdint>
#include <string>
#include <vector>

#include "eds/source.hpp"

namespace eds {

struct ReductionParams {
    std::size_t n = 0;
    double k = 0.0;
    unsigned s = 0;
    unsigned t = 0;          // loop depth bound
    double eps = 0.0;        // free parameter; paper default 2^{-k/2}
    std::size_t gamma = 0;   // target good-slice count, >= 1

    // Raw formula values before feasibility rounding, kept for the trace.
    unsigned t_formula = 0;        // floor(log2(4n/k))
    std::size_t gamma_formula = 0; // floor(k / (20 s max(1, log2(n/k))))
};

// Strict paper rule: t = log2(4n/k), eps = 2^{-k/2}, Gamma = k/(20 s log2(n/k))
// with floors, Gamma then rounded down until every slice width n/(2 Gamma) 2^{-tau}
// (tau <= t) is integral, and t capped so the smallest width stays >= 1.
// Errors with errc::entropy when no Gamma >= 1 works.
ReductionParams reduction_params(std::size_t n, double k, unsigned s);

// Explicit parameters (desk-scale runs); validates the width rule.
ReductionParams make_reduction_params(std::size_t n, double k, unsigned s, std::size_t gamma,
                                      unsigned t, double eps);

struct SliceInfo {
    std::size_t a = 0, b = 0;  // coordinates (a, b]
    double entropy = 0.0;
    double max_prob = 1.0;
};

struct FixingTranscript {
    unsigned tau_star = 0;
    std::vector<std::vector<std::size_t>> index_sets;  // I^(0..tau*)
    std::vector<std::vector<unsigned>> fixed_values;   // l^(0..tau*)
    std::vector<std::vector<SliceInfo>> B;             // slices per round
    std::vector<std::vector<SliceInfo>> A;             // selected slices per round
    int case_label = 0;  // 1 or 2; 0 marks a zero-probability fixing
};

struct FixingLeaf {
    double probability = 0.0;
    FixingTranscript transcript;
    Dist conditional;  // empty when probability == 0
};

std::vector<FixingLeaf> run_fixing_procedure(const BranchingProgram& bp, const ReductionParams& p);

struct IssWitness {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // contiguous (a, b]
    std::vector<Dist> block_dists;
    std::vector<double> block_entropies;
};

// Case-1 leaves only: the partition of [n] into gamma independent blocks, each
// with conditional min-entropy >= 1.
IssWitness assemble_iss(const BranchingProgram& bp, const FixingLeaf& leaf);

struct BitblockDecomposition {
    MixtureDecomposition mixture;  // simple bit-block components; residual = case-2 mass
    std::size_t case1_leaves = 0;
    std::size_t case2_leaves = 0;
    std::size_t transcripts = 0;  // positive-probability leaves
    bool crossover_contradicted = false;  // k-(t+2)sG-log2(1/eps) >= Gt+n2^-t
};

BitblockDecomposition decompose_to_bitblock(const BranchingProgram& bp, const ReductionParams& p);

struct GridFixing {
    double probability = 0.0;
    std::vector<unsigned> values;
    std::vector<Dist> slices;  // r slice conditionals; empty on zero probability
    double gamma_realized = 0.0;
};

struct GridReduction {
    std::size_t r = 0, l = 0;
    double k = 0.0;
    std::vector<GridFixing> fixings;
    double failure_mass = 0.0;  // mass with gamma_realized < k/2
};

GridReduction grid_reduction_7(const BranchingProgram& bp, double alpha, double k);

struct BarrierCase {
    std::size_t r = 0, l = 0;
    bool viable = false;
    std::string failure;  // which condition killed it
};

struct BarrierReport {
    std::size_t n = 0;
    double k = 0.0;
    unsigned s = 0;
    std::vector<BarrierCase> cases;
    bool any_viable = false;
};

BarrierReport barrier_check(std::size_t n, double k, unsigned s);

}  // namespace eds
