#pragma once

// Source classes: exact distributions, branching programs (small-space
// sources), adversarial and total-entropy views, affine / bit-block sources,
// and the flat-pair decomposition.
//
// A length-n distribution indexes strings by index = sum_i x_i * 2^(i-1),
// i.e. coordinate 1 is the least significant index bit.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "eds/frac.hpp"
#include "eds/gf2.hpp"

namespace eds {

inline constexpr std::size_t kMaxExactBits = 24;

std::uint64_t bitvec_to_index(const BitVec& x);
BitVec index_to_bitvec(std::uint64_t idx, std::size_t n);

struct Dist {
    std::size_t n = 0;
    std::vector<double> p;  // size 2^n

    static Dist uniform(std::size_t n);
    static Dist point_mass(const BitVec& x);
    static Dist from_probs(std::size_t n, std::vector<double> probs);

    double prob(const BitVec& x) const { return p[bitvec_to_index(x)]; }
    void validate() const;  // sums to 1 within 1e-12, entries >= 0
};

double min_entropy(const Dist& d);
double stat_dist(const Dist& a, const Dist& b);
double stat_dist_from_uniform(const Dist& a);
Dist push_xor(const Dist& d, const BitVec& c);
Dist product(const Dist& a, const Dist& b);  // concatenation of independents
Dist pushforward(const Dist& d, std::size_t m,
                 const std::function<std::uint64_t(std::uint64_t)>& f);
// Marginal of coordinates offset+1 .. offset+len.
Dist marginal_range(const Dist& d, std::size_t offset, std::size_t len);

struct BpEdge {
    Frac prob;
    bool bit;
    unsigned next;
};

// Width-2^s, length-n layered program. Layers run 0..n; layer 0 has the single
// start node 0; the edge lists tr[i][v] leave node v of layer i and emit
// output coordinate i+1.
struct BranchingProgram {
    unsigned s = 0;
    std::size_t n = 0;
    std::vector<std::vector<std::vector<BpEdge>>> tr;

    unsigned width() const { return 1u << s; }
    void validate() const;
    std::vector<std::vector<bool>> reachable() const;  // [layer][node]
};

Dist bp_exact_dist(const BranchingProgram& bp);
std::vector<BitVec> bp_sample(const BranchingProgram& bp, std::uint64_t seed, std::size_t count);

// Pr[(L_i)_{i in indices} = values] and the conditional output distribution.
// indices are sorted 1-indexed layers; a zero-probability fixing returns
// probability 0 and an empty Dist.
std::pair<double, Dist> condition_on_layers(const BranchingProgram& bp,
                                            const std::vector<std::size_t>& indices,
                                            const std::vector<unsigned>& values);

// Conditional distribution of coordinates (a, b] given node u at layer a and
// node v at layer b (v absent means the end is free; a = 0 means the start).
// Returns the transition mass and the normalized slice distribution.
std::pair<double, Dist> bp_slice_conditional(const BranchingProgram& bp, std::size_t a,
                                             std::optional<unsigned> u, std::size_t b,
                                             std::optional<unsigned> v);

// Measure of fixings violating the conditional min-entropy bound
//   H(X | Y=y) >= H(X) - log2(support size of Y) - log2(1/eps)
// must be at most eps.
bool chain_rule_check(const BranchingProgram& bp, const std::vector<std::size_t>& indices,
                      double eps);

struct TotalEntropyView {
    std::size_t r = 0;      // component count
    std::size_t len = 0;    // bits per component
    double gamma = 0.0;     // exact sum of component min-entropies
};

TotalEntropyView classify_total_entropy(const std::vector<Dist>& components);

struct AdversarialSource {
    std::size_t N = 0;
    std::size_t n = 0;  // bits per component
    std::vector<Dist> components;
    double k = 0.0;
    std::vector<std::size_t> good_set;  // 1-indexed components with entropy >= k
};

AdversarialSource make_adversarial(std::vector<Dist> components, double k);

struct BucketedSource {
    AdversarialSource src;
    std::size_t guaranteed_K = 0;  // largest K with K*n + N*k <= Gamma
    std::vector<double> bucket_entropies;
};

BucketedSource bucket_to_adversarial(const std::vector<Dist>& components, std::size_t N,
                                     std::size_t n, double k);

class AffineSource {
  public:
    AffineSource(BitVec shift, std::vector<BitVec> basis);

    std::size_t n() const { return shift_.size(); }
    const BitVec& shift() const { return shift_; }
    const std::vector<BitVec>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }  // = min-entropy

    bool bit_block() const;  // pairwise disjoint supports
    bool simple() const;     // bit_block with consecutively ordered supports

    Dist exact_dist() const;
    BitVec sample(std::mt19937_64& rng) const;

  private:
    BitVec shift_;
    std::vector<BitVec> basis_;
};

struct MixtureDecomposition {
    std::vector<double> weights;
    std::vector<AffineSource> components;
    double residual = 0.0;

    // sum of weights*component distributions (residual mass excluded)
    Dist mixture_dist(std::size_t n) const;
};

// Decomposes a min-entropy >= 1 distribution into flat two-point components
// (dim-1 affine sources) with zero residual.
MixtureDecomposition flat_decompose_entropy1(const Dist& d);

AffineSource lift_flat_to_affine(const BitVec& a, const BitVec& b);
// Concatenates per-block flat pairs into one simple bit-block source.
AffineSource assemble_simple_bitblock(const std::vector<std::pair<BitVec, BitVec>>& blocks);

BranchingProgram bitblock_to_bp(const AffineSource& a);

}  // namespace eds
