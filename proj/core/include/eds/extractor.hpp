#pragma once

// XOR-over-design extraction, desk-scale leakage-resilient and affine
// extractor stand-ins, and the parameter-selection pipelines.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eds/design.hpp"
#include "eds/reduction.hpp"
#include "eds/source.hpp"

namespace eds {

struct LreSpec {
    unsigned r = 0;     // source count
    unsigned s = 0;     // leaks read <= s-1 sources
    std::size_t n = 0;  // bits per source
    std::size_t m = 0;  // output bits
    std::function<std::uint64_t(const std::vector<std::uint64_t>&)> eval;  // packed inputs
    std::string label;
};

// Generalized inner product: one output bit, XOR over columns of the AND of
// all r inputs. Stand-in subroutine; reports label it "GIP-substitute".
LreSpec gip_lre(unsigned r, std::size_t n);
// Bitwise XOR of all inputs, m = n, with no leaks allowed (s = 1).
LreSpec xor_lre(unsigned r, std::size_t n);

struct LreVerifyReport {
    double epsilon = 0.0;  // exact on the grid, a lower bound on the true worst case
    std::uint64_t source_grids = 0;
    std::uint64_t leak_collections = 0;
    std::string kind = "grid-exact";
};

// Exhaustive adversary grid: every tuple of flat sources with support size
// ceil(2^k), every collection of deterministic one-bit leaks over all
// (s-1)-subsets. Gate: r*n <= 6, m = 1, bounded total work.
LreVerifyReport verify_lre_exhaustive(const LreSpec& spec, double k);

// XOR of spec.eval over the design's edges, edge vertices ascending.
BitVec xor_design_extract(const Design& d, const LreSpec& spec, const std::vector<BitVec>& x);

struct AdversarialReport {
    unsigned r_design = 0;
    Design design;
    AlphaReport alpha;
    std::size_t good_count = 0;
    std::vector<std::size_t> witness_edge;  // an edge inside the good set
    std::optional<double> output_dist_from_uniform;  // exact pushforward when N*n <= 22
    std::string lre_label;
    std::uint64_t seed = 0;
};

std::pair<BitVec, AdversarialReport> adversarial_extract(const AdversarialSource& src, double delta,
                                                         std::uint64_t seed);

struct PlanCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ParamPlan {
    double delta = 0.0;
    double alpha = 0.0;
    std::size_t n = 0;
    double k = 0.0;
    unsigned s = 0;
    std::size_t r = 0, l = 0;         // chunk count and chunk length
    std::size_t N = 0, n_bucket = 0;  // adversarial view
    std::size_t K = 0;                // ceil(N^{delta/2})
    double k_bucket = 0.0;            // n_bucket^{delta/2}
    bool case_r_ge_l = false;
    std::vector<PlanCheck> checks;
    bool feasible = false;
    bool forced = false;
};

ParamPlan plan_params(std::size_t n, double k, unsigned s, double delta, double alpha);
// Explicit chunk/bucket choice for desk-scale runs; the feasibility chain is
// still evaluated and recorded, but only structural violations throw.
ParamPlan explicit_plan(std::size_t n, double k, unsigned s, double delta, std::size_t r,
                        std::size_t N, std::size_t K);

struct LowErrReport {
    ParamPlan plan;
    AdversarialReport design_view;
    std::vector<double> bucket_marginal_entropies;
    std::size_t realized_good = 0;  // buckets with marginal entropy >= k_bucket
    std::optional<double> output_dist_from_uniform;
};

std::pair<BitVec, LowErrReport> small_space_extract_lowerr(const BranchingProgram& bp, double k,
                                                           const ParamPlan& plan,
                                                           std::uint64_t seed, bool force = false);
std::pair<BitVec, LowErrReport> small_space_extract_lowerr(const BranchingProgram& bp, double k,
                                                           double delta, double alpha,
                                                           std::uint64_t seed);

// Truth table over 2^n inputs, packed 64 per word.
struct TruthTable {
    std::size_t n = 0;
    std::vector<std::uint64_t> words;

    bool get(std::uint64_t x) const { return (words[x >> 6] >> (x & 63)) & 1; }
    void set(std::uint64_t x, bool v);
    static TruthTable make(std::size_t n);
};

// Maximum bias over all affine cosets of dimension >= k. Every coset of
// dimension > k averages cosets of dimension exactly k, so the maximum is
// attained at dimension k and only that layer is scanned.
double verify_affine_extractor(const TruthTable& f, unsigned k);

struct AffineCertificate {
    TruthTable table;
    unsigned k = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    unsigned tries_used = 0;
};

struct AffineSearchResult {
    std::optional<AffineCertificate> found;
    unsigned tries_used = 0;
    double best_epsilon = 1.0;
};

// Random search over balanced truth tables, each candidate certified by
// verify_affine_extractor.
AffineSearchResult find_affine_extractor(std::size_t n, unsigned k, double eps,
                                         std::uint64_t seed, unsigned tries);

struct PolylogReport {
    ReductionParams params;
    double residual = 0.0;
    std::size_t components = 0;
    std::size_t transcripts = 0;
    unsigned aff_k = 0;
    double aff_epsilon = 0.0;
    std::optional<double> output_dist_from_uniform;
    std::uint64_t seed = 0;
};

std::pair<bool, PolylogReport> small_space_extract_polylog(const BranchingProgram& bp,
                                                           const ReductionParams& params,
                                                           const AffineCertificate& aff,
                                                           std::uint64_t seed);

}  // namespace eds
