#pragma once

// (n,r,s)-designs sliced out of BCH codes at Hamming weight r, plus exact
// verification and independence-number machinery. Vertices are 1-indexed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eds/bch.hpp"
#include "eds/gf2.hpp"

namespace eds {

struct DesignBlock {
    std::size_t offset;  // vertices offset+1 .. offset+size
    std::size_t size;
    unsigned m;  // 0 when the block hosts no code
    unsigned t;  // r - s for the hosted code; meaningful iff m > 0
};

struct Provenance {
    enum class Kind { bch, random_baseline };
    Kind kind = Kind::bch;
    std::vector<DesignBlock> blocks;
    std::uint64_t seed = 0;            // random baseline only
    std::size_t merged_duplicates = 0; // odd-r reduction only
    bool odd_reduced = false;
};

struct Design {
    std::size_t n = 0;
    unsigned r = 0;
    unsigned s = 0;
    // Sorted r-subsets of [n], lexicographically sorted, duplicate-free.
    std::vector<std::vector<std::size_t>> edges;
    Provenance provenance;
};

struct VerifyResult {
    bool ok = true;
    std::string reason;
    // Indices into edges of a violating pair, when one exists.
    std::optional<std::pair<std::size_t, std::size_t>> bad_pair;
    bool pairwise_scanned = false;  // true when the quadratic two-view scan ran
};

struct AlphaReport {
    std::size_t alpha = 0;
    bool exact = false;
    double bound_value = 0.0;  // n^{2(r-s)/r}
    double ratio = 0.0;        // alpha / bound_value
    std::vector<std::size_t> witness;
    std::uint64_t nodes_visited = 0;
};

// Exactly the weight-r codewords, verified by bch_contains, in lexicographic
// order of the sorted support. Budget: (n choose r) <= 10^9.
std::vector<BitVec> codeword_slice(const BchCode& code, unsigned r);

Design build_design(std::size_t n, unsigned r, unsigned s);

VerifyResult verify_design_report(const Design& d);
bool verify_design(const Design& d);

AlphaReport independence_number_exact(const Design& d, std::int64_t budget_ms = 60000);

// True iff every coordinate subcube of dimension ell contains an edge's
// indicator vector; equals (alpha < ell).
bool subcube_avoidance_check(const Design& d, std::size_t ell);

Design random_design_baseline(std::size_t n, unsigned r, unsigned s, std::uint64_t seed);

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

}  // namespace eds
