#pragma once

// Brute-force oracles for the zero-sum quantities beta_r and Lambda_r.
//
// beta_r comes in two readings. The subset reading counts distinct elements
// only; the sequence reading allows repeats, counting index-distinct terms.
// The subspace/zero-sum relation beta_r(n - Lambda_r(n)) >= n is produced by a
// parity-check argument whose column multiset can contain repeats, so the
// inequality that actually holds at every scale is the sequence one. For r = 2
// the two readings coincide (a repeated element is itself a zero 2-sum).

#include <cstdint>
#include <optional>

#include "eds/error.hpp"

namespace eds {

// Largest subset of F_2^n with no r distinct elements summing to zero.
// Gate: n <= 4 (exhaustive subset scan), r even.
unsigned beta_r_bruteforce(unsigned n, unsigned r);

// Largest multiset of F_2^n with no r index-distinct terms summing to zero.
// Implemented for r in {2, 4}; same gate.
unsigned beta_r_seq_bruteforce(unsigned n, unsigned r);

// Dimension of the largest subspace of F_2^n containing no weight-r vector.
// Gate: n <= 8 (RREF basis enumeration).
unsigned lambda_r_bruteforce(unsigned n, unsigned r);

struct ZeroSumLemmaCheck {
    unsigned n = 0;
    unsigned r = 0;
    unsigned lambda = 0;
    unsigned d = 0;  // n - lambda
    std::optional<unsigned> beta_subset;  // present when d <= 4
    std::optional<unsigned> beta_seq;
    bool holds_subset = false;  // beta_subset >= n
    bool holds_seq = false;     // beta_seq >= n
};

ZeroSumLemmaCheck zero_sum_lemma_check(unsigned n, unsigned r);

}  // namespace eds
