#include "eds/zerosum.hpp"

#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "eds/gf2.hpp"

namespace eds {

namespace {

// Marks every element-mask of F_2^n that contains some r-subset XORing to
// zero, via a subset-sum closure over the 2^(2^n) masks.
std::vector<bool> zero_sum_closure(unsigned n, unsigned r) {
    std::size_t points = std::size_t{1} << n;         // elements of F_2^n
    std::size_t masks = std::size_t{1} << points;     // subsets, n <= 4
    std::vector<bool> bad(masks, false);

    // Seed: all r-subsets with zero XOR.
    std::vector<unsigned> comb(r);
    if (points >= r) {
        for (unsigned i = 0; i < r; ++i) comb[i] = i;
        while (true) {
            unsigned x = 0;
            std::size_t mask = 0;
            for (auto c : comb) {
                x ^= c;
                mask |= std::size_t{1} << c;
            }
            if (x == 0) bad[mask] = true;
            unsigned i = r;
            while (i > 0 && comb[i - 1] == points - (r - i) - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (unsigned j = i; j < r; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    // Superset closure.
    for (std::size_t b = 0; b < points; ++b) {
        std::size_t bit = std::size_t{1} << b;
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if ((mask & bit) && bad[mask ^ bit]) bad[mask] = true;
        }
    }
    return bad;
}

void check_beta_gate(unsigned n, unsigned r) {
    if (n > 4) throw error(errc::size, "beta oracle: n > 4 (2^n element scan)");
    if (r < 2 || r % 2 != 0) throw error(errc::parameter, "beta oracle: r must be even and >= 2");
}

}  // namespace

unsigned beta_r_bruteforce(unsigned n, unsigned r) {
    check_beta_gate(n, r);
    std::size_t points = std::size_t{1} << n;
    auto bad = zero_sum_closure(n, r);
    unsigned best = 0;
    for (std::size_t mask = 0; mask < bad.size(); ++mask) {
        if (!bad[mask]) best = std::max(best, static_cast<unsigned>(std::popcount(mask)));
    }
    (void)points;
    return best;
}

unsigned beta_r_seq_bruteforce(unsigned n, unsigned r) {
    check_beta_gate(n, r);
    if (r == 2) {
        // A repeated element is itself a zero 2-sum, so sequences reduce to sets.
        return beta_r_bruteforce(n, 2);
    }
    if (r != 4) throw error(errc::parameter, "beta sequence oracle: implemented for r in {2, 4}");
    // For r = 4: at most one value may repeat (two repeated values v,v,w,w sum
    // to zero), with multiplicity at most 3 (four copies sum to zero). Adding
    // up to two extra copies of one element never creates a new zero 4-sum, so
    // the maximum multiset is a maximum zero-4-sum-free set plus two copies.
    unsigned set_val = beta_r_bruteforce(n, 4);
    return set_val + 2;
}

unsigned lambda_r_bruteforce(unsigned n, unsigned r) {
    if (n > 8) throw error(errc::size, "lambda oracle: n > 8 (RREF enumeration)");
    if (n < 1 || r < 1) throw error(errc::parameter, "lambda oracle: require n, r >= 1");
    if (r > n) return n;  // no weight-r vector exists at all

    // Descend through dimensions; enumerate canonical RREF bases: pivot column
    // combination plus free entries to the right of each pivot.
    for (unsigned d = n; d > 0; --d) {
        std::vector<unsigned> pivots(d);
        for (unsigned i = 0; i < d; ++i) pivots[i] = i;  // 0-indexed columns
        bool found = false;
        while (!found) {
            std::vector<bool> is_pivot(n, false);
            for (auto p : pivots) is_pivot[p] = true;
            // free cells: (row i, column c) with c > pivots[i], c not a pivot
            std::vector<std::pair<unsigned, unsigned>> free_cells;
            for (unsigned i = 0; i < d; ++i)
                for (unsigned c = pivots[i] + 1; c < n; ++c)
                    if (!is_pivot[c]) free_cells.emplace_back(i, c);

            std::size_t fills = std::size_t{1} << free_cells.size();
            for (std::size_t f = 0; f < fills && !found; ++f) {
                std::vector<std::uint32_t> rows(d, 0);
                for (unsigned i = 0; i < d; ++i) rows[i] = std::uint32_t{1} << pivots[i];
                for (std::size_t b = 0; b < free_cells.size(); ++b)
                    if ((f >> b) & 1) rows[free_cells[b].first] |= std::uint32_t{1} << free_cells[b].second;
                // Walk the 2^d elements Gray-code style, checking weights.
                std::uint32_t cur = 0;
                bool has_weight_r = false;
                for (std::uint64_t g = 1; g < (std::uint64_t{1} << d); ++g) {
                    cur ^= rows[static_cast<std::size_t>(std::countr_zero(g))];
                    if (static_cast<unsigned>(std::popcount(cur)) == r) {
                        has_weight_r = true;
                        break;
                    }
                }
                if (!has_weight_r) found = true;
            }
            if (found) break;
            // next pivot combination
            unsigned i = d;
            while (i > 0 && pivots[i - 1] == n - (d - i) - 1) --i;
            if (i == 0) break;
            ++pivots[i - 1];
            for (unsigned j = i; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
        }
        if (found) return d;
    }
    return 0;
}

ZeroSumLemmaCheck zero_sum_lemma_check(unsigned n, unsigned r) {
    if (r > n) throw error(errc::parameter, "zero_sum_lemma_check: lemma requires r <= n");
    ZeroSumLemmaCheck c;
    c.n = n;
    c.r = r;
    c.lambda = lambda_r_bruteforce(n, r);
    c.d = n - c.lambda;  // >= 1 since the full space contains a weight-r vector
    if (c.d <= 4) {
        c.beta_subset = beta_r_bruteforce(c.d, r);
        c.beta_seq = beta_r_seq_bruteforce(c.d, r);
        c.holds_subset = *c.beta_subset >= n;
        c.holds_seq = *c.beta_seq >= n;
    }
    return c;
}

}  // namespace eds
