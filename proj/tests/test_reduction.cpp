#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "eds/reduction.hpp"

using namespace eds;

namespace {

// Corpus parameter rule: gamma = 1, t as large as the width rule allows but
// no larger than the formula value, eps = 2^{-k/2}.
ReductionParams corpus_params(const BranchingProgram& bp, double k) {
    unsigned t_formula =
        static_cast<unsigned>(std::floor(std::log2(4.0 * static_cast<double>(bp.n) / k)));
    std::size_t w0 = bp.n / 2;
    unsigned t_cap = 0;
    while ((w0 >> (t_cap + 1)) << (t_cap + 1) == w0 && (w0 >> (t_cap + 1)) >= 1) ++t_cap;
    unsigned t = std::min(t_formula, t_cap);
    return make_reduction_params(bp.n, k, bp.s, 1, t, std::pow(2.0, -k / 2.0));
}

}  // namespace

TEST_CASE("strict parameter rule") {
    auto p = reduction_params(1024, 256.0, 2);
    CHECK(p.t_formula == 4);
    CHECK(p.gamma_formula == 3);
    CHECK(p.eps == doctest::Approx(std::pow(2.0, -128.0)));
    // 1024 / (2*3) is not integral, so Gamma rounds down to 2
    CHECK(p.gamma == 2);
    CHECK(p.t == 4);

    // k = n: the log ratio degenerates; the documented rule divides by
    // max(1, log2(n/k)) = 1
    auto q = reduction_params(1024, 1024.0, 1);
    CHECK(q.gamma_formula == 51);

    CHECK_THROWS_AS((void)reduction_params(64, 4.0, 1), error);  // Gamma < 1
}

TEST_CASE("explicit parameters validate the width rule") {
    CHECK_NOTHROW((void)make_reduction_params(8, 4.0, 1, 1, 2, 0.25));
    CHECK_THROWS_AS((void)make_reduction_params(8, 4.0, 1, 1, 3, 0.25), error);   // width 0.5
    CHECK_THROWS_AS((void)make_reduction_params(12, 4.0, 1, 1, 2, 0.25), error);  // width 1.5
    CHECK_THROWS_AS((void)make_reduction_params(8, 4.0, 1, 0, 1, 0.25), error);   // Gamma = 0
}

TEST_CASE("uniform program: every leaf is case 1 at depth 0") {
    auto bp = corpus::uniform_bp(8);
    bp.s = 1;
    auto p = make_reduction_params(8, 8.0, 1, 2, 1, 0.0625);
    auto leaves = run_fixing_procedure(bp, p);
    double total = 0.0;
    for (const auto& leaf : leaves) {
        total += leaf.probability;
        if (leaf.probability == 0.0) continue;
        CHECK(leaf.transcript.case_label == 1);
        CHECK(leaf.transcript.tau_star == 0);
        for (const auto& sl : leaf.transcript.A.back()) CHECK(sl.entropy >= 1.0);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixing leaves reconstruct the distribution and are prefix-free") {
    for (std::uint64_t seed : {3ULL, 7ULL, 11ULL}) {
        auto bp = corpus::random_dyadic_bp(8, 1, seed);
        double k = min_entropy(bp_exact_dist(bp));
        if (k < 1.0) continue;
        auto p = corpus_params(bp, k);
        auto leaves = run_fixing_procedure(bp, p);

        Dist exact = bp_exact_dist(bp);
        std::vector<double> acc(exact.p.size(), 0.0);
        double total = 0.0;
        std::size_t positive = 0;
        for (const auto& leaf : leaves) {
            total += leaf.probability;
            if (leaf.probability == 0.0) continue;
            ++positive;
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += leaf.probability * leaf.conditional.p[i];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < acc.size(); ++i)
            CHECK(acc[i] == doctest::Approx(exact.p[i]).epsilon(1e-12));

        // support bound and prefix-freeness over fixed-value strings
        double bound = std::pow(2.0, (p.t + 2.0) * p.s * static_cast<double>(p.gamma));
        CHECK(static_cast<double>(positive) <= bound);
        std::vector<std::vector<unsigned>> vals;
        for (const auto& leaf : leaves) {
            if (leaf.probability == 0.0) continue;
            std::vector<unsigned> flat;
            for (const auto& round : leaf.transcript.fixed_values)
                flat.insert(flat.end(), round.begin(), round.end());
            vals.push_back(std::move(flat));
        }
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = 0; j < vals.size(); ++j) {
                if (i == j) continue;
                bool prefix = vals[i].size() < vals[j].size() &&
                              std::equal(vals[i].begin(), vals[i].end(), vals[j].begin());
                CHECK_FALSE(prefix);
            }
    }
}

TEST_CASE("entropy concentrated up front forces deeper fixing") {
    // With Gamma = 2 the selection needs two slices of entropy >= 1, but all
    // the entropy sits in the first quarter, so the procedure must recurse.
    auto bp = corpus::front_loaded_bp(8, 2);
    bp.s = 1;
    auto p = make_reduction_params(8, 2.0, 1, 2, 1, 0.5);
    auto leaves = run_fixing_procedure(bp, p);
    bool deep = false;
    for (const auto& leaf : leaves)
        if (leaf.probability > 0.0 && leaf.transcript.tau_star >= 1) deep = true;
    CHECK(deep);
}

TEST_CASE("independent source sequence assembly") {
    SUBCASE("uniform program blocks") {
        auto bp = corpus::uniform_bp(8);
        bp.s = 1;
        auto p = make_reduction_params(8, 8.0, 1, 2, 1, 0.0625);
        auto leaves = run_fixing_procedure(bp, p);
        for (const auto& leaf : leaves) {
            if (leaf.probability == 0.0) continue;
            auto w = assemble_iss(bp, leaf);
            CHECK(w.blocks.size() == 2);
            for (double h : w.block_entropies) CHECK(h >= 1.0 - 1e-12);
            // product structure: joint equals the tensor of block marginals
            Dist prod = w.block_dists[0];
            for (std::size_t b = 1; b < w.block_dists.size(); ++b)
                prod = product(prod, w.block_dists[b]);
            CHECK(stat_dist(prod, leaf.conditional) <= 1e-9);
        }
    }
    SUBCASE("product structure across the seeded corpus") {
        for (std::uint64_t seed : {5ULL, 9ULL}) {
            auto bp = corpus::random_dyadic_bp(8, 1, seed);
            double k = min_entropy(bp_exact_dist(bp));
            if (k < 1.0) continue;
            auto p = corpus_params(bp, k);
            for (const auto& leaf : run_fixing_procedure(bp, p)) {
                if (leaf.probability == 0.0 || leaf.transcript.case_label != 1) continue;
                auto w = assemble_iss(bp, leaf);
                Dist prod = w.block_dists[0];
                for (std::size_t b = 1; b < w.block_dists.size(); ++b)
                    prod = product(prod, w.block_dists[b]);
                CHECK(stat_dist(prod, leaf.conditional) <= 1e-9);
                for (double h : w.block_entropies) CHECK(h >= 1.0 - 1e-12);
            }
        }
    }
    SUBCASE("case-2 leaves are rejected") {
        FixingLeaf fake;
        fake.transcript.case_label = 2;
        auto bp = corpus::uniform_bp(8);
        CHECK_THROWS_AS((void)assemble_iss(bp, fake), error);
    }
}

TEST_CASE("bit-block decomposition across the corpus") {
    for (const auto& [name, bp] : corpus::small_space_corpus()) {
        CAPTURE(name);
        double k = min_entropy(bp_exact_dist(bp));
        auto p = corpus_params(bp, k);
        auto dec = decompose_to_bitblock(bp, p);

        // residual within the paper bound (plus enumeration slack)
        CHECK(dec.mixture.residual <= std::pow(2.0, -k / 2.0) + 1e-9);

        // every component simple with min-entropy Gamma
        for (const auto& c : dec.mixture.components) {
            CHECK(c.simple());
            CHECK(c.dim() == p.gamma);
        }

        // weights + residual account for everything
        double wsum = dec.mixture.residual;
        for (double w : dec.mixture.weights) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));

        // non-residual mass reconstructs exactly once the case-2 part is added
        Dist exact = bp_exact_dist(bp);
        Dist mix = dec.mixture.mixture_dist(bp.n);
        auto leaves = run_fixing_procedure(bp, p);
        for (const auto& leaf : leaves) {
            if (leaf.probability == 0.0 || leaf.transcript.case_label != 2) continue;
            for (std::size_t i = 0; i < mix.p.size(); ++i)
                mix.p[i] += leaf.probability * leaf.conditional.p[i];
        }
        CHECK(stat_dist(mix, exact) <= 1e-9);

        // transcript count within the support bound
        double bound = std::pow(2.0, (p.t + 2.0) * p.s * static_cast<double>(p.gamma));
        CHECK(static_cast<double>(dec.transcripts) <= bound);

        // closure: every component round-trips through a width-2 program
        for (std::size_t i = 0; i < std::min<std::size_t>(dec.mixture.components.size(), 8); ++i) {
            auto rt = bitblock_to_bp(dec.mixture.components[i]);
            CHECK(stat_dist(bp_exact_dist(rt), dec.mixture.components[i].exact_dist()) <= 1e-12);
        }
    }
}

TEST_CASE("uniform program decomposes with zero residual") {
    auto bp = corpus::uniform_bp(8);
    bp.s = 1;
    auto p = make_reduction_params(8, 8.0, 1, 2, 1, std::pow(2.0, -4.0));
    auto dec = decompose_to_bitblock(bp, p);
    CHECK(dec.mixture.residual == 0.0);
    CHECK(dec.case2_leaves == 0);
    for (const auto& c : dec.mixture.components) CHECK(c.dim() == 2);
}

TEST_CASE("crossover inequality is evaluated and reported") {
    auto bp = corpus::uniform_bp(8);
    bp.s = 1;
    auto p = make_reduction_params(8, 8.0, 1, 1, 1, 0.0625);
    auto dec = decompose_to_bitblock(bp, p);
    // k - (t+2)sG - log2(1/eps) = 8 - 3 - 4 = 1; Gt + n/2 = 1 + 4 = 5
    CHECK_FALSE(dec.crossover_contradicted);
    auto p2 = make_reduction_params(8, 8.0, 1, 1, 1, 0.5);
    // 8 - 3 - 1 = 4 < 5 still
    CHECK_FALSE(decompose_to_bitblock(bp, p2).crossover_contradicted);
}

TEST_CASE("grid reduction") {
    SUBCASE("uniform program never fails") {
        auto bp = corpus::uniform_bp(8);
        bp.s = 1;
        auto g = grid_reduction_7(bp, 0.25, 8.0);
        CHECK(g.r == 2);
        CHECK(g.l == 4);
        CHECK(g.failure_mass == 0.0);
        for (const auto& fx : g.fixings)
            if (fx.probability > 0.0) CHECK(fx.gamma_realized == doctest::Approx(8.0));
    }
    SUBCASE("r = 1 gives the trivial fixing") {
        auto bp = corpus::copy_pairs_bp(8);
        auto g = grid_reduction_7(bp, 0.25, 4.0);
        CHECK(g.r == 1);
        REQUIRE(g.fixings.size() == 1);
        CHECK(g.fixings[0].probability == 1.0);
        CHECK(g.fixings[0].gamma_realized ==
              doctest::Approx(min_entropy(bp_exact_dist(bp))));
    }
    SUBCASE("failure mass within the paper bound on the corpus") {
        for (const auto& [name, bp] : corpus::small_space_corpus()) {
            CAPTURE(name);
            double k = min_entropy(bp_exact_dist(bp));
            // all divisors r of n with r*s <= k/4 keep the chain-rule budget
            for (std::size_t r = 1; r <= bp.n; ++r) {
                if (bp.n % r != 0) continue;
                if (static_cast<double>(r) * bp.s > k / 4.0) continue;
                double alpha = static_cast<double>(r) * bp.s / k;
                if (alpha <= 0.0 || alpha > 0.25) continue;
                auto g = grid_reduction_7(bp, alpha, k);
                CHECK(g.failure_mass <= std::pow(2.0, -k / 4.0) + 1e-12);

                // reconstruction: fixings tensor back to the exact distribution
                Dist exact = bp_exact_dist(bp);
                std::vector<double> acc(exact.p.size(), 0.0);
                for (const auto& fx : g.fixings) {
                    if (fx.probability == 0.0) continue;
                    Dist prod = fx.slices[0];
                    for (std::size_t i = 1; i < fx.slices.size(); ++i)
                        prod = product(prod, fx.slices[i]);
                    for (std::size_t i = 0; i < acc.size(); ++i)
                        acc[i] += fx.probability * prod.p[i];
                }
                for (std::size_t i = 0; i < acc.size(); ++i)
                    CHECK(acc[i] == doctest::Approx(exact.p[i]).epsilon(1e-9));
            }
        }
    }
    SUBCASE("divisibility errors") {
        auto bp = corpus::uniform_bp(9);
        CHECK_THROWS_AS((void)grid_reduction_7(bp, 0.25, 8.0), error);  // r = 2, 9 % 2 != 0
        CHECK_THROWS_AS((void)grid_reduction_7(bp, 0.2, 9.0), error);   // r not integral
    }
}

TEST_CASE("barrier accounting") {
    auto none = barrier_check(16, 3.0, 1);
    CHECK_FALSE(none.any_viable);
    CHECK(none.cases.size() == 5);  // divisors 1,2,4,8,16

    auto some = barrier_check(16, 8.0, 1);
    CHECK(some.any_viable);
    bool found = false;
    for (const auto& c : some.cases)
        if (c.viable && c.r == 2 && c.l == 8) found = true;
    CHECK(found);

    auto prime = barrier_check(13, 5.0, 1);
    CHECK(prime.cases.size() == 2);  // 1x13 and 13x1

    // k < sqrt(n) never admits a viable factorization
    for (std::size_t n : {16UL, 36UL, 64UL}) {
        for (double k = 1.0; k * k < static_cast<double>(n); k += 1.0) {
            for (unsigned s = 1; s <= 3; ++s) CHECK_FALSE(barrier_check(n, k, s).any_viable);
        }
    }
}
