#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eds/design.hpp"
#include "eds/zerosum.hpp"
#include "test_util.hpp"

using namespace eds;

TEST_CASE("codeword slice of the [15,11,3] code") {
    BchCode code(4, 1);
    CHECK(codeword_slice(code, 3).size() == 35);
    CHECK(codeword_slice(code, 1).empty());
    auto w4 = codeword_slice(code, 4);
    CHECK(w4.size() == 105);
    for (const auto& w : w4) {
        CHECK(hamming_weight(w) == 4);
        CHECK(bch_contains(code, w));
    }
    // lexicographic order of sorted supports
    for (std::size_t i = 1; i < w4.size(); ++i) CHECK(w4[i - 1].support() < w4[i].support());
}

TEST_CASE("slice budget gate") {
    BchCode big(16, 1);  // n = 65535
    CHECK_THROWS_AS((void)codeword_slice(big, 8), error);
}

TEST_CASE("design (15,4,3) equals the weight-4 slice") {
    Design d = build_design(15, 4, 3);
    CHECK(verify_design(d));
    auto slice = codeword_slice(BchCode(4, 1), 4);
    REQUIRE(d.edges.size() == slice.size());
    for (std::size_t i = 0; i < slice.size(); ++i) CHECK(d.edges[i] == slice[i].support());
}

TEST_CASE("design (16,4,3) adds an isolated vertex") {
    Design d15 = build_design(15, 4, 3);
    Design d16 = build_design(16, 4, 3);
    CHECK(d16.n == 16);
    CHECK(d16.edges == d15.edges);
    CHECK(verify_design(d16));
}

TEST_CASE("design (5,4,3) has no edges") {
    Design d = build_design(5, 4, 3);
    CHECK(d.edges.empty());
    CHECK(verify_design(d));
    auto rep = independence_number_exact(d);
    CHECK(rep.alpha == 5);
    CHECK(rep.exact);
    CHECK(rep.witness.size() == 5);
}

TEST_CASE("general n splits into power-of-two blocks") {
    // 22 = 16 + 4 + 2: only the 16-block hosts a [15,11,3] code
    Design d = build_design(22, 4, 3);
    CHECK(verify_design(d));
    CHECK(d.edges.size() == 105);
    for (const auto& e : d.edges) CHECK(e.back() <= 15);
    CHECK(d.provenance.blocks.size() == 3);
}

TEST_CASE("odd r reduces from r+1") {
    Design d = build_design(15, 3, 3);
    CHECK(d.r == 3);
    CHECK(verify_design(d));
    CHECK(!d.edges.empty());
    CHECK(d.provenance.odd_reduced);
    // every edge arises from a weight-4 codeword with its smallest vertex removed
    auto base = build_design(15, 4, 3);
    std::size_t expected = 0;
    std::vector<std::vector<std::size_t>> reduced;
    for (auto e : base.edges) reduced.emplace_back(e.begin() + 1, e.end());
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    expected = reduced.size();
    CHECK(d.edges.size() == expected);
}

TEST_CASE("s = r allows every weight-r word") {
    Design d = build_design(7, 2, 2);
    CHECK(verify_design(d));
    CHECK(d.edges.size() == 21);  // all pairs of [7]
}

TEST_CASE("verify_design counterexamples") {
    Design d;
    d.n = 6;
    d.r = 3;
    d.s = 2;
    d.edges = {{1, 2, 3}};
    CHECK(verify_design(d));
    d.edges = {{1, 2, 3}, {1, 2, 4}};  // share 2 >= s vertices
    auto rep = verify_design_report(d);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.bad_pair.has_value());
    CHECK(rep.bad_pair->first == 0);
    CHECK(rep.bad_pair->second == 1);
}

TEST_CASE("alpha solver agrees with the naive oracle") {
    std::mt19937_64 rng(23);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Design d = random_design_baseline(12, 3, 2, seed);
        auto rep = independence_number_exact(d);
        CHECK(rep.exact);
        CHECK(rep.alpha == test::alpha_naive(d));
        // witness is independent and has the right size
        CHECK(rep.witness.size() == rep.alpha);
        std::uint64_t wmask = 0;
        for (auto v : rep.witness) wmask |= std::uint64_t{1} << (v - 1);
        for (const auto& e : d.edges) {
            std::uint64_t em = 0;
            for (auto v : e) em |= std::uint64_t{1} << (v - 1);
            CHECK((em & ~wmask) != 0);
        }
    }
    (void)rng;
}

TEST_CASE("alpha of K4 is 1") {
    Design d;
    d.n = 4;
    d.r = 2;
    d.s = 2;
    for (std::size_t i = 1; i <= 4; ++i)
        for (std::size_t j = i + 1; j <= 4; ++j) d.edges.push_back({i, j});
    CHECK(independence_number_exact(d).alpha == 1);
}

TEST_CASE("alpha of the (15,4,3) design") {
    Design d = build_design(15, 4, 3);
    auto rep = independence_number_exact(d);
    CHECK(rep.exact);
    CHECK(rep.alpha == test::alpha_naive(d));
    CHECK(rep.alpha == 6);
    CHECK(rep.ratio == doctest::Approx(6.0 / std::pow(15.0, 0.5)));
}

TEST_CASE("subcube avoidance matches the independence number") {
    Design empty;
    empty.n = 5;
    empty.r = 2;
    empty.s = 1;
    CHECK_FALSE(subcube_avoidance_check(empty, 5));

    Design single;
    single.n = 3;
    single.r = 3;
    single.s = 2;
    single.edges = {{1, 2, 3}};
    CHECK(subcube_avoidance_check(single, 3));

    Design d = build_design(15, 4, 3);
    std::size_t alpha = independence_number_exact(d).alpha;
    for (std::size_t ell = 1; ell <= d.n; ++ell)
        CHECK(subcube_avoidance_check(d, ell) == (alpha < ell));
}

TEST_CASE("beta oracle") {
    for (unsigned n = 1; n <= 4; ++n) CHECK(beta_r_bruteforce(n, 2) == (1u << n));
    CHECK(beta_r_bruteforce(1, 4) == 2);
    CHECK(beta_r_bruteforce(2, 4) == 3);
    CHECK(beta_r_bruteforce(3, 4) == 4);
    CHECK(beta_r_bruteforce(4, 4) == 6);
    CHECK_THROWS_AS((void)beta_r_bruteforce(5, 4), error);
    CHECK_THROWS_AS((void)beta_r_bruteforce(3, 3), error);
}

TEST_CASE("beta sequence oracle") {
    for (unsigned n = 1; n <= 4; ++n) CHECK(beta_r_seq_bruteforce(n, 2) == (1u << n));
    CHECK(beta_r_seq_bruteforce(1, 4) == 4);
    CHECK(beta_r_seq_bruteforce(2, 4) == 5);
    CHECK(beta_r_seq_bruteforce(3, 4) == 6);
    CHECK(beta_r_seq_bruteforce(4, 4) == 8);
}

TEST_CASE("lambda oracle") {
    CHECK(lambda_r_bruteforce(3, 5) == 3);  // r > n
    CHECK(lambda_r_bruteforce(2, 2) == 1);
    CHECK(lambda_r_bruteforce(3, 2) == 1);
    CHECK(lambda_r_bruteforce(4, 2) == 2);
    CHECK(lambda_r_bruteforce(8, 2) == 5);
    CHECK(lambda_r_bruteforce(4, 4) == 3);
    CHECK(lambda_r_bruteforce(5, 4) == 3);
    CHECK(lambda_r_bruteforce(6, 4) == 3);
    CHECK(lambda_r_bruteforce(7, 4) == 3);
    CHECK(lambda_r_bruteforce(8, 4) == 4);
    CHECK_THROWS_AS((void)lambda_r_bruteforce(9, 2), error);
}

TEST_CASE("zero-sum lemma: sequence form holds; the subset form gaps at r=4") {
    for (unsigned n = 2; n <= 8; ++n) {
        auto c = zero_sum_lemma_check(n, 2);
        REQUIRE(c.beta_subset.has_value());
        CHECK(c.holds_subset);
        CHECK(c.holds_seq);
    }
    for (unsigned n = 4; n <= 8; ++n) {
        auto c = zero_sum_lemma_check(n, 4);
        REQUIRE(c.beta_seq.has_value());
        CHECK(c.holds_seq);
    }
    // The parity-check columns of a maximal weight-4-free subspace repeat, so
    // the subset count genuinely falls short here: beta_4(4) = 6 < 8.
    auto gap = zero_sum_lemma_check(8, 4);
    CHECK(gap.d == 4);
    CHECK(*gap.beta_subset == 6);
    CHECK_FALSE(gap.holds_subset);
}

TEST_CASE("conditional design lemma on built designs") {
    struct Case {
        std::size_t n;
        unsigned m;
    } cases[] = {{7, 3}, {15, 4}};
    for (auto [n, m] : cases) {
        Design d = build_design(n, 4, 3);
        auto rep = independence_number_exact(d);
        REQUIRE(rep.exact);
        REQUIRE(rep.alpha <= 8);
        unsigned lambda = lambda_r_bruteforce(static_cast<unsigned>(rep.alpha), 4);
        std::size_t k = bch_dimension_exact(BchCode(m, 1));
        CHECK(rep.alpha - lambda <= n - k);
    }
}

TEST_CASE("random baseline determinism and validity") {
    Design a = random_design_baseline(15, 4, 3, 42);
    Design b = random_design_baseline(15, 4, 3, 42);
    CHECK(a.edges == b.edges);
    CHECK(verify_design(a));
    CHECK(!a.edges.empty());
    CHECK(random_design_baseline(3, 4, 3, 1).edges.empty());
}

TEST_CASE("adding an edge never increases alpha") {
    std::mt19937_64 rng(29);
    Design d = random_design_baseline(10, 3, 2, 5);
    std::size_t alpha = independence_number_exact(d).alpha;
    for (int trial = 0; trial < 20; ++trial) {
        Design d2 = d;
        std::vector<std::size_t> e;
        while (e.size() < 3) {
            std::size_t v = rng() % 10 + 1;
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        d2.edges.push_back(e);
        std::sort(d2.edges.begin(), d2.edges.end());
        d2.edges.erase(std::unique(d2.edges.begin(), d2.edges.end()), d2.edges.end());
        CHECK(independence_number_exact(d2).alpha <= alpha);
    }
}

TEST_CASE("two views of verify_design agree on perturbed designs") {
    std::mt19937_64 rng(31);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Design d = random_design_baseline(12, 4, 3, seed);
        REQUIRE(verify_design(d));
        if (d.edges.size() < 2) continue;
        // graft a copy of edge 0 with one vertex changed so the pair shares 3 vertices
        Design bad = d;
        auto e = bad.edges[0];
        for (std::size_t v = 1; v <= 12; ++v) {
            if (std::find(e.begin(), e.end(), v) == e.end()) {
                e.back() = v;
                break;
            }
        }
        std::sort(e.begin(), e.end());
        if (std::find(bad.edges.begin(), bad.edges.end(), e) == bad.edges.end()) {
            bad.edges.push_back(e);
            std::sort(bad.edges.begin(), bad.edges.end());
            auto rep = verify_design_report(bad);
            CHECK_FALSE(rep.ok);
            CHECK(rep.bad_pair.has_value());
        }
    }
    (void)rng;
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)build_design(3, 4, 3), error);   // r > n
    CHECK_THROWS_AS((void)build_design(10, 4, 0), error);  // s < 1
    CHECK_THROWS_AS((void)build_design(10, 4, 5), error);  // s > r
}
