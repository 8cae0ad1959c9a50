#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "eds/extractor.hpp"

using namespace eds;

TEST_CASE("generalized inner product basics") {
    auto gip3 = gip_lre(3, 1);
    CHECK(gip3.s == 2);
    CHECK(gip3.eval({0, 0, 0}) == 0);
    CHECK(gip3.eval({1, 1, 1}) == 1);
    CHECK(gip3.eval({1, 1, 0}) == 0);
    auto gip2 = gip_lre(2, 3);
    CHECK(gip2.eval({0b101, 0b110}) == 1);  // columns 1*1, 0*1, 1*0 -> one overlap
}

TEST_CASE("gip bias on uniform inputs is exactly 2^-(n+1)") {
    for (std::size_t n = 2; n <= 6; ++n) {
        auto spec = gip_lre(2, n);
        std::size_t ones = 0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) ones += spec.eval({x, y});
        double p1 = static_cast<double>(ones) / std::pow(2.0, 2.0 * static_cast<double>(n));
        double dist = std::abs(p1 - 0.5);
        CHECK(std::abs(dist - std::pow(2.0, -static_cast<double>(n) - 1.0)) <= 1e-15);
    }
}

TEST_CASE("exhaustive LRE verification on the tiny grid") {
    SUBCASE("a constant extractor has distance 1/2") {
        LreSpec c;
        c.r = 2;
        c.s = 1;
        c.n = 1;
        c.m = 1;
        c.label = "const";
        c.eval = [](const std::vector<std::uint64_t>&) -> std::uint64_t { return 0; };
        CHECK(verify_lre_exhaustive(c, 1.0).epsilon == doctest::Approx(0.5));
    }
    SUBCASE("XOR with no leaks extracts perfectly at k = n = 1") {
        CHECK(verify_lre_exhaustive(xor_lre(3, 1), 1.0).epsilon == doctest::Approx(0.0));
    }
    SUBCASE("GIP r=3, n=1: the three 1-source leaks reveal everything") {
        auto rep = verify_lre_exhaustive(gip_lre(3, 1), 1.0);
        CHECK(rep.leak_collections == 64);  // 4^3 deterministic collections
        CHECK(rep.epsilon == doctest::Approx(0.5));
        CHECK(rep.kind == "grid-exact");
    }
    SUBCASE("GIP r=2 without leaks matches the bias formula") {
        CHECK(verify_lre_exhaustive(gip_lre(2, 1), 1.0).epsilon == doctest::Approx(0.25));
        CHECK(verify_lre_exhaustive(gip_lre(2, 2), 2.0).epsilon == doctest::Approx(0.125));
    }
    SUBCASE("size gate") {
        CHECK_THROWS_AS((void)verify_lre_exhaustive(gip_lre(4, 2), 1.0), error);  // r*n = 8 > 6
    }
}

TEST_CASE("xor over a design degenerates to the subroutine on one edge") {
    Design d;
    d.n = 4;
    d.r = 4;
    d.s = 3;
    d.edges = {{1, 2, 3, 4}};
    auto spec = gip_lre(4, 3);  // r*n = 12
    for (std::uint64_t packed = 0; packed < (std::uint64_t{1} << 12); ++packed) {
        std::vector<BitVec> x;
        std::vector<std::uint64_t> raw;
        for (unsigned i = 0; i < 4; ++i) {
            std::uint64_t xi = (packed >> (3 * i)) & 7;
            raw.push_back(xi);
            x.push_back(index_to_bitvec(xi, 3));
        }
        CHECK(bitvec_to_index(xor_design_extract(d, spec, x)) == spec.eval(raw));
    }
}

TEST_CASE("xor over two edges with a constant subroutine cancels") {
    Design d;
    d.n = 5;
    d.r = 2;
    d.s = 1;
    d.edges = {{1, 2}, {3, 4}};
    LreSpec c;
    c.r = 2;
    c.s = 1;
    c.n = 2;
    c.m = 1;
    c.eval = [](const std::vector<std::uint64_t>&) -> std::uint64_t { return 1; };
    std::vector<BitVec> x(5, BitVec::zeros(2));
    CHECK(bitvec_to_index(xor_design_extract(d, c, x)) == 0);

    Design empty;
    empty.n = 5;
    empty.r = 2;
    empty.s = 1;
    CHECK_THROWS_AS((void)xor_design_extract(empty, c, x), error);
}

namespace {

AdversarialSource one_bit_fixture(std::size_t good) {
    std::vector<Dist> comps;
    for (std::size_t i = 0; i < 15; ++i) {
        if (i < good)
            comps.push_back(Dist::uniform(1));
        else
            comps.push_back(Dist::point_mass(BitVec::parse("0")));
    }
    return make_adversarial(std::move(comps), 1.0);
}

}  // namespace

TEST_CASE("adversarial extraction") {
    SUBCASE("all components good: activation is trivial") {
        auto src = one_bit_fixture(15);
        auto [out, rep] = adversarial_extract(src, 1.0, 7);
        CHECK(rep.r_design == 4);
        CHECK(rep.alpha.alpha == 6);
        CHECK(rep.witness_edge.size() == 4);
        REQUIRE(rep.output_dist_from_uniform.has_value());
        // XOR over 105 GIP terms of a uniform 15-bit string: frozen pushforward
        CHECK(*rep.output_dist_from_uniform <= 0.5);
    }
    SUBCASE("K = alpha + 1 activates some edge") {
        auto src = one_bit_fixture(7);
        auto [out, rep] = adversarial_extract(src, 1.0, 3);
        CHECK(rep.good_count == 7);
        for (auto v : rep.witness_edge) CHECK(v <= 7);
    }
    SUBCASE("K <= alpha is rejected with both values named") {
        auto src = one_bit_fixture(6);
        try {
            (void)adversarial_extract(src, 1.0, 3);
            FAIL("expected error");
        } catch (const error& e) {
            CHECK(e.kind() == errc::entropy);
            CHECK(std::string(e.what()).find("6") != std::string::npos);
            CHECK(std::string(e.what()).find("alpha") != std::string::npos);
        }
    }
    SUBCASE("upgrading a bad component never hurts on the fixture") {
        auto src7 = one_bit_fixture(7);
        auto src8 = one_bit_fixture(8);
        auto e7 = *adversarial_extract(src7, 1.0, 3).second.output_dist_from_uniform;
        auto e8 = *adversarial_extract(src8, 1.0, 3).second.output_dist_from_uniform;
        CHECK(e8 <= e7 + 1e-12);
    }
}

TEST_CASE("parameter plans") {
    SUBCASE("worked example: n=128, k=64, s=2, alpha=1/4") {
        auto plan = plan_params(128, 64.0, 2, 0.5, 0.25);
        CHECK(plan.r == 8);
        CHECK(plan.l == 16);
        CHECK_FALSE(plan.case_r_ge_l);
        CHECK(plan.N == 8);
        CHECK(plan.n_bucket == 16);
    }
    SUBCASE("r >= l takes the square root") {
        auto plan = plan_params(64, 64.0, 1, 0.5, 0.25);
        CHECK(plan.r == 16);
        CHECK(plan.l == 4);
        CHECK(plan.case_r_ge_l);
        CHECK(plan.N == 8);
        CHECK(plan.n_bucket == 8);
    }
    SUBCASE("non-integral r is refused") {
        CHECK_THROWS_AS((void)plan_params(128, 63.0, 2, 0.5, 0.25), error);
    }
    SUBCASE("the feasibility chain is evaluated and recorded") {
        auto plan = plan_params(128, 64.0, 2, 0.5, 0.25);
        CHECK(plan.checks.size() >= 4);
        // desk-scale parameters cannot satisfy the asymptotic chain
        CHECK_FALSE(plan.feasible);
        bool bucketing_checked = false;
        for (const auto& c : plan.checks)
            if (c.name == "bucketing-inequality") bucketing_checked = true;
        CHECK(bucketing_checked);
    }
}

TEST_CASE("low-error pipeline") {
    auto bp = corpus::uniform_bp(15);
    bp.s = 1;
    auto plan = explicit_plan(15, 15.0, 1, 1.0, 15, 15, 7);
    SUBCASE("strict mode refuses an infeasible plan") {
        CHECK_THROWS_AS((void)small_space_extract_lowerr(bp, 15.0, plan, 5, false), error);
    }
    SUBCASE("forced run records the exact output distance") {
        auto [out, rep] = small_space_extract_lowerr(bp, 15.0, plan, 5, true);
        CHECK(rep.design_view.design.edges.size() == 105);
        REQUIRE(rep.output_dist_from_uniform.has_value());
        CHECK(rep.realized_good == 15);  // every 1-bit bucket of the uniform source is good
        CHECK(rep.bucket_marginal_entropies.size() == 15);
    }
    SUBCASE("entropy trapped in one bucket shows the shortfall") {
        auto fl = corpus::front_loaded_bp(15, 1);
        fl.s = 1;
        auto [out, rep] = small_space_extract_lowerr(fl, 1.0, plan, 5, true);
        CHECK(rep.realized_good == 1);
        CHECK(rep.realized_good < plan.K);
    }
}

TEST_CASE("affine extractor verification") {
    SUBCASE("parity is constant on a coset of its kernel") {
        TruthTable parity = TruthTable::make(4);
        for (std::uint64_t x = 0; x < 16; ++x) parity.set(x, std::popcount(x) & 1);
        CHECK(verify_affine_extractor(parity, 2) == doctest::Approx(0.5));
        // the full space is balanced
        CHECK(verify_affine_extractor(parity, 4) == doctest::Approx(0.0));
    }
    SUBCASE("the quadratic x1x2 + x3x4 at n = 4") {
        TruthTable q = TruthTable::make(4);
        for (std::uint64_t x = 0; x < 16; ++x)
            q.set(x, ((x & 1) & ((x >> 1) & 1)) ^ (((x >> 2) & 1) & ((x >> 3) & 1)));
        CHECK(verify_affine_extractor(q, 3) == doctest::Approx(0.25));
        CHECK(verify_affine_extractor(q, 4) == doctest::Approx(0.125));
        // monotone nonincreasing in k
        double prev = 1.0;
        for (unsigned k = 1; k <= 4; ++k) {
            double e = verify_affine_extractor(q, k);
            CHECK(e <= prev + 1e-12);
            prev = e;
        }
    }
    SUBCASE("any balanced table certifies at k = n with eps 0") {
        auto res = find_affine_extractor(6, 6, 0.0, 3, 10);
        REQUIRE(res.found.has_value());
        CHECK(res.found->epsilon == 0.0);
        CHECK(res.tries_used == 1);
    }
}

TEST_CASE("affine extractor search") {
    SUBCASE("n=6, k=4: the random-balanced floor is 0.3125") {
        auto res = find_affine_extractor(6, 4, 0.3125, 1, 2000);
        REQUIRE(res.found.has_value());
        CHECK(res.found->epsilon == doctest::Approx(0.3125));
        CHECK(verify_affine_extractor(res.found->table, 4) == doctest::Approx(res.found->epsilon));
    }
    SUBCASE("eps below the floor reports not-found") {
        auto res = find_affine_extractor(6, 4, 0.25, 1, 200);
        CHECK_FALSE(res.found.has_value());
        CHECK(res.tries_used == 200);
        CHECK(res.best_epsilon >= 0.3125 - 1e-12);
    }
    SUBCASE("perfect extraction below full dimension is scarce") {
        auto res = find_affine_extractor(4, 3, 0.0, 5, 100);
        CHECK_FALSE(res.found.has_value());
        CHECK(res.best_epsilon > 0.0);
    }
}

TEST_CASE("polylog pipeline") {
    auto bp = corpus::uniform_bp(8);
    bp.s = 1;
    auto params = make_reduction_params(8, 8.0, 1, 2, 1, std::pow(2.0, -4.0));
    auto aff = find_affine_extractor(8, 2, 0.5, 2026, 10);
    REQUIRE(aff.found.has_value());
    SUBCASE("uniform source gives zero output distance for a balanced table") {
        auto [bit, rep] = small_space_extract_polylog(bp, params, *aff.found, 9);
        REQUIRE(rep.output_dist_from_uniform.has_value());
        CHECK(*rep.output_dist_from_uniform == doctest::Approx(0.0));
        CHECK(rep.residual == 0.0);
    }
    SUBCASE("certificate entropy above Gamma is a configuration error") {
        auto big = find_affine_extractor(8, 3, 0.5, 2026, 10);
        REQUIRE(big.found.has_value());
        CHECK_THROWS_AS((void)small_space_extract_polylog(bp, params, *big.found, 9), error);
    }
}
