#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eds/bch.hpp"
#include "eds/design.hpp"

using namespace eds;

TEST_CASE("gf16 multiplication under x^4+x+1") {
    Gf2mField f(4);
    CHECK(f.modulus() == 0x13);
    CHECK(gf_mul(f, 1, 2) == 2);   // 1 * alpha = alpha
    CHECK(gf_mul(f, 0, 2) == 0);   // annihilator
    CHECK(gf_mul(f, 2, 8) == 3);   // alpha * alpha^3 = alpha^4 = alpha + 1
}

TEST_CASE("alpha has full multiplicative order") {
    for (unsigned m = 2; m <= 10; ++m) {
        Gf2mField f(m);
        CHECK(f.pow_alpha(0) == 1);
        CHECK(f.pow_alpha(f.order()) == 1);
        // no smaller power hits 1
        for (std::uint32_t e = 1; e < std::min<std::uint32_t>(f.order(), 64); ++e)
            CHECK(f.pow_alpha(e) != 1);
    }
}

TEST_CASE("non-primitive modulus rejected") {
    // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1, order of x is 5 < 15
    CHECK_THROWS_AS(Gf2mField(4, 0x1F), error);
}

TEST_CASE("gf_mul commutative and associative exhaustively for m <= 4") {
    for (unsigned m = 2; m <= 4; ++m) {
        Gf2mField f(m);
        std::uint32_t size = 1u << m;
        for (std::uint32_t a = 0; a < size; ++a)
            for (std::uint32_t b = 0; b < size; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (std::uint32_t c = 0; c < size; ++c)
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            }
    }
}

TEST_CASE("bch membership examples") {
    BchCode code(4, 1);
    CHECK(code.n == 15);
    CHECK(code.k_lower == 11);
    CHECK(code.d_lower == 3);
    CHECK(bch_contains(code, BitVec::zeros(15)));
    for (std::size_t i = 1; i <= 15; ++i) {
        BitVec e(15);
        e.set(i);
        CHECK_FALSE(bch_contains(code, e));
    }
    CHECK(bch_contains(code, BitVec::ones(15)));
    CHECK_THROWS_AS((void)bch_contains(code, BitVec::zeros(14)), error);
}

TEST_CASE("bch linearity on sampled codewords") {
    BchCode code(4, 1);
    auto words = codeword_slice(code, 4);
    REQUIRE(words.size() >= 2);
    for (std::size_t i = 0; i < words.size(); i += 7) {
        for (std::size_t j = i + 1; j < words.size(); j += 13) {
            BitVec sum = words[i];
            sum ^= words[j];
            CHECK(bch_contains(code, sum));
        }
    }
}

TEST_CASE("bch minimum distance by brute force") {
    CHECK(bch_min_distance_bruteforce(BchCode(4, 1), 5) == 3);
    auto d42 = bch_min_distance_bruteforce(BchCode(4, 2), 7);
    REQUIRE(d42.has_value());
    CHECK(*d42 >= 5);
    CHECK(bch_min_distance_bruteforce(BchCode(3, 1), 3) == 3);
    CHECK_THROWS_AS((void)bch_min_distance_bruteforce(BchCode(6, 1), 3), error);  // n = 63 > 31
}

TEST_CASE("bch exact dimension") {
    CHECK(bch_dimension_exact(BchCode(4, 1)) == 11);
    CHECK(bch_dimension_exact(BchCode(3, 1)) == 4);
    CHECK(bch_dimension_exact(BchCode(4, 3)) >= 3);
    for (unsigned m = 3; m <= 5; ++m)
        for (unsigned t = 1; t * m < (1u << m) - 1 && t <= 3; ++t) {
            BchCode code(m, t);
            CHECK(bch_dimension_exact(code) >= code.k_lower);
        }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BchCode(4, 0), error);
    CHECK_THROWS_AS(BchCode(3, 3), error);  // m*t = 9 >= n = 7
}
