#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eds/gf2.hpp"
#include "test_util.hpp"

using namespace eds;

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(BitVec::zeros(8)) == 0);
    CHECK(hamming_weight(BitVec::ones(8)) == 8);
    CHECK(hamming_weight(BitVec::parse("1011")) == 3);
}

TEST_CASE("hamming distance") {
    BitVec x = BitVec::parse("1010");
    CHECK(hamming_distance(x, x) == 0);
    CHECK(hamming_distance(BitVec::parse("0000"), BitVec::parse("1111")) == 4);
    CHECK(hamming_distance(BitVec::parse("1010"), BitVec::parse("0110")) == 2);
    CHECK_THROWS_AS((void)hamming_distance(BitVec::zeros(3), BitVec::zeros(4)), error);
}

TEST_CASE("distance equals weight of xor on random pairs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        BitVec a = test::random_bitvec(70, rng);
        BitVec b = test::random_bitvec(70, rng);
        BitVec c = a;
        c ^= b;
        CHECK(hamming_distance(a, b) == hamming_weight(c));
    }
}

TEST_CASE("rref examples") {
    auto s = rref({BitVec::parse("100"), BitVec::parse("010")});
    CHECK(s.dim() == 2);
    CHECK(s.basis()[0] == BitVec::parse("100"));
    CHECK(s.basis()[1] == BitVec::parse("010"));

    CHECK(rref({BitVec::parse("110"), BitVec::parse("110")}).dim() == 1);
    CHECK(rref({BitVec::parse("111"), BitVec::parse("101"), BitVec::parse("010")}).dim() == 2);
    CHECK(rref(3, {}).dim() == 0);
}

TEST_CASE("rref is idempotent and canonical") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Subspace s = test::random_subspace(10, 5, rng);
        if (s.dim() == 0) continue;
        CHECK(rref(10, s.basis()) == s);
        // same span from a shuffled, mixed generating set
        std::vector<BitVec> gen = s.basis();
        BitVec mixed = gen[0];
        for (std::size_t j = 1; j < gen.size(); ++j) mixed ^= gen[j];
        gen.push_back(mixed);
        std::shuffle(gen.begin(), gen.end(), rng);
        CHECK(rref(10, gen) == s);
    }
}

TEST_CASE("intersect examples") {
    Subspace s = rref({BitVec::parse("110"), BitVec::parse("001")});
    CHECK(intersect(s, s) == s);
    CHECK(intersect(rref({BitVec::parse("100")}), rref({BitVec::parse("010")})).dim() == 0);
    Subspace full = rref({BitVec::parse("100"), BitVec::parse("010"), BitVec::parse("001")});
    CHECK(intersect(full, s) == s);
}

TEST_CASE("dimension formula on random subspaces") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        Subspace a = test::random_subspace(8, 4, rng);
        Subspace b = test::random_subspace(8, 4, rng);
        CHECK(intersect(a, b).dim() + sum(a, b).dim() == a.dim() + b.dim());
        CHECK(static_cast<int>(intersect(a, b).dim()) >=
              static_cast<int>(a.dim()) + static_cast<int>(b.dim()) - 8);
    }
}

TEST_CASE("subspace membership") {
    Subspace s = rref({BitVec::parse("1100"), BitVec::parse("0011")});
    CHECK(s.contains(BitVec::parse("1111")));
    CHECK(s.contains(BitVec::parse("0000")));
    CHECK_FALSE(s.contains(BitVec::parse("1000")));
    CHECK(s.elements().size() == 4);
}

TEST_CASE("project examples") {
    CHECK(project(BitVec::parse("10110"), {1, 3, 5}) == BitVec::parse("110"));
    BitVec x = BitVec::parse("10110");
    CHECK(project(x, {1, 2, 3, 4, 5}) == x);
    CHECK(project(BitVec::parse("11111"), {2, 4}) == BitVec::parse("11"));
    CHECK_THROWS_AS((void)project(x, {6}), error);
}

TEST_CASE("project preserves independence when coords cover the support") {
    Subspace cube = subcube(6, {2, 4, 5});
    Subspace img = project(cube, {2, 4, 5, 6});
    CHECK(img.dim() == cube.dim());
    // and the projection dimension bound dim >= original - (n - |coords|)
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        Subspace s = test::random_subspace(8, 5, rng);
        std::vector<std::size_t> coords = {1, 2, 3, 5, 7, 8};
        Subspace p = project(s, coords);
        CHECK(static_cast<int>(p.dim()) >= static_cast<int>(s.dim()) - (8 - 6));
    }
}

TEST_CASE("subcube examples") {
    Subspace s = subcube(4, {1, 2});
    CHECK(s.dim() == 2);
    CHECK(s.contains(BitVec::parse("1000")));
    CHECK(s.contains(BitVec::parse("0100")));
    CHECK_FALSE(s.contains(BitVec::parse("0010")));
    CHECK(subcube(4, {}).dim() == 0);
    CHECK(subcube(3, {1, 2, 3}).dim() == 3);
    CHECK_THROWS_AS((void)subcube(3, {4}), error);
}

TEST_CASE("length cap") {
    CHECK_THROWS_AS(BitVec v(0), error);
    CHECK_THROWS_AS(BitVec v((std::size_t{1} << 20) + 1), error);
}
