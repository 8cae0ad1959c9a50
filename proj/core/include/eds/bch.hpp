#pragma once

// GF(2^m) arithmetic and narrow-sense binary BCH membership. Coordinate p of a
// length-(2^m - 1) word corresponds to the field exponent j = p - 1.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eds/gf2.hpp"

namespace eds {

class Gf2mField {
  public:
    // Modulus from the fixed table of primitive polynomials, one per m in [2, 16].
    explicit Gf2mField(unsigned m);
    // Custom modulus (bit i = coefficient of x^i, degree-m term required).
    // Primitivity is verified at construction.
    Gf2mField(unsigned m, std::uint32_t modulus);

    unsigned m() const { return m_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t order() const { return size_ - 1; }  // 2^m - 1

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow_alpha(std::uint32_t e) const;  // alpha^(e mod (2^m - 1))

    static std::uint32_t table_modulus(unsigned m);

  private:
    void build_tables();

    unsigned m_;
    std::uint32_t modulus_;
    std::uint32_t size_;                 // 2^m
    std::vector<std::uint32_t> exp_;     // exp_[e] = alpha^e, e in [0, 2^m - 2]
    std::vector<std::uint32_t> log_;     // log_[x] = e with alpha^e = x, x != 0
};

struct BchCode {
    Gf2mField field;
    unsigned t;         // designed error parameter
    std::size_t n;      // 2^m - 1
    std::size_t k_lower;  // n - m*t
    unsigned d_lower;   // 2t + 1

    BchCode(unsigned m, unsigned t);
    BchCode(Gf2mField f, unsigned t);
};

std::uint32_t gf_mul(const Gf2mField& f, std::uint32_t a, std::uint32_t b);

bool bch_contains(const BchCode& code, const BitVec& c);

// Minimum weight of a nonzero codeword, by enumerating all words of weight
// <= cap. nullopt means every nonzero codeword has weight > cap.
std::optional<unsigned> bch_min_distance_bruteforce(const BchCode& code, unsigned cap);

std::size_t bch_dimension_exact(const BchCode& code);

// Visits every weight-r word of F_2^n in lexicographic order of the sorted
// support and calls fn(support, syndrome_is_zero). Used by the design slice
// and by the brute-force oracles.
void for_each_weight_r_word(const BchCode& code, unsigned r,
                            const std::function<void(const std::vector<std::size_t>&, bool)>& fn);

}  // namespace eds
