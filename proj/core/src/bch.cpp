#include "eds/bch.hpp"

#include <functional>
#include <string>

namespace eds {

namespace {

// Primitive polynomials over GF(2), bit i = coefficient of x^i.
constexpr std::uint32_t kPrimitive[17] = {
    0, 0,
    0x7,      // m=2:  x^2 + x + 1
    0xB,      // m=3:  x^3 + x + 1
    0x13,     // m=4:  x^4 + x + 1
    0x25,     // m=5:  x^5 + x^2 + 1
    0x43,     // m=6:  x^6 + x + 1
    0x89,     // m=7:  x^7 + x^3 + 1
    0x11D,    // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // m=9:  x^9 + x^4 + 1
    0x409,    // m=10: x^10 + x^3 + 1
    0x805,    // m=11: x^11 + x^2 + 1
    0x1053,   // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B,   // m=13: x^13 + x^4 + x^3 + x + 1
    0x4443,   // m=14: x^14 + x^10 + x^6 + x + 1
    0x8003,   // m=15: x^15 + x + 1
    0x1100B,  // m=16: x^16 + x^12 + x^3 + x + 1
};

}  // namespace

std::uint32_t Gf2mField::table_modulus(unsigned m) {
    if (m < 2 || m > 16) throw error(errc::parameter, "Gf2mField: m must be in [2, 16]");
    return kPrimitive[m];
}

Gf2mField::Gf2mField(unsigned m) : Gf2mField(m, table_modulus(m)) {}

Gf2mField::Gf2mField(unsigned m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
    if (m < 2 || m > 16) throw error(errc::parameter, "Gf2mField: m must be in [2, 16]");
    if ((modulus_ >> m_) != 1)
        throw error(errc::parameter, "Gf2mField: modulus must have degree exactly m");
    size_ = std::uint32_t{1} << m_;
    build_tables();
}

void Gf2mField::build_tables() {
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t e = 0; e < size_ - 1; ++e) {
        if (x == 1 && e != 0) {
            throw error(errc::config, "Gf2mField: modulus is not primitive (alpha order " +
                                          std::to_string(e) + " < " + std::to_string(size_ - 1) + ")");
        }
        exp_[e] = x;
        log_[x] = e;
        x <<= 1;
        if (x & size_) x ^= modulus_;
    }
    if (x != 1) throw error(errc::config, "Gf2mField: modulus is not primitive");
}

std::uint32_t Gf2mField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a >= size_ || b >= size_)
        throw error(errc::parameter, "Gf2mField::mul: operand outside the field");
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= size_ - 1) e -= size_ - 1;
    return exp_[e];
}

std::uint32_t Gf2mField::pow_alpha(std::uint32_t e) const { return exp_[e % (size_ - 1)]; }

std::uint32_t gf_mul(const Gf2mField& f, std::uint32_t a, std::uint32_t b) { return f.mul(a, b); }

BchCode::BchCode(unsigned m, unsigned t) : BchCode(Gf2mField(m), t) {}

BchCode::BchCode(Gf2mField f, unsigned t_)
    : field(std::move(f)), t(t_), n((std::size_t{1} << field.m()) - 1) {
    if (t < 1) throw error(errc::parameter, "BchCode: t must be >= 1");
    if (static_cast<std::size_t>(field.m()) * t >= n)
        throw error(errc::parameter, "BchCode: require m*t < n");
    k_lower = n - static_cast<std::size_t>(field.m()) * t;
    d_lower = 2 * t + 1;
}

bool bch_contains(const BchCode& code, const BitVec& c) {
    if (c.size() != code.n) throw error(errc::dimension, "bch_contains: word length != block length");
    auto supp = c.support();
    for (unsigned i = 1; i <= 2 * code.t; ++i) {
        std::uint32_t s = 0;
        for (auto p : supp) s ^= code.field.pow_alpha(i * static_cast<std::uint32_t>(p - 1));
        if (s != 0) return false;
    }
    return true;
}

namespace {

// Recursive enumeration of weight-r supports with incremental syndromes.
struct SliceWalker {
    const BchCode& code;
    unsigned r;
    std::vector<std::uint32_t> syndrome;  // indices 0..2t-1 for roots alpha^1..alpha^2t
    std::vector<std::size_t> support;
    const std::function<void(const std::vector<std::size_t>&, bool)>& fn;

    void walk(std::size_t next, unsigned remaining) {
        if (remaining == 0) {
            bool zero = true;
            for (auto s : syndrome)
                if (s != 0) {
                    zero = false;
                    break;
                }
            fn(support, zero);
            return;
        }
        for (std::size_t p = next; p + remaining <= code.n + 1; ++p) {
            for (unsigned i = 1; i <= 2 * code.t; ++i)
                syndrome[i - 1] ^= code.field.pow_alpha(i * static_cast<std::uint32_t>(p - 1));
            support.push_back(p);
            walk(p + 1, remaining - 1);
            support.pop_back();
            for (unsigned i = 1; i <= 2 * code.t; ++i)
                syndrome[i - 1] ^= code.field.pow_alpha(i * static_cast<std::uint32_t>(p - 1));
        }
    }
};

}  // namespace

void for_each_weight_r_word(const BchCode& code, unsigned r,
                            const std::function<void(const std::vector<std::size_t>&, bool)>& fn) {
    if (r < 1 || r > code.n) throw error(errc::parameter, "for_each_weight_r_word: r out of range");
    SliceWalker w{code, r, std::vector<std::uint32_t>(2 * code.t, 0), {}, fn};
    w.support.reserve(r);
    w.walk(1, r);
}

std::optional<unsigned> bch_min_distance_bruteforce(const BchCode& code, unsigned cap) {
    if (code.n > 31) throw error(errc::size, "bch_min_distance_bruteforce: n > 31");
    if (cap < 1) throw error(errc::parameter, "bch_min_distance_bruteforce: cap must be >= 1");
    for (unsigned w = 1; w <= cap && w <= code.n; ++w) {
        bool found = false;
        for_each_weight_r_word(code, w, [&](const std::vector<std::size_t>&, bool member) {
            if (member) found = true;
        });
        if (found) return w;
    }
    return std::nullopt;
}

std::size_t bch_dimension_exact(const BchCode& code) {
    if (code.n > 1023) throw error(errc::size, "bch_dimension_exact: n > 1023");
    // Parity checks over F_2: one row per (root index i, field bit b).
    std::vector<BitVec> rows;
    rows.reserve(2 * code.t * code.field.m());
    for (unsigned i = 1; i <= 2 * code.t; ++i) {
        for (unsigned b = 0; b < code.field.m(); ++b) {
            BitVec row(code.n);
            for (std::size_t p = 1; p <= code.n; ++p) {
                std::uint32_t v = code.field.pow_alpha(i * static_cast<std::uint32_t>(p - 1));
                if ((v >> b) & 1) row.set(p);
            }
            rows.push_back(row);
        }
    }
    std::size_t rank = rref(code.n, rows).dim();
    return code.n - rank;
}

}  // namespace eds
