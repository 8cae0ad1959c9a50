#pragma once

// Bit vectors and subspaces over GF(2).
//
// Coordinates are 1-indexed everywhere in this library, matching the usual
// convention [n] = {1, ..., n}. Coordinate 1 is the leftmost character of the
// text form.

#include <cstdint>
#include <vector>

#include "eds/error.hpp"

namespace eds {

inline constexpr std::size_t kMaxBits = std::size_t{1} << 20;

class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n);

    static BitVec zeros(std::size_t n) { return BitVec(n); }
    static BitVec ones(std::size_t n);
    // Parses a string of '0'/'1' characters, coordinate 1 leftmost.
    static BitVec parse(const std::string& s);
    // Builds from 1-indexed support coordinates.
    static BitVec from_support(std::size_t n, const std::vector<std::size_t>& coords);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const;          // 1-indexed
    void set(std::size_t i, bool v = true); // 1-indexed

    std::size_t weight() const;
    std::vector<std::size_t> support() const;  // ascending, 1-indexed
    bool is_zero() const;

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool operator==(const BitVec& o) const = default;
    // Lexicographic order on the text form (coordinate 1 most significant).
    bool lex_less(const BitVec& o) const;

    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return w_; }
    // Value of coordinates (lo..lo+count-1], packed with the lowest coordinate
    // in bit 0. count <= 64.
    std::uint64_t extract(std::size_t lo, std::size_t count) const;

  private:
    void check_index(std::size_t i) const;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

std::size_t hamming_weight(const BitVec& x);
std::size_t hamming_distance(const BitVec& x, const BitVec& y);
bool dot(const BitVec& x, const BitVec& y);  // parity of <x,y>

class Subspace {
  public:
    // Zero-dimensional subspace of F_2^n.
    explicit Subspace(std::size_t n) : n_(n) {}

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BitVec>& basis() const { return basis_; }

    bool contains(const BitVec& x) const;
    // All 2^dim elements; throws errc::size if dim > 24.
    std::vector<BitVec> elements() const;

    bool operator==(const Subspace& o) const = default;

    friend Subspace rref(std::size_t n, const std::vector<BitVec>& rows);

  private:
    std::size_t n_ = 0;
    std::vector<BitVec> basis_;  // reduced row echelon form, pivots ascending
};

// Canonical subspace spanned by the rows (RREF basis). Empty input yields the
// zero-dimensional subspace only when n is supplied via the overload below.
Subspace rref(const std::vector<BitVec>& rows);
Subspace rref(std::size_t n, const std::vector<BitVec>& rows);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
// {x : <r, x> = 0 for every row r}.
Subspace null_space(std::size_t n, const std::vector<BitVec>& rows);

// Restriction of x to the 1-indexed coordinate set (must be sorted, nonempty).
BitVec project(const BitVec& x, const std::vector<std::size_t>& coords);
Subspace project(const Subspace& s, const std::vector<std::size_t>& coords);

// span{e_i : i in coords}.
Subspace subcube(std::size_t n, const std::vector<std::size_t>& coords);

}  // namespace eds
