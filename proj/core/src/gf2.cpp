#include "eds/gf2.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace eds {

BitVec::BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {
    if (n < 1 || n > kMaxBits) {
        throw error(errc::size, "BitVec length must be in [1, 2^20], got " + std::to_string(n));
    }
}

BitVec BitVec::ones(std::size_t n) {
    BitVec v(n);
    for (auto& word : v.w_) word = ~std::uint64_t{0};
    // clear bits beyond n
    std::size_t tail = n % 64;
    if (tail != 0) v.w_.back() &= (std::uint64_t{1} << tail) - 1;
    return v;
}

BitVec BitVec::parse(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v.set(i + 1);
        } else if (s[i] != '0') {
            throw error(errc::io, "BitVec text form must be '0'/'1' characters");
        }
    }
    return v;
}

BitVec BitVec::from_support(std::size_t n, const std::vector<std::size_t>& coords) {
    BitVec v(n);
    for (auto i : coords) v.set(i);
    return v;
}

void BitVec::check_index(std::size_t i) const {
    if (i < 1 || i > n_) {
        throw error(errc::index, "coordinate " + std::to_string(i) + " out of range [1, " +
                                     std::to_string(n_) + "]");
    }
}

bool BitVec::get(std::size_t i) const {
    check_index(i);
    std::size_t b = i - 1;
    return (w_[b / 64] >> (b % 64)) & 1;
}

void BitVec::set(std::size_t i, bool v) {
    check_index(i);
    std::size_t b = i - 1;
    if (v) {
        w_[b / 64] |= std::uint64_t{1} << (b % 64);
    } else {
        w_[b / 64] &= ~(std::uint64_t{1} << (b % 64));
    }
}

std::size_t BitVec::weight() const {
    std::size_t s = 0;
    for (auto word : w_) s += static_cast<std::size_t>(std::popcount(word));
    return s;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t word = w_[wi];
        while (word != 0) {
            int b = std::countr_zero(word);
            out.push_back(wi * 64 + static_cast<std::size_t>(b) + 1);
            word &= word - 1;
        }
    }
    return out;
}

bool BitVec::is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw error(errc::dimension, "BitVec xor: lengths differ");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::lex_less(const BitVec& o) const {
    if (n_ != o.n_) throw error(errc::dimension, "BitVec compare: lengths differ");
    for (std::size_t i = 1; i <= n_; ++i) {
        bool a = get(i), b = o.get(i);
        if (a != b) return b;  // '0' < '1' at the first differing coordinate
    }
    return false;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 1; i <= n_; ++i)
        if (get(i)) s[i - 1] = '1';
    return s;
}

std::uint64_t BitVec::extract(std::size_t lo, std::size_t count) const {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < count; ++j)
        if (get(lo + j)) out |= std::uint64_t{1} << j;
    return out;
}

std::size_t hamming_weight(const BitVec& x) { return x.weight(); }

std::size_t hamming_distance(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw error(errc::dimension, "hamming_distance: lengths differ");
    BitVec d = x;
    d ^= y;
    return d.weight();
}

bool dot(const BitVec& x, const BitVec& y) {
    if (x.size() != y.size()) throw error(errc::dimension, "dot: lengths differ");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.words().size(); ++i) acc ^= x.words()[i] & y.words()[i];
    return std::popcount(acc) & 1;
}

namespace {

std::size_t first_set(const BitVec& v) {
    for (std::size_t wi = 0; wi < v.words().size(); ++wi) {
        if (v.words()[wi] != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(v.words()[wi])) + 1;
    }
    return 0;  // zero vector
}

}  // namespace

Subspace rref(std::size_t n, const std::vector<BitVec>& rows) {
    for (const auto& r : rows) {
        if (r.size() != n) throw error(errc::dimension, "rref: rows of differing length");
    }
    std::vector<BitVec> work = rows;
    std::vector<BitVec> basis;
    for (std::size_t col = 1; col <= n; ++col) {
        std::size_t pivot = work.size();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (!work[i].is_zero() && first_set(work[i]) == col) {
                pivot = i;
                break;
            }
        }
        if (pivot == work.size()) continue;
        BitVec p = work[pivot];
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(pivot));
        for (auto& r : work)
            if (r.get(col)) r ^= p;
        for (auto& r : basis)
            if (r.get(col)) r ^= p;
        basis.push_back(p);
    }
    Subspace s(n);
    s.basis_ = std::move(basis);
    return s;
}

Subspace rref(const std::vector<BitVec>& rows) {
    if (rows.empty()) throw error(errc::dimension, "rref: ambient dimension unknown for empty input");
    return rref(rows.front().size(), rows);
}

bool Subspace::contains(const BitVec& x) const {
    if (x.size() != n_) throw error(errc::dimension, "Subspace::contains: length mismatch");
    BitVec v = x;
    for (const auto& b : basis_) {
        if (v.is_zero()) return true;
        std::size_t pc = first_set(b);
        if (v.get(pc)) v ^= b;
    }
    return v.is_zero();
}

std::vector<BitVec> Subspace::elements() const {
    if (dim() > 24) throw error(errc::size, "Subspace::elements: dimension > 24");
    std::vector<BitVec> out;
    out.reserve(std::size_t{1} << dim());
    BitVec cur(n_);
    out.push_back(cur);
    // Gray-code walk over coefficient vectors.
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << dim()); ++i) {
        int flip = std::countr_zero(i);
        cur ^= basis_[static_cast<std::size_t>(flip)];
        out.push_back(cur);
    }
    return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw error(errc::dimension, "sum: ambient dimensions differ");
    std::vector<BitVec> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return rref(a.ambient(), rows);
}

Subspace null_space(std::size_t n, const std::vector<BitVec>& rows) {
    Subspace r = rref(n, rows);
    // Pivot columns of the reduced basis.
    std::vector<std::size_t> pivots;
    pivots.reserve(r.dim());
    for (const auto& b : r.basis()) pivots.push_back(first_set(b));
    std::vector<bool> is_pivot(n + 1, false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<BitVec> kernel;
    for (std::size_t free_col = 1; free_col <= n; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVec v(n);
        v.set(free_col);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (r.basis()[i].get(free_col)) v.set(pivots[i]);
        }
        kernel.push_back(v);
    }
    return rref(n, kernel);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw error(errc::dimension, "intersect: ambient dimensions differ");
    std::size_t n = a.ambient();
    // A cap B = (A^perp + B^perp)^perp.
    Subspace ap = null_space(n, a.basis());
    Subspace bp = null_space(n, b.basis());
    std::vector<BitVec> rows = ap.basis();
    rows.insert(rows.end(), bp.basis().begin(), bp.basis().end());
    return null_space(n, rows);
}

BitVec project(const BitVec& x, const std::vector<std::size_t>& coords) {
    if (coords.empty()) throw error(errc::parameter, "project: empty coordinate set");
    if (!std::is_sorted(coords.begin(), coords.end()))
        throw error(errc::parameter, "project: coordinate set must be sorted");
    BitVec out(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] < 1 || coords[j] > x.size())
            throw error(errc::index, "project: coordinate out of range");
        if (x.get(coords[j])) out.set(j + 1);
    }
    return out;
}

Subspace project(const Subspace& s, const std::vector<std::size_t>& coords) {
    std::vector<BitVec> rows;
    rows.reserve(s.dim());
    for (const auto& b : s.basis()) rows.push_back(project(b, coords));
    return rref(coords.size(), rows);
}

Subspace subcube(std::size_t n, const std::vector<std::size_t>& coords) {
    std::vector<BitVec> rows;
    rows.reserve(coords.size());
    for (auto i : coords) {
        if (i < 1 || i > n) throw error(errc::index, "subcube: coordinate out of range");
        BitVec v(n);
        v.set(i);
        rows.push_back(v);
    }
    return rref(n, rows);
}

}  // namespace eds
