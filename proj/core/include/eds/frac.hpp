#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "eds/error.hpp"

namespace eds {

// Exact nonnegative rational, used for probabilities in file formats. Dyadic
// denominators keep double conversions exact.
struct Frac {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Frac() = default;
    Frac(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (den == 0) throw error(errc::parameter, "Frac: zero denominator");
        reduce();
    }

    void reduce() {
        std::uint64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    static Frac parse(const std::string& s);
    // Exact conversion of a nonnegative double with denominator <= 2^62.
    static Frac from_double(double v);

    bool operator==(const Frac&) const = default;
};

}  // namespace eds
