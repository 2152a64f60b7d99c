#ifndef ASNUM_FRACTION_HPP
#define ASNUM_FRACTION_HPP

// Exact rationals with 64-bit parts for slopes and bounds.

#include <cstdint>
#include <numeric>
#include <string>

#include "error.hpp"

namespace asnum {

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        require(d != 0, "zero denominator");
        if (den < 0) num = -num, den = -den;
        std::int64_t g = std::gcd(num, den);
        if (g > 1) num /= g, den /= g;
    }

    std::int64_t floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
    std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.num, a.den * b.den); }
    friend Fraction operator/(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.den, a.den * b.num); }
    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
};

}  // namespace asnum

#endif
