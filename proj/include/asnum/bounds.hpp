#ifndef ASNUM_BOUNDS_HPP
#define ASNUM_BOUNDS_HPP

// Upper bounds on the a-number (Re) and on the genus of a superspecial
// curve (Ekedahl).

#include <cstdint>

#include "error.hpp"
#include "fields.hpp"
#include "fraction.hpp"

namespace asnum {

// a <= (p-1)/(p+1) * (2g/p + g + 1) = (p-1)(2g + pg + p) / (p(p+1))
inline Fraction re_bound(std::int64_t g, std::int64_t p) {
    require(g >= 1, "genus must be at least 1");
    require(p >= 2 && is_prime(static_cast<unsigned>(p)), "p must be prime");
    return Fraction(p - 1, p + 1) * (Fraction(2 * g, p) + Fraction(g + 1));
}

// A superspecial curve has g <= p(p-1)/2.
inline std::int64_t ekedahl_bound(std::int64_t p) {
    require(p >= 2 && is_prime(static_cast<unsigned>(p)), "p must be prime");
    return p * (p - 1) / 2;
}

}  // namespace asnum

#endif
