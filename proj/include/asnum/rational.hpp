#ifndef ASNUM_RATIONAL_HPP
#define ASNUM_RATIONAL_HPP

// Univariate rational functions over F_{p^k} and their decomposition
//   f = f_0(x) + sum_s f_s(1/(x - xi_s)),  f_s(0) = 0.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fields.hpp"
#include "upoly.hpp"

namespace asnum {

class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(const UPoly& num) : num_(num), den_(UPoly::constant(Fq::one(num.field()))) {}
    RationalFunction(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        normalize();
    }

    const UPoly& numerator() const noexcept { return num_; }
    const UPoly& denominator() const noexcept { return den_; }
    const FieldDescriptor& field() const noexcept { return num_.field(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

  private:
    void normalize() {
        UPoly g = UPoly::gcd(num_, den_);
        if (!g.is_zero() && g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Fq li = den_.lead().inv();
        num_ = num_ * li;
        den_ = den_ * li;
    }

    UPoly num_;
    UPoly den_;
};

struct PoleTail {
    Fq xi;
    UPoly tail;  // polynomial in X = 1/(x - xi), zero constant term
};

struct PartialFractionForm {
    UPoly f0;
    std::vector<PoleTail> poles;  // sorted by xi

    const FieldDescriptor& field() const noexcept { return f0.field(); }

    RationalFunction reassemble() const {
        RationalFunction r(f0);
        for (const auto& [xi, tail] : poles) {
            // sum c_m (x-xi)^(-m) = sum c_m (x-xi)^(e-m) / (x-xi)^e
            const int e = tail.degree();
            UPoly lin = UPoly::linear(xi);
            UPoly num(f0.field());
            for (int m = 1; m <= e; ++m) num += UPoly::constant(tail.coeff(static_cast<std::size_t>(m))) * lin.pow(static_cast<unsigned>(e - m));
            r = r + RationalFunction(num, lin.pow(static_cast<unsigned>(e)));
        }
        return r;
    }

    std::string to_string() const {
        std::string out = f0.to_string();
        for (const auto& [xi, tail] : poles) {
            std::string x = xi.is_zero() ? "x" : "(x-(" + xi.to_string() + "))";
            out += " + [" + tail.to_string("X") + " with X=1/" + x + "]";
        }
        return out;
    }
};

namespace detail {

// First n coefficients of the power series a(u)/b(u), b(0) != 0.
inline std::vector<Fq> series_quotient(const UPoly& a, const UPoly& b, std::size_t n) {
    const FieldDescriptor& f = b.field();
    std::vector<Fq> out(n, Fq::zero(f));
    Fq b0inv = b.coeff(0).inv();
    for (std::size_t i = 0; i < n; ++i) {
        Fq s = a.coeff(i);
        for (std::size_t j = 1; j <= i; ++j) s -= b.coeff(j) * out[i - j];
        out[i] = s * b0inv;
    }
    return out;
}

}  // namespace detail

// num / prod_s (x - xi_s)^(e_s) with the factorization supplied; poles with
// e_s = 0 and vanishing tails are dropped.
inline PartialFractionForm partial_fractions_known(const UPoly& num, const std::vector<std::pair<Fq, unsigned>>& poles) {
    const FieldDescriptor& f = num.field();
    PartialFractionForm out;
    UPoly den = UPoly::constant(Fq::one(f));
    for (const auto& [xi, e] : poles) den *= UPoly::linear(xi).pow(e);
    auto [q, rem] = UPoly::divmod(num, den);
    out.f0 = q;
    for (std::size_t s = 0; s < poles.size(); ++s) {
        const auto& [xi, e] = poles[s];
        if (e == 0) continue;
        UPoly d1 = UPoly::constant(Fq::one(f));
        for (std::size_t r = 0; r < poles.size(); ++r)
            if (r != s) d1 *= UPoly::linear(poles[r].first).pow(poles[r].second);
        UPoly shift = UPoly(f, {xi, Fq::one(f)});
        auto t = detail::series_quotient(rem.compose(shift), d1.compose(shift), e);
        std::vector<Fq> tail(e + 1, Fq::zero(f));
        for (unsigned m = 1; m <= e; ++m) tail[m] = t[e - m];
        UPoly tp(f, std::move(tail));
        if (!tp.is_zero()) out.poles.push_back({xi, std::move(tp)});
    }
    std::sort(out.poles.begin(), out.poles.end(), [](const PoleTail& a, const PoleTail& b) { return a.xi < b.xi; });
    return out;
}

// Requires the denominator to split into linear factors over the field.
inline PartialFractionForm partial_fractions(const RationalFunction& r) {
    if (r.denominator().degree() == 0) {
        PartialFractionForm out;
        out.f0 = r.numerator();
        return out;
    }
    std::vector<std::pair<Fq, unsigned>> poles;
    for (const auto& fc : factor(r.denominator())) {
        if (fc.poly.degree() > 1)
            throw DomainError("denominator has an irreducible factor of degree " + std::to_string(fc.poly.degree()) +
                              "; extend the field first");
        poles.emplace_back(-fc.poly.coeff(0), fc.multiplicity);
    }
    return partial_fractions_known(r.numerator(), poles);
}

}  // namespace asnum

#endif
