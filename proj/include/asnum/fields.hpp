#ifndef ASNUM_FIELDS_HPP
#define ASNUM_FIELDS_HPP

// Finite fields F_{p^k} for small p.
//
// F_{p^k} is F_p[t]/(m(t)) where m is the lexicographically smallest monic
// irreducible polynomial of degree k, comparing coefficient vectors with the
// constant term most significant. The class of t is the canonical generator,
// written `g` in text. Descriptors are interned: field(p, k) always returns
// the same object, so descriptor identity is pointer identity.

#include <algorithm>
#include <array>
#include <ostream>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace asnum {

inline constexpr unsigned kMaxPrime = 31;
inline constexpr unsigned kMaxDegree = 64;
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// Dense polynomials over F_p, constant term first; used only while building
// descriptors.
using PolyP = std::vector<std::uint32_t>;

inline void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP polyp_mod(PolyP a, const PolyP& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    std::uint32_t lead_inv = 1;
    for (std::uint32_t e = 0, b = m.back(); e < p - 2; ++e) lead_inv = lead_inv * b % p;
    if (p == 2) lead_inv = 1;
    while (a.size() > dm) {
        std::uint32_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + (p - c) * m[j]) % p;
        trim(a);
    }
    return a;
}

inline PolyP polyp_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return polyp_mod(std::move(r), m, p);
}

inline PolyP polyp_powmod(PolyP base, std::uint64_t e, const PolyP& m, std::uint32_t p) {
    PolyP r{1};
    base = polyp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = polyp_mulmod(r, base, m, p);
        e >>= 1;
        if (e) base = polyp_mulmod(base, base, m, p);
    }
    return polyp_mod(std::move(r), m, p);
}

inline PolyP polyp_gcd(PolyP a, PolyP b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = polyp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

inline bool polyp_irreducible(const PolyP& m, std::uint32_t p) {
    const std::size_t k = m.size() - 1;
    if (k <= 1) return true;
    if (m[0] == 0) return false;
    // m is irreducible iff gcd(t^(p^i) - t, m) = 1 for 1 <= i <= k/2; small
    // factors are found first, so reducible candidates exit early.
    PolyP h = polyp_mod(PolyP{0, 1}, m, p);
    for (std::size_t i = 1; 2 * i <= k; ++i) {
        h = polyp_powmod(h, p, m, p);
        PolyP d = h;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        if (d.empty()) return false;
        if (polyp_gcd(d, m, p).size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class Fq;

class FieldDescriptor {
  public:
    unsigned p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t order() const noexcept { return order_; }
    // Monic modulus, constant term first, length k + 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    bool is_prime_field() const noexcept { return k_ == 1; }

    std::uint32_t inv_mod_p(std::uint32_t a) const noexcept { return inv_[a]; }
    std::uint32_t neg_modulus(unsigned j) const noexcept { return neg_mod_[j]; }
    // Column i holds the coordinates of (g^i)^p.
    const std::array<std::uint8_t, kMaxDegree>& frobenius_column(unsigned i) const noexcept { return frob_[i]; }
    // Tr_{F_{p^k}/F_p}(g^i).
    std::uint32_t trace_of_basis(unsigned i) const noexcept { return trace_[i]; }

    std::string name() const {
        return "F_" + std::to_string(order_);
    }

  private:
    friend const FieldDescriptor& field(unsigned p, unsigned k);
    FieldDescriptor(unsigned p, unsigned k);

    unsigned p_ = 0;
    unsigned k_ = 0;
    std::uint64_t order_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> neg_mod_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::array<std::uint8_t, kMaxDegree>> frob_;
    std::vector<std::uint32_t> trace_;
};

// Returns the interned descriptor for F_{p^k}.
const FieldDescriptor& field(unsigned p, unsigned k);

// Element of F_{p^k}: coordinates in the power basis 1, g, ..., g^(k-1).
// Unused coordinates are kept at zero so that equality is a plain compare.
class Fq {
  public:
    Fq() = default;
    Fq(const FieldDescriptor& f, long long n) : f_(&f) {
        long long r = n % static_cast<long long>(f.p());
        if (r < 0) r += f.p();
        c_[0] = static_cast<std::uint8_t>(r);
    }

    static Fq zero(const FieldDescriptor& f) { return Fq(f, 0); }
    static Fq one(const FieldDescriptor& f) { return Fq(f, 1); }
    static Fq generator(const FieldDescriptor& f) {
        if (f.k() == 1) return Fq(f, static_cast<long long>((f.p() - f.modulus()[0]) % f.p()));
        Fq r(f, 0);
        r.c_[1] = 1;
        return r;
    }
    static Fq from_coefficients(const FieldDescriptor& f, std::span<const std::uint32_t> c) {
        require(c.size() <= f.k(), "too many coefficients for " + f.name());
        Fq r(f, 0);
        for (std::size_t i = 0; i < c.size(); ++i) r.c_[i] = static_cast<std::uint8_t>(c[i] % f.p());
        return r;
    }
    // Inverse of index(): the element whose base-p digits (constant term
    // least significant) spell n.
    static Fq from_index(const FieldDescriptor& f, std::uint64_t n) {
        require(n < f.order(), "element index out of range for " + f.name());
        Fq r(f, 0);
        for (unsigned i = 0; i < f.k(); ++i) {
            r.c_[i] = static_cast<std::uint8_t>(n % f.p());
            n /= f.p();
        }
        return r;
    }

    std::uint64_t index() const noexcept {
        std::uint64_t n = 0;
        for (unsigned i = f_->k(); i-- > 0;) n = n * f_->p() + c_[i];
        return n;
    }

    const FieldDescriptor& field() const noexcept { return *f_; }
    const FieldDescriptor* field_ptr() const noexcept { return f_; }
    bool valid() const noexcept { return f_ != nullptr; }
    unsigned coeff(unsigned i) const noexcept { return c_[i]; }
    std::uint8_t* data() noexcept { return c_.data(); }
    const std::uint8_t* data() const noexcept { return c_.data(); }

    bool is_zero() const noexcept {
        for (unsigned i = 0; i < f_->k(); ++i)
            if (c_[i]) return false;
        return true;
    }
    bool is_one() const noexcept {
        if (c_[0] != 1) return false;
        for (unsigned i = 1; i < f_->k(); ++i)
            if (c_[i]) return false;
        return true;
    }
    bool in_prime_field() const noexcept {
        for (unsigned i = 1; i < f_->k(); ++i)
            if (c_[i]) return false;
        return true;
    }

    Fq& operator+=(const Fq& o) {
        check(o);
        const unsigned p = f_->p();
        for (unsigned i = 0; i < f_->k(); ++i) {
            unsigned s = c_[i] + o.c_[i];
            c_[i] = static_cast<std::uint8_t>(s >= p ? s - p : s);
        }
        return *this;
    }
    Fq& operator-=(const Fq& o) {
        check(o);
        const unsigned p = f_->p();
        for (unsigned i = 0; i < f_->k(); ++i) {
            unsigned s = c_[i] + p - o.c_[i];
            c_[i] = static_cast<std::uint8_t>(s >= p ? s - p : s);
        }
        return *this;
    }
    Fq operator-() const {
        Fq r = *this;
        const unsigned p = f_->p();
        for (unsigned i = 0; i < f_->k(); ++i) r.c_[i] = static_cast<std::uint8_t>(c_[i] ? p - c_[i] : 0);
        return r;
    }
    Fq& operator*=(const Fq& o) {
        check(o);
        mul_into(*this, o);
        return *this;
    }
    Fq& operator/=(const Fq& o) { return *this *= o.inv(); }

    friend Fq operator+(Fq a, const Fq& b) { return a += b; }
    friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
    friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
    friend Fq operator/(Fq a, const Fq& b) { return a /= b; }

    friend bool operator==(const Fq& a, const Fq& b) noexcept { return a.f_ == b.f_ && a.c_ == b.c_; }
    friend bool operator!=(const Fq& a, const Fq& b) noexcept { return !(a == b); }
    // Enumeration order.
    friend bool operator<(const Fq& a, const Fq& b) noexcept {
        for (unsigned i = a.f_->k(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    Fq scaled(std::uint32_t s) const {
        Fq r = *this;
        const unsigned p = f_->p();
        s %= p;
        for (unsigned i = 0; i < f_->k(); ++i) r.c_[i] = static_cast<std::uint8_t>(c_[i] * s % p);
        return r;
    }

    Fq inv() const;
    Fq pow(long long e) const;
    // a^(p^e); negative e applies the inverse of the p-power map.
    Fq frobenius(long long e) const;
    // Absolute trace to F_p.
    std::uint32_t trace() const noexcept {
        std::uint64_t s = 0;
        for (unsigned i = 0; i < f_->k(); ++i) s += std::uint64_t{c_[i]} * f_->trace_of_basis(i);
        return static_cast<std::uint32_t>(s % f_->p());
    }

    // Canonical text: integers in a prime field, otherwise a polynomial in g
    // with descending powers, e.g. "g^3+2*g+1".
    std::string to_string() const {
        if (f_->k() == 1) return std::to_string(c_[0]);
        std::string out;
        for (unsigned i = f_->k(); i-- > 0;) {
            unsigned c = c_[i];
            if (!c) continue;
            if (!out.empty()) out += '+';
            if (i == 0) {
                out += std::to_string(c);
                continue;
            }
            if (c != 1) out += std::to_string(c) + "*";
            out += "g";
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

  private:
    void check(const Fq& o) const {
        if (f_ != o.f_) throw DomainError("mixed-field arithmetic between incompatible elements");
    }

    static void mul_into(Fq& a, const Fq& b) {
        const FieldDescriptor& f = *a.f_;
        const unsigned k = f.k(), p = f.p();
        if (k == 1) {
            a.c_[0] = static_cast<std::uint8_t>(unsigned{a.c_[0]} * b.c_[0] % p);
            return;
        }
        std::uint32_t t[2 * kMaxDegree] = {};
        for (unsigned i = 0; i < k; ++i) {
            const std::uint32_t ai = a.c_[i];
            if (!ai) continue;
            for (unsigned j = 0; j < k; ++j) t[i + j] += ai * b.c_[j];
        }
        for (unsigned i = 2 * k - 2; i >= k; --i) {
            const std::uint32_t c = t[i] % p;
            if (!c) continue;
            for (unsigned j = 0; j < k; ++j) t[i - k + j] += c * f.neg_modulus(j);
        }
        for (unsigned i = 0; i < k; ++i) a.c_[i] = static_cast<std::uint8_t>(t[i] % p);
    }

    const FieldDescriptor* f_ = nullptr;
    std::array<std::uint8_t, kMaxDegree> c_{};
};

inline FieldDescriptor::FieldDescriptor(unsigned p, unsigned k) : p_(p), k_(k) {
    order_ = 1;
    for (unsigned i = 0; i < k; ++i) order_ *= p;
    inv_.assign(p, 0);
    for (unsigned a = 1; a < p; ++a)
        for (unsigned b = 1; b < p; ++b)
            if (a * b % p == 1) inv_[a] = b;

    // Lexicographically smallest monic irreducible: digit c_0 is the most
    // significant, c_{k-1} the least.
    detail::PolyP m(k + 1, 0);
    m[k] = 1;
    bool found = false;
    // Candidates with zero constant term are divisible by t, so the walk
    // starts at c_0 = 1 when k > 1.
    for (std::uint64_t n = k > 1 ? order_ / p : 0; n < order_ && !found; ++n) {
        std::uint64_t rest = n;
        for (unsigned i = k; i-- > 0;) {
            m[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        found = detail::polyp_irreducible(m, p);
    }
    ensure(found, "no irreducible polynomial found");
    modulus_ = m;
    neg_mod_.resize(k);
    for (unsigned j = 0; j < k; ++j) neg_mod_[j] = (p - m[j]) % p;

    // Frobenius columns (g^i)^p = (g^p)^i.
    frob_.assign(k, {});
    detail::PolyP gp = detail::polyp_powmod(detail::PolyP{0, 1}, p, m, p);
    detail::PolyP cur{1};
    for (unsigned i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < cur.size(); ++j) frob_[i][j] = static_cast<std::uint8_t>(cur[j]);
        cur = detail::polyp_mulmod(cur, gp, m, p);
    }

    // Power sums of the roots of m by Newton's identities give Tr(g^i).
    // For m = t^k + m_{k-1} t^{k-1} + ... : P_i = -(sum_{j<i} m_{k-j} P_{i-j}) - i m_{k-i}.
    trace_.assign(k, 0);
    trace_[0] = k % p;
    std::vector<std::uint32_t> ps(k + 1, 0);
    for (unsigned i = 1; i < k; ++i) {
        std::uint64_t s = 0;
        for (unsigned j = 1; j < i; ++j) s += std::uint64_t{m[k - j]} * ps[i - j];
        s += std::uint64_t{i % p} * m[k - i];
        ps[i] = static_cast<std::uint32_t>((p - s % p) % p);
        trace_[i] = ps[i];
    }
}

inline const FieldDescriptor& field(unsigned p, unsigned k) {
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (p > kMaxPrime) throw DomainError("characteristic " + std::to_string(p) + " exceeds the supported cap");
    if (k == 0) throw DomainError("extension degree must be positive");
    if (k > kMaxDegree) throw BudgetExceeded("extension degree exceeds the supported cap");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > kMaxFieldOrder / p) throw BudgetExceeded("field order exceeds the representable range");
        q *= p;
    }
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldDescriptor>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[{p, k}];
    if (!slot) slot.reset(new FieldDescriptor(p, k));
    return *slot;
}

inline Fq Fq::inv() const {
    if (is_zero()) throw DomainError("division by zero in " + f_->name());
    const FieldDescriptor& f = *f_;
    const unsigned k = f.k(), p = f.p();
    if (k == 1) return Fq(f, f.inv_mod_p(c_[0]));
    // Extended Euclid on (a, m) over F_p, tracking the cofactor of a.
    using detail::PolyP;
    PolyP r0(f.modulus().begin(), f.modulus().end()), r1(c_.begin(), c_.begin() + k);
    detail::trim(r1);
    PolyP s0{}, s1{1};
    auto sub_scaled_shift = [p](PolyP& a, const PolyP& b, std::uint32_t c, std::size_t sh) {
        if (a.size() < b.size() + sh) a.resize(b.size() + sh, 0);
        for (std::size_t j = 0; j < b.size(); ++j) a[j + sh] = (a[j + sh] + (p - c) * b[j] % p) % p;
        detail::trim(a);
    };
    while (r1.size() > 1) {
        // r0 = q r1 + r, s0 - q s1
        while (r0.size() >= r1.size()) {
            std::uint32_t c = r0.back() * f.inv_mod_p(r1.back()) % p;
            std::size_t sh = r0.size() - r1.size();
            sub_scaled_shift(r0, r1, c, sh);
            sub_scaled_shift(s0, s1, c, sh);
        }
        std::swap(r0, r1);
        std::swap(s0, s1);
    }
    // r1 is a nonzero constant.
    std::uint32_t ci = f.inv_mod_p(r1[0]);
    Fq out(f, 0);
    for (std::size_t j = 0; j < s1.size() && j < k; ++j) out.c_[j] = static_cast<std::uint8_t>(s1[j] * ci % p);
    return out;
}

inline Fq Fq::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Fq r = Fq::one(*f_), b = *this;
    auto u = static_cast<unsigned long long>(e);
    while (u) {
        if (u & 1) r *= b;
        u >>= 1;
        if (u) b *= b;
    }
    return r;
}

inline Fq Fq::frobenius(long long e) const {
    const FieldDescriptor& f = *f_;
    const long long k = f.k();
    long long n = ((e % k) + k) % k;
    if (k == 1 || n == 0) return *this;
    Fq cur = *this;
    const unsigned p = f.p();
    for (long long step = 0; step < n; ++step) {
        std::uint32_t acc[kMaxDegree] = {};
        for (unsigned i = 0; i < k; ++i) {
            const std::uint32_t ci = cur.c_[i];
            if (!ci) continue;
            const auto& col = f.frobenius_column(i);
            for (unsigned j = 0; j < k; ++j) acc[j] += ci * col[j];
        }
        for (unsigned j = 0; j < k; ++j) cur.c_[j] = static_cast<std::uint8_t>(acc[j] % p);
    }
    return cur;
}

inline Fq frobenius(const Fq& a, long long e) { return a.frobenius(e); }

inline std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.to_string(); }

// All elements in enumeration order (constant coordinate fastest).
inline std::vector<Fq> enumerate(const FieldDescriptor& f, std::uint64_t cap = kDefaultEnumerationCap) {
    if (f.order() > cap) throw BudgetExceeded("enumeration of " + f.name() + " exceeds the cap");
    std::vector<Fq> out;
    out.reserve(f.order());
    for (std::uint64_t n = 0; n < f.order(); ++n) out.push_back(Fq::from_index(f, n));
    return out;
}

// Advances a through the enumeration order in place; returns false after the
// last element (wrapping to zero).
inline bool next_element(Fq& a) {
    const FieldDescriptor& f = a.field();
    for (unsigned i = 0; i < f.k(); ++i) {
        if (a.data()[i] + 1u < f.p()) {
            ++a.data()[i];
            return true;
        }
        a.data()[i] = 0;
    }
    return false;
}

inline std::uint64_t binomial_mod(unsigned n, unsigned k, unsigned p) {
    if (k > n) return 0;
    // Lucas.
    std::uint64_t r = 1;
    while (n || k) {
        unsigned a = n % p, b = k % p;
        if (b > a) return 0;
        std::uint64_t num = 1, den = 1;
        for (unsigned i = 0; i < b; ++i) {
            num = num * (a - i) % p;
            den = den * (i + 1) % p;
        }
        std::uint64_t dinv = 1;
        for (unsigned e = 0; e + 2 < p; ++e) dinv = dinv * den % p;
        if (p == 2) dinv = 1;
        r = r * num % p * dinv % p;
        n /= p;
        k /= p;
    }
    return r;
}

}  // namespace asnum

#endif
