#ifndef ASNUM_UPOLY_HPP
#define ASNUM_UPOLY_HPP

// Dense univariate polynomials over F_{p^k} and their factorization:
// squarefree decomposition, distinct-degree splitting, and Cantor-Zassenhaus
// equal-degree splitting (trace variant in characteristic 2).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fields.hpp"

namespace asnum {

class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(const FieldDescriptor& f) : f_(&f) {}
    UPoly(const FieldDescriptor& f, std::vector<Fq> c) : f_(&f), c_(std::move(c)) {
        for (const auto& a : c_)
            if (a.field_ptr() != f_) throw DomainError("coefficient from a different field");
        trim();
    }
    static UPoly constant(const Fq& a) { return UPoly(a.field(), {a}); }
    static UPoly x(const FieldDescriptor& f) { return UPoly(f, {Fq::zero(f), Fq::one(f)}); }
    static UPoly monomial(const Fq& c, std::size_t n) {
        std::vector<Fq> v(n + 1, Fq::zero(c.field()));
        v[n] = c;
        return UPoly(c.field(), std::move(v));
    }
    // x - a
    static UPoly linear(const Fq& a) { return UPoly(a.field(), {-a, Fq::one(a.field())}); }

    const FieldDescriptor& field() const noexcept { return *f_; }
    const FieldDescriptor* field_ptr() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Fq>& coeffs() const noexcept { return c_; }
    Fq coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fq::zero(*f_); }
    Fq lead() const { return c_.empty() ? Fq::zero(*f_) : c_.back(); }

    void set_coeff(std::size_t i, const Fq& a) {
        if (i >= c_.size()) c_.resize(i + 1, Fq::zero(*f_));
        c_[i] = a;
        trim();
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        Fq li = lead().inv();
        return *this * li;
    }

    Fq eval(const Fq& a) const {
        // Horner; a may live in an extension only via the caller mapping
        // coefficients first.
        Fq r = Fq::zero(a.field());
        for (std::size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly(*f_);
        std::vector<Fq> d(c_.size() - 1, Fq::zero(*f_));
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i].scaled(static_cast<std::uint32_t>(i % f_->p()));
        return UPoly(*f_, std::move(d));
    }

    // Applies a -> a^(p^e) to every coefficient.
    UPoly frobenius_coeffs(long long e) const {
        UPoly r = *this;
        for (auto& a : r.c_) a = a.frobenius(e);
        return r;
    }

    // For g with only p-divisible exponents, the h with h^p = g.
    UPoly pth_root() const {
        const unsigned p = f_->p();
        std::vector<Fq> r;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i % p == 0)
                r.push_back(c_[i].frobenius(-1));
            else if (!c_[i].is_zero())
                throw DomainError("polynomial is not a p-th power");
        }
        return UPoly(*f_, std::move(r));
    }

    UPoly& operator+=(const UPoly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Fq::zero(*f_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Fq::zero(*f_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return UPoly(*a.f_);
        std::vector<Fq> r(a.c_.size() + b.c_.size() - 1, Fq::zero(*a.f_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(*a.f_, std::move(r));
    }
    friend UPoly operator*(UPoly a, const Fq& s) {
        for (auto& c : a.c_) c *= s;
        a.trim();
        return a;
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    friend bool operator==(const UPoly& a, const UPoly& b) noexcept { return a.f_ == b.f_ && a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) noexcept { return !(a == b); }
    // Degree first, then coefficients from the top in enumeration order.
    friend bool operator<(const UPoly& a, const UPoly& b) noexcept {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    // Quotient and remainder; divisor nonzero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        a.check(b);
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        if (a.degree() < b.degree()) return {UPoly(*a.f_), a};
        std::vector<Fq> r = a.c_;
        const std::size_t db = b.c_.size() - 1;
        std::vector<Fq> q(r.size() - db, Fq::zero(*a.f_));
        Fq li = b.lead().inv();
        for (std::size_t i = r.size(); i-- > db;) {
            if (r[i].is_zero()) continue;
            Fq c = r[i] * li;
            q[i - db] = c;
            for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= c * b.c_[j];
        }
        r.resize(db);
        return {UPoly(*a.f_, std::move(q)), UPoly(*a.f_, std::move(r))};
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
    friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

    // Monic gcd; gcd(0, 0) = 0.
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // (g, s, t) with s a + t b = g monic.
    static std::tuple<UPoly, UPoly, UPoly> xgcd(UPoly a, UPoly b) {
        const FieldDescriptor& f = *a.f_;
        UPoly s0 = constant(Fq::one(f)), s1(f), t0(f), t1 = constant(Fq::one(f));
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (a.is_zero()) return {a, s0, t0};
        Fq li = a.lead().inv();
        return {a * li, s0 * li, t0 * li};
    }

    static UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) { return (a * b) % m; }

    static UPoly powmod(UPoly base, std::uint64_t e, const UPoly& m) {
        UPoly r = constant(Fq::one(*m.f_)) % m;
        base = base % m;
        while (e) {
            if (e & 1) r = mulmod(r, base, m);
            e >>= 1;
            if (e) base = mulmod(base, base, m);
        }
        return r;
    }

    UPoly pow(unsigned e) const {
        UPoly r = constant(Fq::one(*f_)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // g(h(x))
    UPoly compose(const UPoly& h) const {
        UPoly r(*f_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * h + constant(c_[i]);
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string cs = c_[i].to_string();
            bool compound = cs.find('+') != std::string::npos;
            if (!out.empty()) out += "+";
            if (i == 0) {
                out += compound ? "(" + cs + ")" : cs;
                continue;
            }
            if (!c_[i].is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

    std::uint64_t hash() const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ c_.size();
        for (const auto& a : c_) {
            h ^= a.index() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check(const UPoly& o) const {
        if (f_ != o.f_) throw DomainError("mixed-field polynomial arithmetic");
    }

    const FieldDescriptor* f_ = nullptr;
    std::vector<Fq> c_;
};

struct Factor {
    UPoly poly;
    unsigned multiplicity;
};

namespace detail {

// x^(Q^n) mod m by repeated Q-th powering.
inline UPoly x_pow_q_iter(const UPoly& m, unsigned n) {
    UPoly r = UPoly::x(m.field()) % m;
    for (unsigned i = 0; i < n; ++i) r = UPoly::powmod(r, m.field().order(), m);
    return r;
}

}  // namespace detail

// Squarefree decomposition: pairs (s_i, i) with g = lc * prod s_i^i, each s_i
// squarefree and monic, pairwise coprime.
inline std::vector<Factor> squarefree_decomposition(const UPoly& g) {
    if (g.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
    std::vector<Factor> out;
    const unsigned p = g.field().p();
    UPoly a = g.monic();
    unsigned scale = 1;
    while (a.degree() > 0) {
        UPoly d = a.derivative();
        if (d.is_zero()) {
            a = a.pth_root();
            scale *= p;
            continue;
        }
        UPoly c = UPoly::gcd(a, d);
        UPoly w = a / c;
        unsigned i = 1;
        while (!w.is_one()) {
            UPoly y = UPoly::gcd(w, c);
            UPoly z = w / y;
            if (!z.is_one()) out.push_back({z.monic(), i * scale});
            ++i;
            w = y;
            c = c / y;
        }
        if (c.is_one()) break;
        a = c.pth_root().monic();
        scale *= p;
    }
    // Merge entries of equal multiplicity.
    std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) { return x.multiplicity < y.multiplicity; });
    std::vector<Factor> merged;
    for (auto& fct : out) {
        if (!merged.empty() && merged.back().multiplicity == fct.multiplicity)
            merged.back().poly = merged.back().poly * fct.poly;
        else
            merged.push_back(fct);
    }
    return merged;
}

inline UPoly squarefree_part(const UPoly& g) {
    UPoly r = UPoly::constant(Fq::one(g.field()));
    for (const auto& fct : squarefree_decomposition(g)) r *= fct.poly;
    return r;
}

// Distinct-degree splitting of a monic squarefree g: pairs (product of all
// irreducible factors of degree d, d).
inline std::vector<std::pair<UPoly, unsigned>> distinct_degree(const UPoly& g) {
    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly rest = g.monic();
    UPoly h = UPoly::x(g.field()) % rest;
    const UPoly x = UPoly::x(g.field());
    for (unsigned d = 1; rest.degree() >= 2 * static_cast<int>(d); ++d) {
        h = UPoly::powmod(h, g.field().order(), rest);
        UPoly fac = UPoly::gcd(rest, h - x);
        if (!fac.is_one()) {
            out.emplace_back(fac, d);
            rest = rest / fac;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
    return out;
}

// Splits a monic squarefree product of degree-d irreducibles into its factors.
inline std::vector<UPoly> equal_degree(const UPoly& g, unsigned d, std::mt19937_64& rng) {
    const FieldDescriptor& f = g.field();
    if (g.degree() == static_cast<int>(d)) return {g.monic()};
    const std::uint64_t q = f.order();
    std::vector<UPoly> out;
    for (;;) {
        std::vector<Fq> cs;
        for (int i = 0; i < g.degree(); ++i) cs.push_back(Fq::from_index(f, rng() % q));
        UPoly a(f, std::move(cs));
        if (a.degree() <= 0) continue;
        UPoly b(f);
        if (f.p() == 2) {
            // Absolute trace a + a^2 + ... + a^(2^(kd-1)).
            UPoly t = a % g;
            b = t;
            for (unsigned i = 1; i < f.k() * d; ++i) {
                t = UPoly::mulmod(t, t, g);
                b += t;
            }
        } else {
            // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            UPoly c = a % g, t = a % g;
            for (unsigned i = 1; i < d; ++i) {
                t = UPoly::powmod(t, q, g);
                c = UPoly::mulmod(c, t, g);
            }
            b = UPoly::powmod(c, (q - 1) / 2, g) - UPoly::constant(Fq::one(f));
        }
        UPoly h = UPoly::gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            auto left = equal_degree(h, d, rng);
            auto right = equal_degree(g / h, d, rng);
            out.insert(out.end(), left.begin(), left.end());
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
    }
}

// Complete factorization into monic irreducibles with multiplicities, sorted.
// The splitting randomness is seeded from the input unless a seed is given.
inline std::vector<Factor> factor(const UPoly& g, std::optional<std::uint64_t> seed = std::nullopt) {
    if (g.is_zero()) throw DomainError("factorization of the zero polynomial");
    std::mt19937_64 rng(seed ? *seed : g.hash());
    std::vector<Factor> out;
    for (const auto& sq : squarefree_decomposition(g)) {
        for (const auto& [part, d] : distinct_degree(sq.poly)) {
            for (auto& irr : equal_degree(part, d, rng)) out.push_back({std::move(irr), sq.multiplicity});
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly != b.poly) return a.poly < b.poly;
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

// Distinct roots in the coefficient field, in enumeration order.
inline std::vector<Fq> roots(const UPoly& g, std::optional<std::uint64_t> seed = std::nullopt) {
    if (g.is_zero()) throw DomainError("roots of the zero polynomial");
    std::vector<Fq> out;
    if (g.degree() <= 0) return out;
    UPoly m = g.monic();
    UPoly xq = UPoly::powmod(UPoly::x(g.field()), g.field().order(), m);
    UPoly lin = UPoly::gcd(m, xq - UPoly::x(g.field()));
    if (lin.degree() <= 0) return out;
    std::mt19937_64 rng(seed ? *seed : g.hash());
    for (const auto& l : equal_degree(lin, 1, rng)) out.push_back(-l.coeff(0));
    std::sort(out.begin(), out.end());
    return out;
}

// True iff monic-normalized g is irreducible over its coefficient field.
inline bool is_irreducible(const UPoly& g) {
    if (g.degree() <= 0) return false;
    if (g.degree() == 1) return true;
    UPoly m = g.monic();
    if (!UPoly::gcd(m, m.derivative()).is_one()) return false;
    auto dd = distinct_degree(m);
    return dd.size() == 1 && static_cast<int>(dd[0].second) == m.degree();
}

}  // namespace asnum

#endif
