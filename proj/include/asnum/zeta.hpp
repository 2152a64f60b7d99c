#ifndef ASNUM_ZETA_HPP
#define ASNUM_ZETA_HPP

// Point counts of Artin-Schreier curves over extensions of the base field
// F_q, the L-polynomial from the first g counts, and its q-adic Newton
// polygon.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "artin_schreier.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "fraction.hpp"

namespace asnum {

using Int128 = __int128;

inline std::string to_string(Int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

namespace detail {

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("128-bit overflow in zeta arithmetic");
    return r;
}

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw DomainError("128-bit overflow in zeta arithmetic");
    return r;
}

inline Int128 ipow(Int128 b, unsigned e) {
    Int128 r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

struct EmbeddedFunction {
    std::vector<Fq> f0;
    std::vector<Fq> xi;
    std::vector<std::vector<Fq>> tails;
};

inline Fq horner(const std::vector<Fq>& c, const Fq& x) {
    Fq v = Fq::zero(x.field());
    for (std::size_t i = c.size(); i-- > 0;) {
        v *= x;
        v += c[i];
    }
    return v;
}

// Number of x with index in [begin, end) that are not poles and have Tr(f(x)) = 0.
inline std::uint64_t count_trace_zero(const EmbeddedFunction& ef, const FieldDescriptor& L, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return 0;
    Fq x = Fq::from_index(L, begin);
    std::uint64_t n = 0;
    for (std::uint64_t i = begin; i < end; ++i, next_element(x)) {
        Fq v = horner(ef.f0, x);
        bool pole = false;
        for (std::size_t s = 0; s < ef.xi.size(); ++s) {
            Fq d = x - ef.xi[s];
            if (d.is_zero()) {
                pole = true;
                break;
            }
            v += horner(ef.tails[s], d.inv());
        }
        if (!pole && v.trace() == 0) ++n;
    }
    return n;
}

}  // namespace detail

struct ZetaOptions {
    unsigned threads = 1;
    // Maximum number of trace evaluations across all requested counts.
    double budget = 1e7;
};

inline std::uint64_t base_order(const ASCurve& c) { return c.field().order(); }

// #X(F_{q^k}) for the smooth projective curve, q the order of the base field.
inline std::uint64_t count_points(const ASCurve& c, unsigned k, unsigned threads = 1) {
    require(k >= 1, "k must be at least 1");
    const FieldDescriptor& K = c.field();
    const unsigned p = K.p();
    require(K.k() * k <= 40 && static_cast<long double>(K.order()) <= 1e18, "extension too large to enumerate");
    const FieldDescriptor& L = field(p, K.k() * k);
    Embedding emb(K, L);
    detail::EmbeddedFunction ef;
    for (const auto& a : c.f().f0.coeffs()) ef.f0.push_back(emb(a));
    for (const auto& [xi, tail] : c.f().poles) {
        ef.xi.push_back(emb(xi));
        std::vector<Fq> t;
        for (const auto& a : tail.coeffs()) t.push_back(emb(a));
        ef.tails.push_back(std::move(t));
    }
    const std::uint64_t n = L.order();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 256))));
    std::vector<std::uint64_t> part(threads, 0);
    if (threads == 1) {
        part[0] = detail::count_trace_zero(ef, L, 0, n);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            std::uint64_t b = n / threads * t, e = t + 1 == threads ? n : n / threads * (t + 1);
            pool.emplace_back([&, t, b, e] { part[t] = detail::count_trace_zero(ef, L, b, e); });
        }
        for (auto& th : pool) th.join();
    }
    std::uint64_t affine = 0;
    for (auto v : part) affine += v;
    return affine * p + c.branch_points();
}

// Counts for k = 1..kmax under the evaluation budget.
inline std::vector<std::uint64_t> point_counts(const ASCurve& c, unsigned kmax, const ZetaOptions& opt = {}) {
    long double work = 0, q = static_cast<long double>(base_order(c));
    for (unsigned k = 1; k <= kmax; ++k) work += std::pow(q, static_cast<long double>(k));
    if (work > static_cast<long double>(opt.budget))
        throw BudgetExceeded("counting to k = " + std::to_string(kmax) + " needs " + std::to_string(static_cast<std::uint64_t>(work)) +
                             " trace evaluations, above the budget of " + std::to_string(static_cast<std::uint64_t>(opt.budget)));
    std::vector<std::uint64_t> out;
    for (unsigned k = 1; k <= kmax; ++k) out.push_back(count_points(c, k, opt.threads));
    return out;
}

struct LPolynomial {
    std::uint64_t q = 0;
    unsigned g = 0;
    std::vector<Int128> c;  // c_0 .. c_{2g}

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        for (auto v : c) out.push_back(to_string(v));
        return out;
    }
};

// L(T) from N_1..N_g (or more) of a genus-g curve over F_q.
inline LPolynomial l_polynomial(const std::vector<std::uint64_t>& counts, unsigned g, std::uint64_t q) {
    require(counts.size() >= g, "need at least g point counts");
    LPolynomial L;
    L.q = q;
    L.g = g;
    L.c.assign(2 * g + 1, 0);
    L.c[0] = 1;
    std::vector<Int128> s(g + 1, 0);
    for (unsigned k = 1; k <= g; ++k) {
        const Int128 qk = detail::ipow(static_cast<Int128>(q), k);
        s[k] = qk + 1 - static_cast<Int128>(counts[k - 1]);
        // Weil: |s_k| <= 2 g q^(k/2).
        require(detail::checked_mul(s[k], s[k]) <= detail::checked_mul(4 * static_cast<Int128>(g) * g, qk),
                "point count N_" + std::to_string(k) + " violates the Weil bound");
    }
    for (unsigned k = 1; k <= g; ++k) {
        Int128 acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc = detail::checked_add(acc, detail::checked_mul(s[i], L.c[k - i]));
        require(acc % static_cast<Int128>(k) == 0, "point counts are inconsistent with an L-polynomial");
        L.c[k] = -acc / static_cast<Int128>(k);
    }
    for (unsigned i = 0; i < g; ++i) L.c[2 * g - i] = detail::checked_mul(detail::ipow(static_cast<Int128>(q), g - i), L.c[i]);
    return L;
}

// N_k predicted by L for k = 1..kmax.
inline std::vector<Int128> predict_counts(const LPolynomial& L, unsigned kmax) {
    const unsigned n = 2 * L.g;
    std::vector<Int128> s(kmax + 1, 0), out;
    for (unsigned k = 1; k <= kmax; ++k) {
        Int128 acc = k <= n ? detail::checked_mul(static_cast<Int128>(k), L.c[k]) : 0;
        for (unsigned i = 1; i < k; ++i)
            if (k - i <= n) acc = detail::checked_add(acc, detail::checked_mul(s[i], L.c[k - i]));
        s[k] = -acc;
        out.push_back(detail::ipow(static_cast<Int128>(L.q), k) + 1 - s[k]);
    }
    return out;
}

struct Slope {
    Fraction slope;
    unsigned length = 0;
};

// Lower convex hull of (i, v_q(c_i)), q-adic valuations normalized so that
// supersingular means every slope is 1/2.
inline std::vector<Slope> newton_polygon(const LPolynomial& L) {
    require(!L.c.empty() && L.c.front() == 1, "L-polynomial must have constant term 1");
    require(L.c.back() != 0, "L-polynomial has a vanishing top coefficient");
    std::uint64_t p = 0, m = 0;
    for (std::uint64_t d = 2; d <= L.q; ++d)
        if (L.q % d == 0) {
            p = d;
            break;
        }
    for (std::uint64_t t = L.q; t > 1; t /= p) ++m;
    struct Pt {
        std::int64_t x, v;
    };
    std::vector<Pt> pts;
    for (std::size_t i = 0; i < L.c.size(); ++i) {
        if (L.c[i] == 0) continue;
        Int128 a = L.c[i] < 0 ? -L.c[i] : L.c[i];
        std::int64_t v = 0;
        while (a % static_cast<Int128>(p) == 0) a /= static_cast<Int128>(p), ++v;
        pts.push_back({static_cast<std::int64_t>(i), v});
    }
    std::vector<Pt> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            // Drop b when it lies on or above the segment a -> q.
            if ((b.v - a.v) * (q.x - a.x) >= (q.v - a.v) * (b.x - a.x))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::vector<Slope> out;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const std::int64_t dx = hull[i].x - hull[i - 1].x, dv = hull[i].v - hull[i - 1].v;
        out.push_back({Fraction(dv, dx * static_cast<std::int64_t>(m)), static_cast<unsigned>(dx)});
    }
    return out;
}

inline unsigned slope_zero_multiplicity(const std::vector<Slope>& s) {
    unsigned n = 0;
    for (const auto& x : s)
        if (x.slope == Fraction(0)) n += x.length;
    return n;
}

inline bool all_slopes_half(const std::vector<Slope>& s) {
    return std::all_of(s.begin(), s.end(), [](const Slope& x) { return x.slope == Fraction(1, 2); });
}

struct ZetaReport {
    std::vector<std::uint64_t> counts;
    LPolynomial L;
    std::vector<Slope> slopes;
    bool supersingular = false;
};

// Counts to max(kmax, g); counts beyond g must match the L-polynomial.
inline ZetaReport zeta(const ASCurve& c, unsigned kmax, const ZetaOptions& opt = {}) {
    const unsigned g = c.genus();
    ZetaReport r;
    r.counts = point_counts(c, std::max(kmax, g), opt);
    r.L = l_polynomial(r.counts, g, base_order(c));
    auto pred = predict_counts(r.L, static_cast<unsigned>(r.counts.size()));
    for (std::size_t k = g; k < r.counts.size(); ++k)
        ensure(pred[k] == static_cast<Int128>(r.counts[k]), "N_" + std::to_string(k + 1) + " disagrees with the L-polynomial");
    r.slopes = newton_polygon(r.L);
    r.supersingular = all_slopes_half(r.slopes);
    return r;
}

inline bool is_supersingular(const ASCurve& c, const ZetaOptions& opt = {}) { return zeta(c, c.genus(), opt).supersingular; }

}  // namespace asnum

#endif
