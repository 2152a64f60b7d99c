#ifndef ASNUM_RESULTANT_HPP
#define ASNUM_RESULTANT_HPP

// Sylvester resultants over commutative coefficient rings, with the
// determinant taken by Berkowitz's division-free algorithm.

#include <string>
#include <vector>

#include "error.hpp"
#include "multipoly.hpp"
#include "upoly.hpp"

namespace asnum {

template <class R>
using RingMatrix = std::vector<std::vector<R>>;

// Determinant of a square matrix over a commutative ring: the constant term
// of the characteristic polynomial built from Toeplitz factors.
template <class R>
R berkowitz_det(const RingMatrix<R>& a, const R& zero, const R& one) {
    const std::size_t n = a.size();
    if (n == 0) return one;
    // vect holds the characteristic polynomial of the trailing principal
    // submatrix, highest coefficient first.
    std::vector<R> vect{one, -a[n - 1][n - 1]};
    for (std::size_t r = n - 1; r-- > 0;) {
        // Leading entry a[r][r]; row R = a[r][r+1..], column C = a[r+1..][r],
        // submatrix S = a[r+1..][r+1..] of size m = n - r - 1.
        const std::size_t m = n - r - 1;
        std::vector<R> col(m, zero);
        for (std::size_t i = 0; i < m; ++i) col[i] = a[r + 1 + i][r];
        std::vector<R> diag{one, -a[r][r]};
        for (std::size_t k = 0; k < m; ++k) {
            R s = zero;
            for (std::size_t i = 0; i < m; ++i) s = s + a[r][r + 1 + i] * col[i];
            diag.push_back(-s);
            if (k + 1 < m) {
                std::vector<R> next(m, zero);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) next[i] = next[i] + a[r + 1 + i][r + 1 + j] * col[j];
                col = std::move(next);
            }
        }
        // Toeplitz (m+2) x (m+1) times vect (length m+1).
        std::vector<R> out(m + 2, zero);
        for (std::size_t i = 0; i < m + 2; ++i)
            for (std::size_t j = 0; j <= i && j < m + 1; ++j) out[i] = out[i] + diag[i - j] * vect[j];
        vect = std::move(out);
    }
    R det = vect[n];
    return n % 2 ? -det : det;
}

// Sylvester matrix of coefficient lists (lowest degree first).
template <class R>
RingMatrix<R> sylvester_matrix(const std::vector<R>& a, const std::vector<R>& b, const R& zero) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    RingMatrix<R> s(m + n, std::vector<R>(m + n, zero));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j) s[n + r][r + j] = b[n - j];
    return s;
}

template <class R>
R resultant_coeffs(const std::vector<R>& a, const std::vector<R>& b, const R& zero, const R& one) {
    if (a.empty() || b.empty()) return zero;
    if (a.size() == 1 && b.size() == 1) return one;
    return berkowitz_det(sylvester_matrix(a, b, zero), zero, one);
}

inline Fq resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("resultant of two zero polynomials");
    const FieldDescriptor& f = a.is_zero() ? b.field() : a.field();
    return resultant_coeffs(a.coeffs(), b.coeffs(), Fq::zero(f), Fq::one(f));
}

// Polynomials in y with coefficients in F_q[x].
using BiPoly = std::vector<UPoly>;

inline UPoly resultant(const BiPoly& a, const BiPoly& b, const FieldDescriptor& f) {
    auto trimmed = [](BiPoly v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        return v;
    };
    BiPoly ta = trimmed(a), tb = trimmed(b);
    if (ta.empty() && tb.empty()) throw DomainError("resultant of two zero polynomials");
    return resultant_coeffs(ta, tb, UPoly(f), UPoly::constant(Fq::one(f)));
}

// Res_v(g, h) as a polynomial in the same variable list (free of v).
inline MultiPoly resultant(const MultiPoly& g, const MultiPoly& h, const std::string& var) {
    if (g.is_zero() && h.is_zero()) throw DomainError("resultant of two zero polynomials");
    const std::size_t v = g.var_index(var);
    auto coeffs = [&](const MultiPoly& q) {
        std::vector<MultiPoly> c(q.degree_in(v) + 1, q.zero_like());
        if (q.is_zero()) return std::vector<MultiPoly>{};
        for (const auto& [m, cf] : q.terms()) {
            Monomial mm = m;
            unsigned e = mm[v];
            mm[v] = 0;
            c[e].add_term(mm, cf);
        }
        return c;
    };
    return resultant_coeffs(coeffs(g), coeffs(h), g.zero_like(), g.one_like());
}

}  // namespace asnum

#endif
