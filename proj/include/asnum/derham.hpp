#ifndef ASNUM_DERHAM_HPP
#define ASNUM_DERHAM_HPP

// de Rham cohomology of y^p - y = h(x), h a polynomial of degree d prime to p,
// computed with Cech-de Rham triples (t, w1, w2) for the cover
//   U1 = X minus the fiber over x = 0,   U2 = X minus the fiber over infinity,
// with dt = w1 - w2 on the overlap.
//
// Classes are stored in the basis alpha(i,j), beta(i,j) over the index set
// p i + d j <= (p-1)(d-1) - 2; alphas first. Column l of every operator
// matrix holds the image of basis class l.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artin_schreier.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "matrix.hpp"
#include "upoly.hpp"

namespace asnum {

// sum c x^a y^b, a in Z, 0 <= b <= p-1 after reduction. One-forms are stored
// as the coefficient of dx.
using LaurentXY = std::map<std::pair<int, int>, Fq>;

struct DeRhamClass {
    LaurentXY t, w1, w2;
};

struct DeRhamBasis {
    const FieldDescriptor* field = nullptr;
    unsigned p = 0;
    unsigned d = 0;
    UPoly h;
    std::vector<std::pair<unsigned, unsigned>> index;  // (i, j)
    std::vector<DeRhamClass> classes;                  // alphas then betas
    std::vector<std::string> labels;

    unsigned genus() const noexcept { return static_cast<unsigned>(index.size()); }
    std::size_t dim() const noexcept { return classes.size(); }
};

namespace detail {

inline void lxy_add(LaurentXY& a, std::pair<int, int> k, const Fq& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = a.emplace(k, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) a.erase(it);
    }
}

inline LaurentXY lxy_sum(const LaurentXY& a, const LaurentXY& b, const Fq& sb) {
    LaurentXY r = a;
    for (const auto& [k, v] : b) lxy_add(r, k, v * sb);
    return r;
}

class DeRhamRing {
  public:
    DeRhamRing(const FieldDescriptor& f, unsigned p, UPoly h) : f_(f), p_(p), h_(std::move(h)), dh_(h_.derivative()) {
        hp_.push_back(UPoly::constant(Fq::one(f)));
        for (unsigned t = 1; t < p; ++t) hp_.push_back(hp_.back() * h_);
    }

    Fq zero() const { return Fq::zero(f_); }
    Fq one() const { return Fq::one(f_); }

    // Rewrite y^b, b >= p, as y^(b-p) (y + h).
    LaurentXY reduce(LaurentXY a) const {
        for (;;) {
            auto it = std::find_if(a.begin(), a.end(), [&](const auto& kv) { return kv.first.second >= static_cast<int>(p_); });
            if (it == a.end()) return a;
            auto [k, v] = *it;
            a.erase(it);
            lxy_add(a, {k.first, k.second - static_cast<int>(p_) + 1}, v);
            for (int e = 0; e <= h_.degree(); ++e)
                lxy_add(a, {k.first + e, k.second - static_cast<int>(p_)}, v * h_.coeff(static_cast<std::size_t>(e)));
        }
    }

    LaurentXY mul(const LaurentXY& a, const LaurentXY& b) const {
        LaurentXY r;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b) lxy_add(r, {ka.first + kb.first, ka.second + kb.second}, va * vb);
        return reduce(std::move(r));
    }

    LaurentXY frobenius_power(const LaurentXY& a) const {
        LaurentXY r;
        for (const auto& [k, v] : a) {
            // (c x^a y^b)^p = c^p x^(pa) (y + h)^b
            LaurentXY term{{{static_cast<int>(p_) * k.first, 0}, v.frobenius(1)}};
            LaurentXY yh;
            lxy_add(yh, {0, 1}, one());
            for (int e = 0; e <= h_.degree(); ++e) lxy_add(yh, {e, 0}, h_.coeff(static_cast<std::size_t>(e)));
            for (int b = 0; b < k.second; ++b) term = mul(term, yh);
            for (const auto& [kk, vv] : term) lxy_add(r, kk, vv);
        }
        return r;
    }

    // d(phi) = (phi_x - h' phi_y) dx, using dy = -h'(x) dx.
    LaurentXY differential(const LaurentXY& a) const {
        LaurentXY r;
        for (const auto& [k, v] : a) {
            lxy_add(r, {k.first - 1, k.second}, v * Fq(f_, k.first));
            if (k.second == 0) continue;
            Fq c = -(v * Fq(f_, k.second));
            for (int e = 1; e <= h_.degree(); ++e)
                lxy_add(r, {k.first + e - 1, k.second - 1}, c * dh_.coeff(static_cast<std::size_t>(e - 1)));
        }
        return r;
    }

    // C(x^a y^b dx) = sum_t C(b,t) (-1)^t y^(b-t) C(x^a h^t dx).
    LaurentXY cartier(const LaurentXY& w) const {
        LaurentXY r;
        const int p = static_cast<int>(p_);
        for (const auto& [k, v] : w) {
            Fq vr = v.frobenius(-1);
            for (int t = 0; t <= k.second; ++t) {
                Fq b(f_, static_cast<long long>(binomial_mod(static_cast<unsigned>(k.second), static_cast<unsigned>(t), p_)));
                if (b.is_zero()) continue;
                if (t % 2) b = -b;
                const UPoly& ht = hp_[static_cast<std::size_t>(t)];
                for (int e = 0; e <= ht.degree(); ++e) {
                    int n = k.first + e;
                    if (((n + 1) % p + p) % p != 0) continue;
                    Fq c = ht.coeff(static_cast<std::size_t>(e)).frobenius(-1) * b * vr;
                    lxy_add(r, {(n + 1) / p - 1, k.second - t}, c);
                }
            }
        }
        return r;
    }

    // Order of x^a y^b at the point at infinity is -p a - d b.
    bool regular_at_infinity(const LaurentXY& fn) const {
        for (const auto& [k, v] : fn)
            if (-static_cast<long long>(p_) * k.first - static_cast<long long>(h_.degree()) * k.second < 0) return false;
        return true;
    }
    // x^a y^b dx is regular at infinity iff -p a - d b + (p-1)(d-1) - 2 >= 0.
    bool form_regular_at_infinity(const LaurentXY& w) const {
        const long long p = p_, d = h_.degree();
        for (const auto& [k, v] : w)
            if (-p * k.first - d * k.second + (p - 1) * (d - 1) - 2 < 0) return false;
        return true;
    }
    static bool regular_at_zero(const LaurentXY& a) {
        for (const auto& [k, v] : a)
            if (k.first < 0) return false;
        return true;
    }

    // Sum of residues over the fiber above x = 0 of phi dx: the trace of
    // y^b vanishes for b < p - 1 and equals -1 for b = p - 1.
    Fq fiber_residue(const LaurentXY& w) const {
        auto it = w.find({-1, static_cast<int>(p_) - 1});
        return it == w.end() ? zero() : -it->second;
    }

    const UPoly& h() const noexcept { return h_; }

  private:
    const FieldDescriptor& f_;
    unsigned p_;
    UPoly h_, dh_;
    std::vector<UPoly> hp_;
};

inline DeRhamRing ring_of(const DeRhamBasis& b) { return DeRhamRing(*b.field, b.p, b.h); }

}  // namespace detail

// beta(i, j) = [(y^n / x^(i+1), -phi / x^(i+2) dx, n s^hi y^(n-1) / x^(i+2) dx)],
// n = p - 1 - j, phi = n s^lo y^(n-1) + (i+1) y^n, s(x) = x h'(x).
// Monomials of s of degree <= i + 1 form s^lo: the degree i + 2 monomial
// gives x^0 y^(n-1) dx, regular above x = 0 but not always at infinity.
// The cocycle identity is checked for every class built.
inline DeRhamClass beta_class(const DeRhamBasis& B, unsigned i, unsigned j) {
    require(j < B.p, "beta index j must be below p");
    const FieldDescriptor& F = *B.field;
    detail::DeRhamRing R = detail::ring_of(B);
    const Fq one = Fq::one(F);
    const UPoly s = B.h.derivative() * UPoly::x(F);
    const int n = static_cast<int>(B.p - 1 - j);
    const int ii = static_cast<int>(i);
    DeRhamClass cl;
    cl.t[{-(ii + 1), n}] = one;
    if (n > 0)
        for (int e = 0; e <= s.degree(); ++e) {
            Fq c = s.coeff(static_cast<std::size_t>(e)) * Fq(F, n);
            if (c.is_zero()) continue;
            if (e <= ii + 1)
                detail::lxy_add(cl.w1, {e - ii - 2, n - 1}, -c);
            else
                detail::lxy_add(cl.w2, {e - ii - 2, n - 1}, c);
        }
    detail::lxy_add(cl.w1, {-(ii + 2), n}, -Fq(F, ii + 1));
    LaurentXY diff = detail::lxy_sum(R.differential(cl.t), detail::lxy_sum(cl.w1, cl.w2, -one), -one);
    ensure(diff.empty(), "cocycle identity dt = w1 - w2 fails for beta(" + std::to_string(i) + "," + std::to_string(j) + ")");
    return cl;
}

inline DeRhamBasis derham_basis(const ASCurve& c) {
    if (!c.is_polynomial()) throw DomainError("de Rham basis needs a polynomial f");
    const unsigned p = c.p();
    const UPoly h = c.f().f0;
    const int d = h.degree();
    if (d < 1 || d % static_cast<int>(p) == 0) throw DomainError("de Rham basis needs deg f prime to p");
    const FieldDescriptor& F = c.field();
    DeRhamBasis B;
    B.field = &F;
    B.p = p;
    B.d = static_cast<unsigned>(d);
    B.h = h;
    const long long bound = static_cast<long long>(p - 1) * (d - 1) - 2;
    for (unsigned j = 0; j < p; ++j)
        for (unsigned i = 0; static_cast<long long>(p) * i + static_cast<long long>(d) * j <= bound; ++i) B.index.emplace_back(i, j);
    ensure(B.index.size() == c.genus(), "de Rham index set size differs from the genus");

    detail::DeRhamRing R(F, p, h);
    const Fq one = Fq::one(F);
    for (auto [i, j] : B.index) {
        LaurentXY w{{{static_cast<int>(i), static_cast<int>(j)}, one}};
        B.classes.push_back({{}, w, w});
        B.labels.push_back("alpha(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    for (auto [i, j] : B.index) {
        DeRhamClass cl = beta_class(B, i, j);
        ensure(detail::DeRhamRing::regular_at_zero(cl.w2), "w2 has a pole above x = 0");
        ensure(R.form_regular_at_infinity(cl.w1), "w1 has a pole at infinity");
        B.classes.push_back(std::move(cl));
        B.labels.push_back("beta(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return B;
}

namespace detail {

// alpha coordinates of a holomorphic form sum c x^a y^b dx.
inline std::vector<Fq> alpha_coordinates(const DeRhamBasis& B, const LaurentXY& w) {
    std::vector<Fq> out(B.genus(), Fq::zero(*B.field));
    for (const auto& [k, v] : w) {
        auto it = B.index.end();
        if (k.first >= 0)
            it = std::find(B.index.begin(), B.index.end(), std::pair<unsigned, unsigned>(k.first, k.second));
        if (it == B.index.end())
            throw HardFault("form x^" + std::to_string(k.first) + " y^" + std::to_string(k.second) + " dx is not in the alpha span");
        out[static_cast<std::size_t>(it - B.index.begin())] = v;
    }
    return out;
}

}  // namespace detail

// Cartier image of a Laurent one-form sum c x^a y^b dx on the curve.
inline LaurentXY cartier_form(const DeRhamBasis& B, const LaurentXY& w) { return detail::ring_of(B).cartier(w); }

// Verschiebung: [(t, w1, w2)] -> [(0, C(w1), C(w2))].
inline Matrix v_matrix(const DeRhamBasis& B) {
    detail::DeRhamRing R = detail::ring_of(B);
    const std::size_t n = B.dim(), g = B.genus();
    Matrix m(*B.field, n, n);
    for (std::size_t l = 0; l < n; ++l) {
        LaurentXY c1 = R.cartier(B.classes[l].w1), c2 = R.cartier(B.classes[l].w2);
        ensure(detail::lxy_sum(c1, c2, -Fq::one(*B.field)).empty(), "C(w1) != C(w2) for " + B.labels[l]);
        auto coords = detail::alpha_coordinates(B, c2);
        for (std::size_t r = 0; r < g; ++r) m(r, l) = coords[r];
    }
    return m;
}

// Frobenius: [(t, w1, w2)] -> [(t^p, 0, 0)], reduced modulo coboundaries.
inline Matrix f_matrix(const DeRhamBasis& B) {
    detail::DeRhamRing R = detail::ring_of(B);
    const FieldDescriptor& F = *B.field;
    const std::size_t n = B.dim(), g = B.genus();
    const Fq one = Fq::one(F);
    const long long p = B.p, d = B.d;
    Matrix m(F, n, n);
    for (std::size_t l = 0; l < n; ++l) {
        LaurentXY tp = R.frobenius_power(B.classes[l].t);
        LaurentXY P, Q;
        std::vector<Fq> r(g, Fq::zero(F));
        for (const auto& [k, v] : tp) {
            if (k.first < -static_cast<int>(p) * static_cast<int>(g + 2)) throw HardFault("coboundary reduction left its window");
            if (k.first >= 0) {
                P[k] = v;
            } else if (-p * k.first - d * k.second >= 0) {
                Q[k] = v;
            } else {
                auto idx = std::pair<unsigned, unsigned>(static_cast<unsigned>(-k.first - 1), static_cast<unsigned>(p - 1 - k.second));
                auto it = std::find(B.index.begin(), B.index.end(), idx);
                ensure(it != B.index.end(), "Frobenius residue outside the beta span");
                r[static_cast<std::size_t>(it - B.index.begin())] = v;
            }
        }
        // (t^p, 0, 0) - coboundary(-Q, P) - sum r_b beta_b = (0, w, w)
        LaurentXY wa = R.differential(P), wb = R.differential(Q);
        for (std::size_t b = 0; b < g; ++b) {
            if (r[b].is_zero()) continue;
            wa = detail::lxy_sum(wa, B.classes[g + b].w2, -r[b]);
            wb = detail::lxy_sum(wb, B.classes[g + b].w1, r[b]);
        }
        ensure(detail::lxy_sum(wa, wb, one).empty(), "Frobenius remainder is not a global form");
        auto coords = detail::alpha_coordinates(B, wa);
        for (std::size_t a = 0; a < g; ++a) m(a, l) = coords[a];
        for (std::size_t b = 0; b < g; ++b) m(g + b, l) = r[b];
    }
    return m;
}

// <(f, w1, w2), (g, e1, e2)> = sum over the fiber above x = 0 of
// Res(f e2 - g w1).
inline Fq pairing(const DeRhamBasis& B, const DeRhamClass& a, const DeRhamClass& b) {
    detail::DeRhamRing R = detail::ring_of(B);
    LaurentXY s = detail::lxy_sum(R.mul(a.t, b.w2), R.mul(b.t, a.w1), -Fq::one(*B.field));
    return R.fiber_residue(s);
}

inline Matrix pairing_gram(const DeRhamBasis& B) {
    const std::size_t n = B.dim();
    Matrix m(*B.field, n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = pairing(B, B.classes[a], B.classes[b]);
    if (m.rank() != n) throw HardFault("de Rham pairing is degenerate");
    return m;
}

struct FiltrationStep {
    Matrix basis;  // rows span N, reduced row echelon form
    std::size_t dim = 0;
    std::size_t v_dim = 0;
};

struct EOData {
    std::vector<FiltrationStep> filtration;  // increasing
    unsigned a_number = 0;
    unsigned p_rank = 0;
    Matrix v, f;
};

namespace detail {

inline Matrix rref_rows(Matrix rows) {
    auto piv = rows.rref();
    Matrix out(rows.field(), piv.size(), rows.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) out(i, j) = rows(i, j);
    return out;
}

// Subspace spanned by the columns of cols, as reduced rows.
inline Matrix span_of_columns(const Matrix& cols) { return rref_rows(cols.transpose()); }

inline Matrix v_image(const Matrix& V, const Matrix& rows) {
    if (rows.rows() == 0) return rows;
    return span_of_columns(V * rows.twist(-1).transpose());
}

// F^{-1}(N) = (ker(A F))^(1/p), A the annihilator of N.
inline Matrix f_preimage(const Matrix& Fm, const Matrix& rows) {
    const std::size_t n = Fm.rows();
    Matrix A = rows.rows() == 0 ? Matrix::identity(Fm.field(), n) : rows.kernel().transpose();
    if (A.rows() == 0) return Matrix::identity(Fm.field(), n);
    Matrix k = (A * Fm).kernel();
    return span_of_columns(k.twist(-1));
}

}  // namespace detail

inline unsigned stable_rank_semilinear(const Matrix& m) {
    const std::size_t g = m.rows();
    if (g == 0) return 0;
    Matrix prod = m;
    for (std::size_t e = 1; e < g; ++e) prod = prod * m.twist(static_cast<long long>(e));
    return static_cast<unsigned>(prod.rank());
}

inline EOData eo_data(const DeRhamBasis& B) {
    EOData out;
    out.v = v_matrix(B);
    out.f = f_matrix(B);
    const FieldDescriptor& F = *B.field;
    const std::size_t n = B.dim();

    // dim(ker V cap ker F) = 2g - rank [V^(p); F^(1/p)]
    out.a_number = static_cast<unsigned>(n - out.v.twist(1).stack(out.f.twist(-1)).rank());
    // p-rank: F on the 2g-dimensional space stabilizes after 2g steps.
    out.p_rank = stable_rank_semilinear(out.f);

    std::vector<Matrix> found{Matrix(F, 0, n), Matrix::identity(F, n)};
    std::size_t next = 0;
    while (next < found.size()) {
        if (found.size() > n + 1) throw HardFault("canonical filtration is not a chain");
        Matrix cur = found[next++];
        for (Matrix cand : {detail::v_image(out.v, cur), detail::f_preimage(out.f, cur)}) {
            if (std::none_of(found.begin(), found.end(), [&](const Matrix& m) { return m == cand; })) found.push_back(cand);
        }
    }
    std::sort(found.begin(), found.end(), [](const Matrix& a, const Matrix& b) { return a.rows() < b.rows(); });
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (i && found[i].rows() == found[i - 1].rows()) throw HardFault("canonical filtration has two subspaces of equal dimension");
        if (i && found[i - 1].rows() && found[i].rows()) {
            Matrix both = found[i].stack(found[i - 1]);
            ensure(both.rank() == found[i].rows(), "canonical filtration is not nested");
        }
        out.filtration.push_back({found[i], found[i].rows(), detail::v_image(out.v, found[i]).rows()});
    }
    return out;
}

}  // namespace asnum

#endif
