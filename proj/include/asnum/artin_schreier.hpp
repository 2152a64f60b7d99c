#ifndef ASNUM_ARTIN_SCHREIER_HPP
#define ASNUM_ARTIN_SCHREIER_HPP

// Artin-Schreier curves y^p - y = f(x): reduction, genus, the Sullivan basis
// of holomorphic differentials and the Cartier-Manin matrix.
//
// f is kept as f_0(x) + sum_s f_s(x_s) with x_s = 1/(x - xi_s). Branch point
// s = 0 is the point at infinity; reduction guarantees f_0 is nonconstant by
// moving a finite pole to infinity when needed.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fields.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace asnum {

// x_s^i y^j dx; ordered by (s, j, i).
struct FormKey {
    unsigned s = 0;
    unsigned i = 0;
    unsigned j = 0;

    friend bool operator<(const FormKey& a, const FormKey& b) noexcept {
        return std::tie(a.s, a.j, a.i) < std::tie(b.s, b.j, b.i);
    }
    friend bool operator==(const FormKey& a, const FormKey& b) noexcept {
        return a.s == b.s && a.i == b.i && a.j == b.j;
    }
};

using DifferentialForm = std::map<FormKey, Fq>;

struct AsOptions {
    bool canonical = false;  // monic, a_{d-1} = 0, a_0 = 0 (polynomial f only)
};

class ASCurve {
  public:
    unsigned p() const noexcept { return f_.field().p(); }
    const FieldDescriptor& field() const noexcept { return f_.field(); }
    const PartialFractionForm& f() const noexcept { return f_; }
    bool is_polynomial() const noexcept { return f_.poles.empty(); }
    // d_0 = deg f_0, then d_s = deg f_s for each finite pole.
    const std::vector<unsigned>& degrees() const noexcept { return d_; }
    unsigned branch_points() const noexcept { return static_cast<unsigned>(d_.size()); }
    unsigned genus() const noexcept { return genus_; }
    const std::vector<FormKey>& basis() const noexcept { return basis_; }
    // Coordinate change applied during reduction, e.g. "x -> 1 + 1/x".
    const std::vector<std::string>& transforms() const noexcept { return transforms_; }

    RationalFunction rational() const { return f_.reassemble(); }
    Fq pole(unsigned s) const { return f_.poles.at(s - 1).xi; }

    std::string to_string() const { return "y^" + std::to_string(p()) + " - y = " + rational().to_string(); }

    bool in_basis(const FormKey& k) const {
        if (k.s >= d_.size() || k.j >= p()) return false;
        const long long pp = p(), d = d_[k.s], i = k.i, j = k.j;
        if (k.s == 0) return i * pp + j * d <= (pp - 1) * (d - 1) - 2;
        return i >= 1 && i * pp + j * d <= (pp - 1) * (d + 1);
    }

  private:
    friend ASCurve as_reduce(unsigned p, const RationalFunction& f, const AsOptions& opt);
    PartialFractionForm f_;
    std::vector<unsigned> d_;
    unsigned genus_ = 0;
    std::vector<FormKey> basis_;
    std::vector<std::string> transforms_;
};

namespace detail {

// Replace every c x^(p n) by c^(1/p) x^n, top down; the constant term stays.
inline UPoly as_reduce_poly(UPoly g, unsigned p, bool keep_constant) {
    const FieldDescriptor& f = g.field();
    for (int n = g.degree(); n >= 1; --n) {
        if (n % static_cast<int>(p) != 0) continue;
        Fq c = g.coeff(static_cast<std::size_t>(n));
        if (c.is_zero()) continue;
        g.set_coeff(static_cast<std::size_t>(n), Fq::zero(f));
        auto m = static_cast<std::size_t>(n / static_cast<int>(p));
        g.set_coeff(m, g.coeff(m) + c.frobenius(-1));
    }
    if (!keep_constant && !g.is_zero()) g.set_coeff(0, Fq::zero(f));
    return g;
}

inline PartialFractionForm as_reduce_form(PartialFractionForm pf, unsigned p) {
    pf.f0 = as_reduce_poly(pf.f0, p, true);
    std::vector<PoleTail> kept;
    for (auto& [xi, tail] : pf.poles) {
        UPoly t = as_reduce_poly(tail, p, false);
        if (!t.is_zero()) kept.push_back({xi, std::move(t)});
    }
    pf.poles = std::move(kept);
    return pf;
}

// u^D P(xi + 1/u) for D >= deg P.
inline UPoly invert_at(const UPoly& P, const Fq& xi, int D) {
    const FieldDescriptor& f = P.field();
    UPoly lin(f, {Fq::one(f), xi});  // xi u + 1
    UPoly out(f);
    for (int i = 0; i <= P.degree(); ++i) {
        Fq c = P.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        out += lin.pow(static_cast<unsigned>(i)) * UPoly::monomial(c, static_cast<std::size_t>(D - i));
    }
    return out;
}

inline RationalFunction move_to_infinity(const RationalFunction& r, const Fq& xi) {
    int D = std::max(r.numerator().degree(), r.denominator().degree());
    return RationalFunction(invert_at(r.numerator(), xi, D), invert_at(r.denominator(), xi, D));
}

}  // namespace detail

inline ASCurve as_reduce(unsigned p, const RationalFunction& f, const AsOptions& opt = {}) {
    const FieldDescriptor& fd = f.field();
    if (fd.p() != p) throw DomainError("field characteristic " + std::to_string(fd.p()) + " does not match p = " + std::to_string(p));
    ASCurve c;
    PartialFractionForm pf = detail::as_reduce_form(partial_fractions(f), p);
    if (pf.f0.degree() <= 0 && !pf.poles.empty()) {
        Fq xi = pf.poles.front().xi;
        RationalFunction moved = detail::move_to_infinity(pf.reassemble(), xi);
        c.transforms_.push_back("x -> " + (xi.is_zero() ? std::string() : "(" + xi.to_string() + ") + ") + "1/x");
        pf = detail::as_reduce_form(partial_fractions(moved), p);
    }
    if (pf.f0.degree() <= 0 && pf.poles.empty())
        throw DomainError("f reduces to a constant: the cover y^p - y = f splits (f = h^p - h + c)");

    if (opt.canonical) {
        if (!pf.poles.empty()) throw DomainError("canonical form is defined for polynomial f only");
        const FieldDescriptor& F = fd;
        int d = pf.f0.degree();
        Fq lead = pf.f0.lead();
        if (!lead.is_one()) {
            // lambda^d = 1/lead
            UPoly eq = UPoly::monomial(Fq::one(F), static_cast<std::size_t>(d)) - UPoly::constant(lead.inv());
            auto rs = roots(eq);
            if (rs.empty())
                throw DomainError("making f monic needs a " + std::to_string(d) + "-th root of " + lead.inv().to_string() +
                                  ", absent from " + F.name());
            pf.f0 = pf.f0.compose(UPoly::monomial(rs.front(), 1));
            c.transforms_.push_back("x -> (" + rs.front().to_string() + ")*x");
        }
        Fq top = pf.f0.coeff(static_cast<std::size_t>(d - 1));
        if (d >= 2 && !top.is_zero() && d % static_cast<int>(p) != 0) {
            Fq shift = -top / Fq(F, d);
            pf.f0 = pf.f0.compose(UPoly(F, {shift, Fq::one(F)}));
            c.transforms_.push_back("x -> x + (" + shift.to_string() + ")");
        }
        pf.f0 = detail::as_reduce_poly(pf.f0, p, false);
        if (!pf.f0.coeff(0).is_zero()) pf.f0.set_coeff(0, Fq::zero(F));
    }

    c.f_ = std::move(pf);
    c.d_.push_back(static_cast<unsigned>(c.f_.f0.degree()));
    for (const auto& pt : c.f_.poles) c.d_.push_back(static_cast<unsigned>(pt.tail.degree()));

    long long sum = 0;
    for (auto d : c.d_) sum += d + 1;
    long long two_g = static_cast<long long>(p - 1) * (sum - 2);
    ensure(two_g % 2 == 0 && two_g >= 0, "Riemann-Hurwitz genus is not a nonnegative integer");
    c.genus_ = static_cast<unsigned>(two_g / 2);

    for (unsigned s = 0; s < c.d_.size(); ++s)
        for (unsigned j = 0; j < p; ++j)
            for (unsigned i = (s == 0 ? 0u : 1u);; ++i) {
                FormKey k{s, i, j};
                if (!c.in_basis(k)) break;
                c.basis_.push_back(k);
            }
    ensure(c.basis_.size() == c.genus_, "Sullivan basis count " + std::to_string(c.basis_.size()) +
                                            " differs from the Riemann-Hurwitz genus " + std::to_string(c.genus_));
    return c;
}

inline unsigned genus(const ASCurve& c) { return c.genus(); }

// Deuring-Shafarevich: (m - 1)(p - 1), m the number of branch points.
inline unsigned p_rank(const ASCurve& c) { return (c.branch_points() - 1) * (c.p() - 1); }

inline const std::vector<FormKey>& holomorphic_basis(const ASCurve& c) { return c.basis(); }

inline std::string form_label(const FormKey& k) {
    std::string out;
    auto var = [&]() -> std::string { return k.s == 0 ? "x" : "x" + std::to_string(k.s); };
    if (k.i) out += var() + (k.i > 1 ? "^" + std::to_string(k.i) : "");
    if (k.j) out += (out.empty() ? "" : "*") + std::string("y") + (k.j > 1 ? "^" + std::to_string(k.j) : "");
    return (out.empty() ? "" : out + " ") + "dx";
}

namespace detail {

// Cartier image of a polynomial one-form P(x) dx: sum of c_n^(1/p) x^((n+1)/p - 1).
inline UPoly cartier_poly(const UPoly& P, unsigned p) {
    const FieldDescriptor& f = P.field();
    std::vector<Fq> out;
    for (int n = static_cast<int>(p) - 1; n <= P.degree(); n += static_cast<int>(p)) {
        std::size_t e = static_cast<std::size_t>((n + 1) / static_cast<int>(p) - 1);
        if (out.size() <= e) out.resize(e + 1, Fq::zero(f));
        out[e] = P.coeff(static_cast<std::size_t>(n)).frobenius(-1);
    }
    return UPoly(f, std::move(out));
}

class CartierEngine {
  public:
    explicit CartierEngine(const ASCurve& c) : c_(c), F_(c.field()) {
        RationalFunction r = c.rational();
        nf_ = r.numerator();
        for (const auto& pt : c.f().poles) xi_.push_back(pt.xi);
        nf_pow_.push_back(UPoly::constant(Fq::one(F_)));
        for (unsigned t = 1; t < c.p(); ++t) nf_pow_.push_back(nf_pow_.back() * (-nf_));
    }

    // C(c * x_s^i y^j dx) accumulated into out.
    void apply(const FormKey& k, const Fq& coef, DifferentialForm& out) const {
        const unsigned p = c_.p();
        const Fq cr = coef.frobenius(-1);
        for (unsigned t = 0; t <= k.j; ++t) {
            Fq b = Fq(F_, static_cast<long long>(binomial_mod(k.j, t, p)));
            if (b.is_zero()) continue;
            // x_s^i (-f)^t = N / prod (x - xi_r)^(e_r)
            UPoly N = nf_pow_[t];
            std::vector<unsigned> e(xi_.size(), 0);
            for (std::size_t r = 0; r < xi_.size(); ++r) e[r] = t * c_.degrees()[r + 1];
            if (k.s == 0)
                N = N * UPoly::monomial(Fq::one(F_), k.i);
            else
                e[k.s - 1] += k.i;
            // C(N / E dx) = (1/E) C(N E^(p-1) dx)
            UPoly P = N;
            for (std::size_t r = 0; r < xi_.size(); ++r)
                if (e[r]) P *= UPoly::linear(xi_[r]).pow(e[r] * (p - 1));
            UPoly M = cartier_poly(P, p);
            if (M.is_zero()) continue;
            std::vector<std::pair<Fq, unsigned>> poles;
            for (std::size_t r = 0; r < xi_.size(); ++r) poles.emplace_back(xi_[r], e[r]);
            PartialFractionForm pf = partial_fractions_known(M, poles);
            const unsigned jj = k.j - t;
            Fq scale = b * cr;
            for (int a = 0; a <= pf.f0.degree(); ++a) add(out, {0, static_cast<unsigned>(a), jj}, pf.f0.coeff(static_cast<std::size_t>(a)) * scale);
            for (const auto& pt : pf.poles) {
                unsigned s = pole_index(pt.xi);
                for (int a = 1; a <= pt.tail.degree(); ++a) add(out, {s, static_cast<unsigned>(a), jj}, pt.tail.coeff(static_cast<std::size_t>(a)) * scale);
            }
        }
    }

  private:
    static void add(DifferentialForm& out, const FormKey& k, const Fq& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = out.emplace(k, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    unsigned pole_index(const Fq& xi) const {
        for (std::size_t r = 0; r < xi_.size(); ++r)
            if (xi_[r] == xi) return static_cast<unsigned>(r + 1);
        throw HardFault("Cartier image has a pole outside the branch locus");
    }

    const ASCurve& c_;
    const FieldDescriptor& F_;
    UPoly nf_;
    std::vector<Fq> xi_;
    std::vector<UPoly> nf_pow_;
};

}  // namespace detail

// Cartier operator on an arbitrary holomorphic form given in basis coordinates.
inline DifferentialForm cartier(const ASCurve& c, const DifferentialForm& w) {
    detail::CartierEngine eng(c);
    DifferentialForm out;
    for (const auto& [k, v] : w) eng.apply(k, v, out);
    for (const auto& [k, v] : out)
        if (!c.in_basis(k)) throw HardFault("Cartier image contains " + form_label(k) + ", outside the Sullivan basis");
    return out;
}

struct CartierMatrix {
    std::vector<FormKey> basis;
    Matrix m;  // column l = coordinates of C(basis[l])
};

inline CartierMatrix cartier_matrix(const ASCurve& c) {
    const auto& B = c.basis();
    CartierMatrix cm{B, Matrix(c.field(), B.size(), B.size())};
    detail::CartierEngine eng(c);
    std::map<FormKey, std::size_t> pos;
    for (std::size_t l = 0; l < B.size(); ++l) pos[B[l]] = l;
    for (std::size_t l = 0; l < B.size(); ++l) {
        DifferentialForm img;
        eng.apply(B[l], Fq::one(c.field()), img);
        for (const auto& [k, v] : img) {
            auto it = pos.find(k);
            if (it == pos.end()) throw HardFault("Cartier image contains " + form_label(k) + ", outside the Sullivan basis");
            cm.m(it->second, l) = v;
        }
    }
    return cm;
}

inline unsigned cartier_rank(const ASCurve& c) { return static_cast<unsigned>(cartier_matrix(c).m.rank()); }

inline unsigned a_number(const ASCurve& c) { return c.genus() - cartier_rank(c); }

// Stable rank of the 1/p-semilinear operator: C^g has matrix
// M M^(1/p) ... M^(1/p^(g-1)).
inline unsigned stable_rank_inverse_semilinear(const Matrix& m) {
    const std::size_t g = m.rows();
    if (g == 0) return 0;
    Matrix prod = m;
    for (std::size_t e = 1; e < g; ++e) prod = prod * m.twist(-static_cast<long long>(e));
    return static_cast<unsigned>(prod.rank());
}

inline unsigned p_rank_from_cartier(const ASCurve& c) { return stable_rank_inverse_semilinear(cartier_matrix(c).m); }

}  // namespace asnum

#endif
