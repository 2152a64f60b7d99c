#ifndef ASNUM_MULTIPOLY_HPP
#define ASNUM_MULTIPOLY_HPP

// Sparse multivariate polynomials over F_{p^k} with named variables.
//
// Symbolic coefficients (the a_i, b_i of the quintic families) are handled by
// treating them as additional variables of the same flat ring over F_p;
// coefficient_in() then extracts the coefficient of a monomial in the leading
// variables as a polynomial in the rest.

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fields.hpp"
#include "upoly.hpp"

namespace asnum {

using Monomial = std::vector<std::uint16_t>;

// Graded lexicographic order with the variable list order.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        unsigned da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

class MultiPoly {
  public:
    using Terms = std::map<Monomial, Fq, GrlexLess>;

    MultiPoly() = default;
    MultiPoly(const FieldDescriptor& f, std::vector<std::string> vars) : f_(&f), vars_(std::move(vars)) {}

    static MultiPoly constant(const FieldDescriptor& f, std::vector<std::string> vars, const Fq& c) {
        MultiPoly r(f, std::move(vars));
        r.add_term(Monomial(r.vars_.size(), 0), c);
        return r;
    }
    static MultiPoly variable(const FieldDescriptor& f, std::vector<std::string> vars, const std::string& name) {
        MultiPoly r(f, std::move(vars));
        Monomial m(r.vars_.size(), 0);
        m[r.var_index(name)] = 1;
        r.add_term(m, Fq::one(f));
        return r;
    }
    MultiPoly zero_like() const { return MultiPoly(*f_, vars_); }
    MultiPoly constant_like(const Fq& c) const { return constant(*f_, vars_, c); }
    MultiPoly one_like() const { return constant_like(Fq::one(*f_)); }
    MultiPoly var_like(const std::string& name) const { return variable(*f_, vars_, name); }

    const FieldDescriptor& field() const noexcept { return *f_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const Terms& terms() const noexcept { return t_; }
    std::size_t size() const noexcept { return t_.size(); }
    bool is_zero() const noexcept { return t_.empty(); }
    bool is_constant() const noexcept {
        return t_.empty() || (t_.size() == 1 && total_degree(t_.begin()->first) == 0);
    }
    Fq constant_term() const {
        Monomial z(vars_.size(), 0);
        auto it = t_.find(z);
        return it == t_.end() ? Fq::zero(*f_) : it->second;
    }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw DomainError("unknown variable '" + name + "'");
    }
    bool has_var(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    void add_term(const Monomial& m, const Fq& c) {
        if (m.size() != vars_.size()) throw DomainError("monomial arity mismatch");
        if (c.field_ptr() != f_) throw DomainError("coefficient from a different field");
        if (c.is_zero()) return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Fq coefficient_of(const Monomial& m) const {
        if (m.size() != vars_.size()) throw DomainError("monomial arity mismatch");
        auto it = t_.find(m);
        return it == t_.end() ? Fq::zero(*f_) : it->second;
    }

    // Coefficient of the monomial `lead` in the first lead.size() variables,
    // as a polynomial in the remaining variables.
    MultiPoly coefficient_in(const Monomial& lead) const {
        const std::size_t n = lead.size();
        if (n > vars_.size()) throw DomainError("monomial arity mismatch");
        MultiPoly r(*f_, std::vector<std::string>(vars_.begin() + static_cast<long>(n), vars_.end()));
        for (const auto& [m, c] : t_) {
            if (!std::equal(lead.begin(), lead.end(), m.begin())) continue;
            r.add_term(Monomial(m.begin() + static_cast<long>(n), m.end()), c);
        }
        return r;
    }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max<unsigned>(d, m[v]);
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, total_degree(m));
        return d;
    }
    bool involves(std::size_t v) const {
        for (const auto& [m, c] : t_)
            if (m[v]) return true;
        return false;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(*a.f_, a.vars_);
        Monomial m(a.vars_.size());
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                for (std::size_t i = 0; i < m.size(); ++i) {
                    unsigned e = unsigned{ma[i]} + mb[i];
                    if (e > 0xffff) throw DomainError("exponent overflow");
                    m[i] = static_cast<std::uint16_t>(e);
                }
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(MultiPoly a, const Fq& s) {
        if (s.is_zero()) return a.zero_like();
        for (auto& [m, c] : a.t_) c *= s;
        return a;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.f_ == b.f_ && a.vars_ == b.vars_ && a.t_ == b.t_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Exponents scaled by p and coefficients raised to the p-th power: the
    // p-th power of the polynomial in characteristic p.
    MultiPoly frobenius_power() const {
        const unsigned p = f_->p();
        MultiPoly r(*f_, vars_);
        for (const auto& [m, c] : t_) {
            Monomial mm = m;
            for (auto& e : mm) {
                unsigned s = unsigned{e} * p;
                if (s > 0xffff) throw DomainError("exponent overflow");
                e = static_cast<std::uint16_t>(s);
            }
            r.t_.emplace(std::move(mm), c.frobenius(1));
        }
        return r;
    }

    // Base-p digits of e: g^e = prod_i (g^(d_i))^(p^i).
    MultiPoly pow(unsigned e) const {
        const unsigned p = f_->p();
        MultiPoly result = one_like();
        MultiPoly base = *this;
        while (e) {
            unsigned d = e % p;
            if (d) result *= base.pow_plain(d);
            e /= p;
            if (e) base = base.frobenius_power();
        }
        return result;
    }

    MultiPoly derivative(std::size_t v) const {
        MultiPoly r(*f_, vars_);
        for (const auto& [m, c] : t_) {
            if (!m[v]) continue;
            Fq cc = c.scaled(m[v] % f_->p());
            if (cc.is_zero()) continue;
            Monomial mm = m;
            --mm[v];
            r.t_.emplace(std::move(mm), cc);
        }
        return r;
    }
    MultiPoly derivative(const std::string& v) const { return derivative(var_index(v)); }

    // Replaces variable v by h (same ring).
    MultiPoly substitute(std::size_t v, const MultiPoly& h) const {
        check(h);
        const unsigned dmax = degree_in(v);
        std::vector<MultiPoly> powers{one_like()};
        for (unsigned i = 1; i <= dmax; ++i) powers.push_back(powers.back() * h);
        MultiPoly r(*f_, vars_);
        for (const auto& [m, c] : t_) {
            Monomial mm = m;
            unsigned e = mm[v];
            mm[v] = 0;
            MultiPoly term(*f_, vars_);
            term.add_term(mm, c);
            r += term * powers[e];
        }
        return r;
    }
    MultiPoly substitute(const std::string& v, const MultiPoly& h) const { return substitute(var_index(v), h); }

    // Simultaneous substitution of every variable (compose with a map).
    MultiPoly compose(const std::vector<MultiPoly>& images) const {
        if (images.size() != vars_.size()) throw DomainError("compose arity mismatch");
        if (t_.empty()) return images.empty() ? *this : images[0].zero_like();
        MultiPoly r = images[0].zero_like();
        std::vector<std::vector<MultiPoly>> pw(vars_.size());
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            pw[v].push_back(r.one_like());
            const unsigned d = degree_in(v);
            for (unsigned i = 1; i <= d; ++i) pw[v].push_back(pw[v].back() * images[v]);
        }
        for (const auto& [m, c] : t_) {
            MultiPoly term = r.constant_like(c);
            for (std::size_t v = 0; v < m.size(); ++v)
                if (m[v]) term *= pw[v][m[v]];
            r += term;
        }
        return r;
    }

    Fq evaluate(const std::vector<Fq>& point) const {
        if (point.size() != vars_.size()) throw DomainError("evaluation arity mismatch");
        const FieldDescriptor& tf = point.empty() ? *f_ : point[0].field();
        Fq r = Fq::zero(tf);
        for (const auto& [m, c] : t_) {
            if (c.field_ptr() != &tf) throw DomainError("evaluation point in a different field");
            Fq term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) term *= point[i].pow(m[i]);
            r += term;
        }
        return r;
    }

    template <class F>
    MultiPoly map_coefficients(const FieldDescriptor& to, F&& fn) const {
        MultiPoly r(to, vars_);
        for (const auto& [m, c] : t_) r.add_term(m, fn(c));
        return r;
    }

    // The polynomial as a univariate in variable v; every other exponent
    // must be zero.
    UPoly to_upoly(std::size_t v) const {
        std::vector<Fq> c(degree_in(v) + 1, Fq::zero(*f_));
        for (const auto& [m, cf] : t_) {
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != v && m[i]) throw DomainError("polynomial is not univariate in " + vars_[v]);
            c[m[v]] = cf;
        }
        return UPoly(*f_, std::move(c));
    }
    static MultiPoly from_upoly(const UPoly& u, std::vector<std::string> vars, std::size_t v) {
        MultiPoly r(u.field(), std::move(vars));
        Monomial m(r.vars_.size(), 0);
        for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
            m[v] = static_cast<std::uint16_t>(i);
            r.add_term(m, u.coeffs()[i]);
        }
        return r;
    }

    // Printed highest term first in the grlex order.
    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string cs = c.to_string();
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            if (!out.empty()) out += "+";
            if (mono.empty())
                out += cs;
            else if (c.is_one())
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

    static unsigned total_degree(const Monomial& m) {
        unsigned d = 0;
        for (auto e : m) d += e;
        return d;
    }

  private:
    MultiPoly pow_plain(unsigned e) const {
        MultiPoly r = one_like(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }
    void check(const MultiPoly& o) const {
        if (f_ != o.f_) throw DomainError("mixed-field polynomial arithmetic");
        if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
    }

    const FieldDescriptor* f_ = nullptr;
    std::vector<std::string> vars_;
    Terms t_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& f) { return os << f.to_string(); }

}  // namespace asnum

#endif
