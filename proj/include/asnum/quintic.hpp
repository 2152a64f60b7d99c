#ifndef ASNUM_QUINTIC_HPP
#define ASNUM_QUINTIC_HPP

// Plane quintic models of trigonal genus-5 curves with one double point at
// (0:0:1): normal forms for p = 2 and p = 3, Hasse-Witt matrices from the
// coefficients of F^(p-1), and the validity filter (no singular point other
// than (0:0:1)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "gf_table.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "resultant.hpp"
#include "upoly.hpp"

namespace asnum {

enum class QuinticVariant { NodeB0, NodeZero, CuspP2, NodeP3, CuspP3 };

inline const std::vector<QuinticVariant>& all_quintic_variants() {
    static const std::vector<QuinticVariant> v{QuinticVariant::NodeB0, QuinticVariant::NodeZero, QuinticVariant::CuspP2,
                                               QuinticVariant::NodeP3, QuinticVariant::CuspP3};
    return v;
}

inline std::string variant_name(QuinticVariant v) {
    switch (v) {
        case QuinticVariant::NodeB0: return "node-b0";
        case QuinticVariant::NodeZero: return "node-zero";
        case QuinticVariant::CuspP2: return "cusp-p2";
        case QuinticVariant::NodeP3: return "node-p3";
        case QuinticVariant::CuspP3: return "cusp-p3";
    }
    return "";
}

inline QuinticVariant parse_variant(const std::string& s) {
    for (auto v : all_quintic_variants())
        if (variant_name(v) == s) return v;
    throw DomainError("unknown quintic variant '" + s + "'");
}

inline unsigned variant_characteristic(QuinticVariant v) {
    return v == QuinticVariant::NodeP3 || v == QuinticVariant::CuspP3 ? 3 : 2;
}

inline bool variant_is_cusp(QuinticVariant v) { return v == QuinticVariant::CuspP2 || v == QuinticVariant::CuspP3; }

using Exponent3 = std::array<unsigned, 3>;

struct TemplateMonomial {
    std::string name;
    Exponent3 e;
};

struct QuinticTemplate {
    std::vector<Exponent3> fixed;
    std::vector<TemplateMonomial> params;
};

inline const QuinticTemplate& quintic_template(QuinticVariant v) {
    static const std::map<QuinticVariant, QuinticTemplate> table = [] {
        auto a = [](unsigned i) -> TemplateMonomial {
            std::string n = "a" + std::to_string(i);
            if (i <= 5) return {n, {5 - i, i - 1, 1}};
            return {n, {11 - i, i - 6, 0}};
        };
        auto as = [&](std::initializer_list<unsigned> idx) {
            std::vector<TemplateMonomial> out;
            for (unsigned i : idx) out.push_back(a(i));
            return out;
        };
        const Exponent3 node{1, 1, 3}, cusp{2, 0, 3};
        std::map<QuinticVariant, QuinticTemplate> t;
        auto all = as({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
        t[QuinticVariant::NodeB0].fixed = {node, {3, 0, 2}};
        t[QuinticVariant::NodeB0].params = {{"b1", {0, 3, 2}}};
        t[QuinticVariant::NodeB0].params.insert(t[QuinticVariant::NodeB0].params.end(), all.begin(), all.end());
        t[QuinticVariant::NodeZero].fixed = {node};
        t[QuinticVariant::NodeZero].params = all;
        t[QuinticVariant::CuspP2].fixed = {cusp, {0, 3, 2}};
        t[QuinticVariant::CuspP2].params = all;
        t[QuinticVariant::NodeP3].fixed = {node};
        t[QuinticVariant::NodeP3].params = {{"b0", {3, 0, 2}}, {"b1", {0, 3, 2}}, {"b2", {2, 1, 2}}, {"b3", {1, 2, 2}}};
        for (auto& m : as({1, 2, 3, 4, 5, 6, 8, 9, 11})) t[QuinticVariant::NodeP3].params.push_back(m);
        t[QuinticVariant::CuspP3].fixed = {cusp, {0, 3, 2}};
        t[QuinticVariant::CuspP3].params = {{"b2", {2, 1, 2}}, {"b3", {1, 2, 2}}};
        for (auto& m : as({1, 2, 3, 4, 5, 7, 8, 10, 11})) t[QuinticVariant::CuspP3].params.push_back(m);
        return t;
    }();
    return table.at(v);
}

inline std::vector<std::string> coefficient_names(QuinticVariant v) {
    std::vector<std::string> out;
    for (const auto& m : quintic_template(v).params) out.push_back(m.name);
    return out;
}

inline const std::vector<std::string>& xyz_vars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}

inline Monomial monomial3(const Exponent3& e) {
    return Monomial{static_cast<std::uint16_t>(e[0]), static_cast<std::uint16_t>(e[1]), static_cast<std::uint16_t>(e[2])};
}

struct QuinticModel {
    unsigned p = 0;
    const FieldDescriptor* field = nullptr;
    QuinticVariant variant = QuinticVariant::NodeB0;
    std::vector<Fq> coefficients;
    MultiPoly F;

    std::vector<std::string> names() const { return coefficient_names(variant); }
};

inline QuinticModel build_quintic(unsigned p, const FieldDescriptor& f, QuinticVariant v, const std::vector<Fq>& coefficients) {
    require(f.p() == p, "field characteristic differs from p");
    require(variant_characteristic(v) == p,
            "variant " + variant_name(v) + " needs characteristic " + std::to_string(variant_characteristic(v)));
    const QuinticTemplate& t = quintic_template(v);
    require(coefficients.size() == t.params.size(), "variant " + variant_name(v) + " takes " +
                                                        std::to_string(t.params.size()) + " coefficients");
    QuinticModel m;
    m.p = p;
    m.field = &f;
    m.variant = v;
    m.coefficients = coefficients;
    m.F = MultiPoly(f, xyz_vars());
    for (const auto& e : t.fixed) m.F.add_term(monomial3(e), Fq::one(f));
    for (std::size_t i = 0; i < t.params.size(); ++i) {
        require(coefficients[i].field_ptr() == &f, "coefficient from a different field");
        m.F.add_term(monomial3(t.params[i].e), coefficients[i]);
    }
    return m;
}

// Coefficients by name; names not given default to zero.
inline QuinticModel build_quintic(unsigned p, const FieldDescriptor& f, QuinticVariant v,
                                  const std::map<std::string, Fq>& assignments) {
    std::vector<std::string> names = coefficient_names(v);
    std::vector<Fq> c(names.size(), Fq::zero(f));
    for (const auto& [name, value] : assignments) {
        auto it = std::find(names.begin(), names.end(), name);
        require(it != names.end(), "variant " + variant_name(v) + " has no coefficient " + name);
        c[static_cast<std::size_t>(it - names.begin())] = value;
    }
    return build_quintic(p, f, v, c);
}

// F with the template coefficients as extra variables over F_p.
inline MultiPoly symbolic_quintic(QuinticVariant v) {
    const QuinticTemplate& t = quintic_template(v);
    const FieldDescriptor& fp = field(variant_characteristic(v), 1);
    std::vector<std::string> vars = xyz_vars();
    for (const auto& m : t.params) vars.push_back(m.name);
    MultiPoly F(fp, vars);
    for (const auto& e : t.fixed) {
        Monomial mm(vars.size(), 0);
        for (int i = 0; i < 3; ++i) mm[i] = static_cast<std::uint16_t>(e[i]);
        F.add_term(mm, Fq::one(fp));
    }
    for (std::size_t i = 0; i < t.params.size(); ++i) {
        Monomial mm(vars.size(), 0);
        for (int j = 0; j < 3; ++j) mm[j] = static_cast<std::uint16_t>(t.params[i].e[j]);
        mm[3 + i] = 1;
        F.add_term(mm, Fq::one(fp));
    }
    return F;
}

// The index table (i_l, j_l, k_l) for l = 1..5.
inline const std::array<Exponent3, 5>& hasse_witt_indices() {
    static const std::array<Exponent3, 5> t{{{3, 1, 1}, {1, 3, 1}, {2, 2, 1}, {2, 1, 2}, {1, 2, 2}}};
    return t;
}

// Exponent of x, y, z for entry (l, m), or nullopt when one is negative.
inline std::optional<Monomial> hasse_witt_monomial(unsigned p, std::size_t l, std::size_t m) {
    const auto& t = hasse_witt_indices();
    Monomial out(3);
    for (int v = 0; v < 3; ++v) {
        int e = static_cast<int>(p * t[l][v]) - static_cast<int>(t[m][v]);
        if (e < 0) return std::nullopt;
        out[v] = static_cast<std::uint16_t>(e);
    }
    return out;
}

struct SymbolicHasseWitt {
    std::vector<std::string> params;
    std::vector<std::vector<MultiPoly>> h;  // 5 x 5, polynomials in params over F_p
};

inline SymbolicHasseWitt hasse_witt_symbolic(QuinticVariant v) {
    const unsigned p = variant_characteristic(v);
    MultiPoly G = symbolic_quintic(v).pow(p - 1);
    SymbolicHasseWitt out;
    out.params = coefficient_names(v);
    MultiPoly zero(field(p, 1), out.params);
    out.h.assign(5, std::vector<MultiPoly>(5, zero));
    for (std::size_t l = 0; l < 5; ++l)
        for (std::size_t m = 0; m < 5; ++m)
            if (auto mono = hasse_witt_monomial(p, l, m)) out.h[l][m] = G.coefficient_in(*mono);
    return out;
}

inline Matrix hasse_witt(const QuinticModel& model) {
    MultiPoly G = model.F.pow(model.p - 1);
    Matrix h(*model.field, 5, 5);
    for (std::size_t l = 0; l < 5; ++l)
        for (std::size_t m = 0; m < 5; ++m)
            if (auto mono = hasse_witt_monomial(model.p, l, m)) h(l, m) = G.coefficient_of(*mono);
    return h;
}

// Rank of H H^(p) ... H^(p^4): the stable rank of the p-linear Hasse-Witt map.
inline unsigned quintic_p_rank(const QuinticModel& model) {
    Matrix h = hasse_witt(model);
    Matrix prod = h;
    for (long long e = 1; e < 5; ++e) prod = prod * h.twist(e);
    return static_cast<unsigned>(prod.rank());
}

// Hasse-Witt entries compiled to term lists for table evaluation in scans.
class CompiledHasseWitt {
  public:
    CompiledHasseWitt(QuinticVariant v, const GfTable& table) : table_(&table) {
        require(table.field().p() == variant_characteristic(v), "table field has the wrong characteristic");
        SymbolicHasseWitt s = hasse_witt_symbolic(v);
        nparams_ = s.params.size();
        for (std::size_t l = 0; l < 5; ++l)
            for (std::size_t m = 0; m < 5; ++m)
                for (const auto& [mono, c] : s.h[l][m].terms()) {
                    Term t;
                    t.c = static_cast<std::uint8_t>(c.coeff(0));
                    for (std::size_t i = 0; i < mono.size(); ++i)
                        if (mono[i]) t.factors.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(mono[i])});
                    entries_[l * 5 + m].push_back(t);
                }
    }

    std::size_t parameter_count() const noexcept { return nparams_; }

    // coeffs: table indices in template order; out: 25 entries row-major.
    void evaluate(const std::uint8_t* coeffs, std::uint8_t* out) const {
        const GfTable& t = *table_;
        for (std::size_t e = 0; e < 25; ++e) {
            std::uint8_t acc = 0;
            for (const auto& term : entries_[e]) {
                std::uint8_t v = term.c;
                for (auto [var, ex] : term.factors) v = t.mul(v, t.pow(coeffs[var], ex));
                acc = t.add(acc, v);
            }
            out[e] = acc;
        }
    }

    std::size_t rank(const std::uint8_t* coeffs) const {
        std::uint8_t buf[25];
        evaluate(coeffs, buf);
        return table_->rank(buf, 5, 5);
    }

  private:
    struct Term {
        std::uint8_t c = 0;
        std::vector<std::pair<std::uint8_t, std::uint8_t>> factors;
    };
    const GfTable* table_;
    std::size_t nparams_ = 0;
    std::array<std::vector<Term>, 25> entries_;
};

// A closed point of P^2 over the base field F_q: coordinates over F_{q^e},
// normalized so that the first nonzero coordinate is 1.
struct ProjectivePoint {
    unsigned degree = 1;
    std::array<Fq, 3> coords;

    std::string to_string() const {
        return "(" + coords[0].to_string() + ":" + coords[1].to_string() + ":" + coords[2].to_string() + ")";
    }
    bool is_origin_chart_point() const { return coords[0].is_zero() && coords[1].is_zero(); }
};

enum class Certificate { ResultantComplete, EnumerationBounded };

struct SingularLocusReport {
    std::vector<ProjectivePoint> points;
    Certificate certificate = Certificate::ResultantComplete;
    unsigned k_max = 0;  // degrees enumerated when enumeration-bounded
    std::string note;

    std::string certificate_name() const {
        return certificate == Certificate::ResultantComplete ? "resultant-complete"
                                                             : "enumeration-bounded(" + std::to_string(k_max) + ")";
    }
};

struct SingularLocusOptions {
    unsigned k_max = 6;
    // Enumeration fallback stops once this many closed points are found (0: never).
    std::size_t stop_after = 0;
};

namespace detail {

inline bool field_fits(unsigned p, unsigned k) {
    if (k == 0 || k > kMaxDegree) return false;
    long double q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    return q < static_cast<long double>(kMaxFieldOrder);
}

inline Fq pow_small(const Fq& a, unsigned e) {
    Fq r = Fq::one(a.field());
    for (unsigned i = 0; i < e; ++i) r *= a;
    return r;
}

// Polynomial in z obtained from a form in x, y, z at x = X, y = Y.
inline UPoly z_slice(const MultiPoly& g, const Fq& X, const Fq& Y, const Embedding* emb) {
    const FieldDescriptor& L = X.field();
    std::vector<Fq> c(g.degree_in(2) + 1, Fq::zero(L));
    for (const auto& [m, cf] : g.terms()) {
        Fq v = emb ? (*emb)(cf) : cf;
        c[m[2]] += v * pow_small(X, m[0]) * pow_small(Y, m[1]);
    }
    return UPoly(L, std::move(c));
}

inline std::optional<UPoly> gcd_nonzero(const std::vector<UPoly>& v) {
    std::optional<UPoly> g;
    for (const auto& a : v) {
        if (a.is_zero()) continue;
        g = g ? UPoly::gcd(*g, a) : a.monic();
    }
    return g;
}

// Form at x = 1 as a polynomial in z with coefficients in F_q[y].
inline BiPoly chart_x1(const MultiPoly& g) {
    const FieldDescriptor& K = g.field();
    BiPoly out(g.degree_in(2) + 1, UPoly(K));
    for (const auto& [m, cf] : g.terms()) out[m[2]] += UPoly::monomial(cf, m[1]);
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

inline bool point_is_singular(const std::vector<MultiPoly>& system, const std::array<Fq, 3>& pt, const Embedding& emb) {
    for (const auto& g : system) {
        Fq v = Fq::zero(pt[0].field());
        for (const auto& [m, cf] : g.terms()) v += emb(cf) * pow_small(pt[0], m[0]) * pow_small(pt[1], m[1]) * pow_small(pt[2], m[2]);
        if (!v.is_zero()) return false;
    }
    return true;
}

// Size of the orbit of a tuple under a -> a^q.
inline unsigned orbit_size(const std::array<Fq, 3>& pt, unsigned k) {
    std::array<Fq, 3> cur = pt;
    unsigned n = 0;
    do {
        for (auto& c : cur) c = c.frobenius(k);
        ++n;
    } while (cur != pt);
    return n;
}

inline bool orbit_minimal(const std::array<Fq, 3>& pt, unsigned k) {
    std::array<Fq, 3> cur = pt;
    for (;;) {
        for (auto& c : cur) c = c.frobenius(k);
        if (cur == pt) return true;
        if (cur < pt) return false;
    }
}

struct Degenerate {};

inline std::vector<ProjectivePoint> solve_resultant(const MultiPoly& F, const std::vector<MultiPoly>& system) {
    const FieldDescriptor& K = F.field();
    const unsigned p = K.p(), k = K.k();
    std::vector<ProjectivePoint> out;

    // Chart x = 1.
    std::vector<BiPoly> gs;
    std::vector<const MultiPoly*> forms;
    for (const auto& g : system) {
        BiPoly b = chart_x1(g);
        if (b.empty()) continue;
        gs.push_back(b);
        forms.push_back(&g);
    }
    std::optional<UPoly> R;
    auto constrain = [&](const UPoly& c) {
        if (c.is_zero()) return;
        R = R ? UPoly::gcd(*R, c) : c.monic();
    };
    for (const auto& b : gs)
        if (b.size() == 1) constrain(b[0]);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            if (gs[i].size() > 1 && gs[j].size() > 1) constrain(resultant(gs[i], gs[j], K));
    if (!R) throw Degenerate{};
    if (R->degree() > 0) {
        for (const auto& fc : factor(*R)) {
            const unsigned e = static_cast<unsigned>(fc.poly.degree());
            if (!field_fits(p, k * e)) throw Degenerate{};
            const FieldDescriptor& L = field(p, k * e);
            Embedding emb(K, L);
            const Fq eta = roots(emb(fc.poly)).front();
            std::vector<UPoly> slices;
            for (const auto* g : forms) slices.push_back(z_slice(*g, Fq::one(L), eta, &emb));
            auto gz = gcd_nonzero(slices);
            if (!gz) throw Degenerate{};
            if (gz->degree() <= 0) continue;
            for (const auto& fz : factor(*gz)) {
                const unsigned e2 = static_cast<unsigned>(fz.poly.degree());
                if (!field_fits(p, k * e * e2)) throw Degenerate{};
                const FieldDescriptor& M = field(p, k * e * e2);
                Embedding emb2(L, M);
                ProjectivePoint pt;
                pt.degree = e * e2;
                pt.coords = {Fq::one(M), emb2(eta), roots(emb2(fz.poly)).front()};
                out.push_back(pt);
            }
        }
    }

    // Chart x = 0, y = 1.
    {
        std::vector<UPoly> slices;
        for (const auto& g : system) slices.push_back(z_slice(g, Fq::zero(K), Fq::one(K), nullptr));
        auto gz = gcd_nonzero(slices);
        if (!gz) throw Degenerate{};
        if (gz->degree() > 0) {
            for (const auto& fz : factor(*gz)) {
                const unsigned e = static_cast<unsigned>(fz.poly.degree());
                if (!field_fits(p, k * e)) throw Degenerate{};
                const FieldDescriptor& M = field(p, k * e);
                Embedding emb(K, M);
                ProjectivePoint pt;
                pt.degree = e;
                pt.coords = {Fq::zero(M), Fq::one(M), roots(emb(fz.poly)).front()};
                out.push_back(pt);
            }
        }
    }

    // The point (0:0:1).
    {
        bool all = true;
        for (const auto& g : system) all = all && g.coefficient_of(Monomial{0, 0, static_cast<std::uint16_t>(g.total_degree())}).is_zero();
        if (all) out.push_back({1, {Fq::zero(K), Fq::zero(K), Fq::one(K)}});
    }
    return out;
}

inline std::vector<ProjectivePoint> solve_enumeration(const std::vector<MultiPoly>& system, const FieldDescriptor& K,
                                                      unsigned k_max, std::size_t stop_after, unsigned& reached) {
    const unsigned p = K.p(), k = K.k();
    std::vector<ProjectivePoint> out;
    reached = 0;
    for (unsigned kk = 1; kk <= k_max; ++kk) {
        if (!field_fits(p, k * kk)) break;
        const FieldDescriptor& L = field(p, k * kk);
        if (L.order() > (std::uint64_t{1} << 22)) break;
        Embedding emb(K, L);
        auto record = [&](const std::array<Fq, 3>& pt) {
            if (orbit_size(pt, k) != kk || !orbit_minimal(pt, k)) return;
            ensure(point_is_singular(system, pt, emb), "enumerated point fails the singularity check");
            out.push_back({kk, pt});
        };
        auto scan_line = [&](const Fq& X, const Fq& Y) {
            std::vector<UPoly> slices;
            for (const auto& g : system) slices.push_back(z_slice(g, X, Y, &emb));
            auto gz = gcd_nonzero(slices);
            if (!gz) {
                Fq z = Fq::zero(L);
                do record({X, Y, z});
                while (next_element(z) && !(stop_after && out.size() >= stop_after));
                return;
            }
            for (const auto& z : roots(*gz)) record({X, Y, z});
        };
        Fq y = Fq::zero(L);
        do {
            scan_line(Fq::one(L), y);
            if (stop_after && out.size() >= stop_after) break;
        } while (next_element(y));
        if (!(stop_after && out.size() >= stop_after)) scan_line(Fq::zero(L), Fq::one(L));
        if (kk == 1) {
            std::array<Fq, 3> o{Fq::zero(L), Fq::zero(L), Fq::one(L)};
            if (point_is_singular(system, o, emb)) out.push_back({1, o});
        }
        reached = kk;
        if (stop_after && out.size() >= stop_after) break;
    }
    return out;
}

}  // namespace detail

// Singular points of F = 0 in P^2 over the algebraic closure: the common
// zeros of F_x, F_y, F_z (F itself is implied by the Euler relation).
inline SingularLocusReport singular_locus(const MultiPoly& F, SingularLocusOptions opt = {}) {
    require(opt.k_max >= 1, "k_max must be at least 1");
    require(F.vars() == xyz_vars(), "singular_locus expects a form in x, y, z");
    const FieldDescriptor& K = F.field();
    const unsigned deg = F.total_degree();
    require(deg % K.p() != 0, "the Euler relation needs a degree prime to p");
    std::vector<MultiPoly> system;
    for (std::size_t v = 0; v < 3; ++v) {
        MultiPoly d = F.derivative(v);
        if (!d.is_zero()) system.push_back(d);
    }
    SingularLocusReport rep;
    try {
        rep.points = detail::solve_resultant(F, system);
        rep.certificate = Certificate::ResultantComplete;
    } catch (const detail::Degenerate&) {
        unsigned reached = 0;
        rep.points = detail::solve_enumeration(system, K, opt.k_max, opt.stop_after, reached);
        rep.certificate = Certificate::EnumerationBounded;
        rep.k_max = reached;
        rep.note = "elimination degenerate; singular points enumerated over extensions of degree <= " + std::to_string(reached);
    }
    for (const auto& pt : rep.points) {
        Embedding emb(K, pt.coords[0].field());
        ensure(detail::point_is_singular(system, pt.coords, emb), "reported point is not singular: " + pt.to_string());
    }
    return rep;
}

inline SingularLocusReport singular_locus(const QuinticModel& m, SingularLocusOptions opt = {}) {
    return singular_locus(m.F, opt);
}

struct ValidityResult {
    bool valid = false;
    std::string reason;
    SingularLocusReport locus;
};

// Valid iff the only singular point is (0:0:1). An enumeration-bounded
// certificate with no extra point counts as valid only when permissive.
inline ValidityResult is_valid_trigonal_model(const QuinticModel& m, unsigned k_max = 6, bool permissive = false) {
    ValidityResult r;
    SingularLocusOptions opt;
    opt.k_max = k_max;
    opt.stop_after = 2;
    r.locus = singular_locus(m, opt);
    const auto& pts = r.locus.points;
    auto extra = std::find_if(pts.begin(), pts.end(), [](const ProjectivePoint& q) { return !q.is_origin_chart_point(); });
    const bool has_origin = std::any_of(pts.begin(), pts.end(), [](const ProjectivePoint& q) { return q.is_origin_chart_point(); });
    ensure(has_origin || r.locus.certificate == Certificate::EnumerationBounded, "template point (0:0:1) is not singular");
    if (extra != pts.end()) {
        r.valid = false;
        r.reason = "extra singular point " + extra->to_string() + " of degree " + std::to_string(extra->degree);
        if (r.locus.certificate == Certificate::EnumerationBounded) r.reason += " (elimination degenerate)";
        return r;
    }
    if (r.locus.certificate == Certificate::EnumerationBounded) {
        r.valid = permissive;
        r.reason = permissive ? "accepted with enumeration-bounded certificate" : "elimination degenerate; no extra point up to degree " +
                                                                                    std::to_string(r.locus.k_max);
        return r;
    }
    r.valid = true;
    r.reason = "unique singular point (0:0:1)";
    return r;
}

inline unsigned a_number_quintic(const QuinticModel& m, unsigned k_max = 6) {
    ValidityResult v = is_valid_trigonal_model(m, k_max);
    require(v.valid, "invalid quintic model: " + v.reason);
    return 5 - static_cast<unsigned>(hasse_witt(m).rank());
}

// A root needed by a normalization step lies only in a proper extension.
class ExtensionRequired : public DomainError {
  public:
    ExtensionRequired(unsigned degree, const std::string& what) : DomainError(what), degree_(degree) {}
    unsigned degree() const noexcept { return degree_; }

  private:
    unsigned degree_;
};

// The normalized form equals scale * F(m * (x, y, z)).
struct QuinticTransform {
    Matrix m;
    Fq scale;
    std::vector<std::string> steps;
};

struct NormalizedQuintic {
    QuinticVariant variant;
    std::vector<Fq> coefficients;
    QuinticTransform transform;
};

inline MultiPoly apply_linear(const MultiPoly& F, const Matrix& a) {
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < 3; ++i) {
        MultiPoly img(F.field(), xyz_vars());
        for (std::size_t j = 0; j < 3; ++j) img.add_term(monomial3({j == 0, j == 1, j == 2}), a(i, j));
        images.push_back(img);
    }
    return F.compose(images);
}

inline MultiPoly apply_transform(const MultiPoly& F, const QuinticTransform& t) {
    return apply_linear(F, t.m) * t.scale;
}

namespace detail {

struct NormalizationState {
    MultiPoly F;
    Matrix m;
    Fq scale;
    std::vector<std::string> steps;

    Fq coef(unsigned ex, unsigned ey, unsigned ez) const { return F.coefficient_of(monomial3({ex, ey, ez})); }
    void substitute(const Matrix& a, const std::string& what) {
        if (a == Matrix::identity(a.field(), 3)) return;
        F = apply_linear(F, a);
        m = m * a;
        steps.push_back(what);
    }
    void rescale(const Fq& c) {
        F = F * c;
        scale *= c;
    }
};

inline Matrix elementary(const FieldDescriptor& K, std::initializer_list<std::tuple<int, int, Fq>> entries) {
    Matrix a = Matrix::identity(K, 3);
    for (const auto& [i, j, v] : entries) a(i, j) = v;
    return a;
}

// Smallest extension degree over which the univariate g has a root.
inline unsigned minimal_root_degree(const UPoly& g) {
    unsigned best = 0;
    for (const auto& fc : factor(g)) {
        unsigned d = static_cast<unsigned>(fc.poly.degree());
        if (d > 0 && (best == 0 || d < best)) best = d;
    }
    return best;
}

// Common zero (s, t) in L of E1, E2 over K (variables s, t), or nullopt.
inline std::optional<std::pair<Fq, Fq>> common_zero(const MultiPoly& E1, const MultiPoly& E2, const FieldDescriptor& L) {
    Embedding emb(E1.field(), L);
    MultiPoly a = E1.map_coefficients(L, [&](const Fq& c) { return emb(c); });
    MultiPoly b = E2.map_coefficients(L, [&](const Fq& c) { return emb(c); });
    auto t_poly = [&](const MultiPoly& g, const Fq& s) {
        MultiPoly sub = g.substitute(0, g.constant_like(s));
        return sub.to_upoly(1);
    };
    auto try_s = [&](const Fq& s) -> std::optional<std::pair<Fq, Fq>> {
        auto g = gcd_nonzero({t_poly(a, s), t_poly(b, s)});
        if (!g) return std::make_pair(s, Fq::zero(L));
        auto r = roots(*g);
        if (r.empty()) return std::nullopt;
        return std::make_pair(s, r.front());
    };
    MultiPoly R = a.is_zero() || b.is_zero() ? (a.is_zero() ? b : a) : resultant(a, b, "t");
    if (!R.is_zero() && R.involves(1)) R = MultiPoly(L, R.vars());
    if (R.is_zero()) {
        if (L.order() > 100000) return std::nullopt;
        Fq s = Fq::zero(L);
        do
            if (auto z = try_s(s)) return z;
        while (next_element(s));
        return std::nullopt;
    }
    for (const auto& s : roots(R.to_upoly(0)))
        if (auto z = try_s(s)) return z;
    return std::nullopt;
}

// Solves for a z-shift z -> z + s x + t y that kills the two monomials.
inline std::pair<Fq, Fq> solve_z_shift(const MultiPoly& F, const Exponent3& m1, const Exponent3& m2) {
    const FieldDescriptor& K = F.field();
    std::vector<std::string> vars{"x", "y", "z", "s", "t"};
    MultiPoly G(K, vars);
    for (const auto& [m, c] : F.terms()) G.add_term(Monomial{m[0], m[1], m[2], 0, 0}, c);
    MultiPoly x = G.var_like("x"), y = G.var_like("y"), z = G.var_like("z"), s = G.var_like("s"), t = G.var_like("t");
    MultiPoly S = G.substitute(2, z + s * x + t * y);
    std::vector<std::string> st{"s", "t"};
    auto extract = [&](const Exponent3& e) {
        MultiPoly c = S.coefficient_in(monomial3(e));
        return c;
    };
    MultiPoly E1 = extract(m1), E2 = extract(m2);
    ensure(E1.vars() == st, "unexpected variable list after extraction");
    if (auto r = common_zero(E1, E2, K)) return *r;
    // Two plane cubics without common points at infinity meet in 9 points.
    for (unsigned e = 2; e <= 9; ++e) {
        if (!field_fits(K.p(), K.k() * e)) break;
        if (common_zero(E1, E2, field(K.p(), K.k() * e)))
            throw ExtensionRequired(e, "the coordinate shift needs an extension of degree " + std::to_string(e));
    }
    throw DomainError("no coordinate shift found over extensions of degree <= 9");
}

}  // namespace detail

inline NormalizedQuintic normalize_quintic(unsigned p, const MultiPoly& F) {
    require(p == 2 || p == 3, "quintic normal forms exist for p = 2 and p = 3 only");
    require(F.field().p() == p, "field characteristic differs from p");
    require(F.vars() == xyz_vars(), "normalize_quintic expects a form in x, y, z");
    for (const auto& [m, c] : F.terms()) require(MultiPoly::total_degree(m) == 5, "F is not a quintic form");
    const FieldDescriptor& K = F.field();
    const Fq zero = Fq::zero(K), one = Fq::one(K);
    detail::NormalizationState st{F, Matrix::identity(K, 3), one, {}};

    for (const auto& [m, c] : F.terms())
        require(m[2] < 4, "multiplicity at (0:0:1) is below 2");
    const Fq qa = st.coef(2, 0, 3), qb = st.coef(1, 1, 3), qc = st.coef(0, 2, 3);
    require(!(qa.is_zero() && qb.is_zero() && qc.is_zero()), "multiplicity at (0:0:1) exceeds 2");
    const Fq disc = qb * qb - Fq(K, 4) * qa * qc;
    const bool node = !disc.is_zero();

    if (node) {
        if (qa.is_zero()) {
            Fq ib = qb.inv();
            st.substitute(detail::elementary(K, {{0, 0, ib}, {0, 1, -qc * ib}}), "x -> (x - c y)/b");
        } else if (qc.is_zero()) {
            Fq ib = qb.inv();
            st.substitute(detail::elementary(K, {{1, 0, -qa * ib}, {1, 1, ib}}), "y -> (y - a x)/b");
        } else {
            UPoly qt(K, {qc, qb, qa});
            auto r = roots(qt);
            if (r.size() < 2) throw ExtensionRequired(2, "the node's tangent lines are defined over a quadratic extension");
            const Fq r1 = r[0], r2 = r[1];
            const Fq d = (r2 - r1).inv(), ia = qa.inv();
            st.substitute(detail::elementary(K, {{0, 0, one + r1 * d}, {0, 1, -r1 * d * ia}, {1, 0, d}, {1, 1, -d * ia}}),
                          "split the tangent cone into x y");
        }
        const Fq c = st.coef(1, 1, 3);
        ensure(!c.is_zero() && st.coef(2, 0, 3).is_zero() && st.coef(0, 2, 3).is_zero(), "tangent cone is not x y");
        st.rescale(c.inv());
    } else {
        if (qa.is_zero()) {
            st.substitute(detail::elementary(K, {{0, 0, zero}, {0, 1, one}, {1, 0, one}, {1, 1, zero}}), "swap x and y");
        } else {
            Fq s = p == 2 ? (qc * qa.inv()).frobenius(-1) : qb * (Fq(K, 2) * qa).inv();
            st.substitute(detail::elementary(K, {{0, 1, -s}}), "x -> x - s y");
        }
        const Fq c = st.coef(2, 0, 3);
        ensure(!c.is_zero() && st.coef(1, 1, 3).is_zero() && st.coef(0, 2, 3).is_zero(), "tangent cone is not x^2");
        st.rescale(c.inv());
    }

    const Fq inv3 = p == 3 ? zero : Fq(K, 3).inv();
    QuinticVariant variant;
    if (p == 2 && node) {
        const Fq s = -st.coef(2, 1, 2) * inv3, t = -st.coef(1, 2, 2) * inv3;
        st.substitute(detail::elementary(K, {{2, 0, s}, {2, 1, t}}), "z -> z + s x + t y");
        if (st.coef(3, 0, 2).is_zero() && !st.coef(0, 3, 2).is_zero())
            st.substitute(detail::elementary(K, {{0, 0, zero}, {0, 1, one}, {1, 0, one}, {1, 1, zero}}), "swap x and y");
        const Fq b0 = st.coef(3, 0, 2);
        if (!b0.is_zero()) {
            if (!b0.is_one()) {
                st.substitute(detail::elementary(K, {{1, 1, b0}}), "y -> b0 y");
                st.rescale(b0.inv());
            }
            variant = QuinticVariant::NodeB0;
        } else {
            variant = QuinticVariant::NodeZero;
        }
    } else if (p == 2) {
        const Fq c03 = st.coef(0, 3, 2);
        require(!c03.is_zero(), "cusp with vanishing y^3 z^2 coefficient");
        const Fq g = -st.coef(1, 2, 2) * (Fq(K, 3) * c03).inv();
        if (!g.is_zero()) st.substitute(detail::elementary(K, {{1, 0, g}}), "y -> y + g x");
        const Fq s = -st.coef(3, 0, 2) * inv3, t = -st.coef(2, 1, 2) * inv3;
        if (!s.is_zero() || !t.is_zero()) st.substitute(detail::elementary(K, {{2, 0, s}, {2, 1, t}}), "z -> z + s x + t y");
        const Fq c = st.coef(0, 3, 2);
        if (!c.is_one()) {
            st.substitute(detail::elementary(K, {{2, 2, c}}), "z -> c z");
            st.rescale((c * c * c).inv());
        }
        variant = QuinticVariant::CuspP2;
    } else if (node) {
        if (!st.coef(4, 1, 0).is_zero() || !st.coef(1, 4, 0).is_zero()) {
            auto [s, t] = detail::solve_z_shift(st.F, {4, 1, 0}, {1, 4, 0});
            st.substitute(detail::elementary(K, {{2, 0, s}, {2, 1, t}}), "z -> z + s x + t y");
        }
        variant = QuinticVariant::NodeP3;
    } else {
        const Fq c03 = st.coef(0, 3, 2);
        require(!c03.is_zero(), "cusp with vanishing y^3 z^2 coefficient");
        if (!st.coef(3, 0, 2).is_zero()) {
            UPoly cub(K, {st.coef(3, 0, 2), st.coef(2, 1, 2), st.coef(1, 2, 2), c03});
            auto r = roots(cub);
            if (r.empty()) {
                unsigned e = detail::minimal_root_degree(cub);
                throw ExtensionRequired(e, "killing x^3 z^2 needs an extension of degree " + std::to_string(e));
            }
            st.substitute(detail::elementary(K, {{1, 0, r.front()}}), "y -> y + g x");
        }
        if (!st.coef(5, 0, 0).is_zero() || !st.coef(2, 3, 0).is_zero()) {
            auto [s, t] = detail::solve_z_shift(st.F, {5, 0, 0}, {2, 3, 0});
            st.substitute(detail::elementary(K, {{2, 0, s}, {2, 1, t}}), "z -> z + s x + t y");
        }
        const Fq c = st.coef(0, 3, 2);
        if (!c.is_one()) {
            st.substitute(detail::elementary(K, {{2, 2, c}}), "z -> c z");
            st.rescale((c * c * c).inv());
        }
        variant = QuinticVariant::CuspP3;
    }

    NormalizedQuintic out;
    out.variant = variant;
    for (const auto& m : quintic_template(variant).params) out.coefficients.push_back(st.coef(m.e[0], m.e[1], m.e[2]));
    QuinticModel built = build_quintic(p, K, variant, out.coefficients);
    if (built.F != st.F) throw HardFault("normal form leaves monomials outside the template: " + (st.F - built.F).to_string());
    out.transform = {st.m, st.scale, st.steps};
    ensure(apply_transform(F, out.transform) == st.F, "normalization transform does not replay");
    return out;
}

}  // namespace asnum

#endif
