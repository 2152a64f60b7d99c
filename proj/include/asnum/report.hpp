#ifndef ASNUM_REPORT_HPP
#define ASNUM_REPORT_HPP

// JSON renderings of curve invariants, de Rham data, quintic models, zeta
// data and bounds.

#include <string>
#include <vector>

#include "json.hpp"

#include "artin_schreier.hpp"
#include "bounds.hpp"
#include "derham.hpp"
#include "matrix.hpp"
#include "quintic.hpp"
#include "zeta.hpp"

namespace asnum {

using json = nlohmann::json;

inline json to_json(const Matrix& m) { return m.to_strings(); }

inline json field_json(const FieldDescriptor& f) { return {{"p", f.p()}, {"k", f.k()}, {"order", f.order()}, {"name", f.name()}}; }

inline json curve_report(const ASCurve& c) {
    const CartierMatrix cm = cartier_matrix(c);
    const unsigned rank = static_cast<unsigned>(cm.m.rank());
    json basis = json::array();
    for (const auto& k : cm.basis) basis.push_back(form_label(k));
    json poles = json::array();
    for (const auto& pt : c.f().poles) poles.push_back(pt.xi.to_string());
    return {{"field", field_json(c.field())},
            {"curve", c.to_string()},
            {"f", c.rational().to_string()},
            {"transforms", c.transforms()},
            {"branch_degrees", c.degrees()},
            {"finite_poles", poles},
            {"genus", c.genus()},
            {"p_rank", p_rank(c)},
            {"p_rank_from_cartier", p_rank_from_cartier(c)},
            {"basis", basis},
            {"cartier_matrix", to_json(cm.m)},
            {"rank", rank},
            {"a_number", c.genus() - rank}};
}

inline json derham_report(const ASCurve& c) {
    DeRhamBasis B = derham_basis(c);
    EOData eo = eo_data(B);
    json filtration = json::array();
    for (const auto& s : eo.filtration) filtration.push_back({s.dim, s.v_dim});
    return {{"field", field_json(c.field())}, {"curve", c.to_string()},      {"genus", c.genus()},     {"basis", B.labels},
            {"V", to_json(eo.v)},             {"F", to_json(eo.f)},         {"gram", to_json(pairing_gram(B))},
            {"filtration", filtration},       {"a_number", eo.a_number},    {"p_rank", eo.p_rank}};
}

inline json locus_json(const SingularLocusReport& r) {
    json pts = json::array();
    for (const auto& pt : r.points) pts.push_back({{"point", pt.to_string()}, {"degree", pt.degree}});
    return {{"points", pts}, {"certificate", r.certificate_name()}, {"k_max", r.k_max}, {"note", r.note}};
}

inline json quintic_report(const QuinticModel& m, unsigned k_max) {
    const Matrix H = hasse_witt(m);
    const unsigned rank = static_cast<unsigned>(H.rank());
    ValidityResult v = is_valid_trigonal_model(m, k_max);
    json coeffs = json::object();
    const auto names = coefficient_names(m.variant);
    for (std::size_t i = 0; i < names.size(); ++i) coeffs[names[i]] = m.coefficients[i].to_string();
    return {{"field", field_json(*m.field)},
            {"variant", variant_name(m.variant)},
            {"coefficients", coeffs},
            {"F", m.F.to_string()},
            {"H", to_json(H)},
            {"rank", rank},
            {"p_rank", quintic_p_rank(m)},
            {"valid", v.valid},
            {"reason", v.reason},
            {"a_number", v.valid ? json(5 - rank) : json(nullptr)},
            {"singular_locus", locus_json(v.locus)}};
}

inline json normalization_report(const NormalizedQuintic& n) {
    json coeffs = json::object();
    const auto names = coefficient_names(n.variant);
    for (std::size_t i = 0; i < names.size(); ++i) coeffs[names[i]] = n.coefficients[i].to_string();
    return {{"variant", variant_name(n.variant)},
            {"coefficients", coeffs},
            {"transform", {{"matrix", to_json(n.transform.m)}, {"scale", n.transform.scale.to_string()}, {"steps", n.transform.steps}}}};
}

inline json zeta_json(const ASCurve& c, const ZetaReport& z) {
    json slopes = json::array();
    for (const auto& s : z.slopes) slopes.push_back({{"slope", s.slope.to_string()}, {"length", s.length}});
    return {{"field", field_json(c.field())},
            {"curve", c.to_string()},
            {"genus", c.genus()},
            {"q", z.L.q},
            {"counts", z.counts},
            {"L", z.L.to_strings()},
            {"slopes", slopes},
            {"p_rank", slope_zero_multiplicity(z.slopes)},
            {"supersingular", z.supersingular}};
}

inline json bounds_report(std::int64_t g, std::int64_t p) {
    const Fraction re = re_bound(g, p);
    return {{"g", g}, {"p", p}, {"re", {{"value", re.to_string()}, {"floor", re.floor()}}}, {"ekedahl", {{"max_superspecial_genus", ekedahl_bound(p)}, {"genus_within", g <= ekedahl_bound(p)}}}};
}

}  // namespace asnum

#endif
