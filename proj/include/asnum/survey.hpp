#ifndef ASNUM_SURVEY_HPP
#define ASNUM_SURVEY_HPP

// Enumeration campaigns over Artin-Schreier families and quintic templates,
// with deterministic chunked parallelism, JSONL checkpoints and resume.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "artin_schreier.hpp"
#include "derham.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "gf_table.hpp"
#include "quintic.hpp"
#include "rational.hpp"

namespace asnum {

using json = nlohmann::json;

enum class CampaignKind { ThmG1, PropG2, ThmSuperspecial, QuinticP2, QuinticP3, P2Small };

inline const std::vector<std::pair<CampaignKind, std::string>>& campaign_names() {
    static const std::vector<std::pair<CampaignKind, std::string>> names{
        {CampaignKind::ThmG1, "thm-g1"},         {CampaignKind::PropG2, "prop-g2"},         {CampaignKind::ThmSuperspecial, "thm-superspecial"},
        {CampaignKind::QuinticP2, "quintic-p2"}, {CampaignKind::QuinticP3, "quintic-p3"}, {CampaignKind::P2Small, "p2-small"}};
    return names;
}

inline std::string campaign_name(CampaignKind k) {
    for (const auto& [kind, name] : campaign_names())
        if (kind == k) return name;
    throw HardFault("unknown campaign kind");
}

inline CampaignKind parse_campaign(const std::string& s) {
    for (const auto& [kind, name] : campaign_names())
        if (name == s) return kind;
    std::string all;
    for (const auto& [kind, name] : campaign_names()) all += (all.empty() ? "" : ", ") + name;
    throw DomainError("unknown campaign '" + s + "' (expected one of " + all + ")");
}

struct CampaignConfig {
    CampaignKind kind = CampaignKind::ThmG1;
    unsigned p = 3;
    std::uint64_t field_order = 3;
    std::vector<QuinticVariant> variants;  // quintic campaigns; empty means all for p
    std::optional<std::uint64_t> samples;  // sample mode for every segment
    std::uint64_t seed = 0;
    std::uint64_t cap = 100000000;         // largest exhaustive segment
    std::uint64_t sample_cap = 1000000;    // largest sample
    std::uint64_t fallback_samples = 100000;
    unsigned k_max = 6;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline unsigned field_degree(unsigned p, std::uint64_t q) {
    unsigned k = 0;
    std::uint64_t t = 1;
    while (t < q) t *= p, ++k;
    require(t == q && k >= 1, "field order " + std::to_string(q) + " is not a power of " + std::to_string(p));
    return k;
}

inline std::uint64_t checked_pow(std::uint64_t q, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > UINT64_MAX / q) return UINT64_MAX;
        r *= q;
    }
    return r;
}

}  // namespace detail

inline std::vector<QuinticVariant> campaign_variants(const CampaignConfig& c) {
    if (!c.variants.empty()) return c.variants;
    std::vector<QuinticVariant> out;
    for (auto v : all_quintic_variants())
        if (variant_characteristic(v) == c.p) out.push_back(v);
    return out;
}

inline void validate(const CampaignConfig& c) {
    require(is_prime(c.p), "p must be prime");
    const unsigned k = detail::field_degree(c.p, c.field_order);
    require(c.field_order <= 256, "campaign fields are limited to order 256");
    switch (c.kind) {
        case CampaignKind::ThmG1:
        case CampaignKind::PropG2:
        case CampaignKind::ThmSuperspecial:
            require(c.p >= 3 && c.p <= 7, campaign_name(c.kind) + " needs p in {3, 5, 7}");
            break;
        case CampaignKind::QuinticP2:
            require(c.p == 2, "quintic-p2 needs p = 2");
            break;
        case CampaignKind::QuinticP3:
            require(c.p == 3, "quintic-p3 needs p = 3");
            break;
        case CampaignKind::P2Small:
            require(c.p == 2 && k <= 2, "p2-small needs p = 2 over F_2 or F_4");
            break;
    }
    for (auto v : c.variants) require(variant_characteristic(v) == c.p, "variant " + variant_name(v) + " does not match p");
    if (c.samples) require(*c.samples >= 1 && *c.samples <= c.sample_cap, "sample count exceeds the sample cap");
    require(c.fallback_samples >= 1 && c.fallback_samples <= c.sample_cap, "fallback sample count exceeds the sample cap");
}

// Canonical description; the campaign hash is taken over its serialization.
inline json describe(const CampaignConfig& c) {
    json d;
    d["kind"] = campaign_name(c.kind);
    d["p"] = c.p;
    d["field"] = c.field_order;
    d["cap"] = c.cap;
    d["sample_cap"] = c.sample_cap;
    d["fallback_samples"] = c.fallback_samples;
    d["seed"] = c.seed;
    d["mode"] = c.samples ? json{{"sample", *c.samples}} : json("exhaustive");
    if (c.kind == CampaignKind::QuinticP2 || c.kind == CampaignKind::QuinticP3) {
        json vs = json::array();
        for (auto v : campaign_variants(c)) vs.push_back(variant_name(v));
        d["variants"] = vs;
        d["k_max"] = c.k_max;
    }
    return d;
}

inline std::string campaign_hash(const CampaignConfig& c) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << detail::fnv1a(describe(c).dump());
    return s.str();
}

// A contiguous block of campaign indices: either every tuple of a space or
// a seeded sample from it.
struct Segment {
    std::string label;
    std::uint64_t space = 0;   // number of tuples in the full space (saturating)
    std::uint64_t count = 0;   // indices assigned to this segment
    bool sampled = false;
    std::uint64_t offset = 0;
    // AS families: degree and the exponents carrying free coefficients.
    unsigned d = 0;
    std::vector<unsigned> exponents;
    // Quintic families.
    std::optional<QuinticVariant> variant;
};

namespace detail {

// Pole placements for p2-small: subsets of the finite points, at most three.
struct PoleLayout {
    std::vector<std::vector<unsigned>> subsets;
    std::vector<std::uint64_t> starts;
    std::uint64_t total = 0;
};

inline PoleLayout pole_layout(unsigned q, unsigned tails_per_point) {
    PoleLayout L;
    for (unsigned m = 0; m <= 3 && m <= q; ++m) {
        std::vector<unsigned> s(m);
        std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned from) {
            if (pos == m) {
                L.subsets.push_back(s);
                return;
            }
            for (unsigned x = from; x < q; ++x) {
                s[pos] = x;
                rec(pos + 1, x + 1);
            }
        };
        rec(0, 0);
    }
    for (const auto& s : L.subsets) {
        L.starts.push_back(L.total);
        L.total += checked_pow(tails_per_point, s.size());
    }
    return L;
}

}  // namespace detail

inline std::vector<Segment> campaign_segments(const CampaignConfig& c) {
    validate(c);
    const std::uint64_t q = c.field_order;
    std::vector<Segment> out;
    auto finish = [&](Segment s) {
        if (c.samples) {
            s.sampled = true;
            s.count = *c.samples;
        } else if (s.space > c.cap) {
            s.sampled = true;
            s.count = c.fallback_samples;
        } else {
            s.count = s.space;
        }
        s.offset = out.empty() ? 0 : out.back().offset + out.back().count;
        out.push_back(std::move(s));
    };
    switch (c.kind) {
        case CampaignKind::ThmG1:
        case CampaignKind::ThmSuperspecial:
        case CampaignKind::PropG2:
            for (unsigned d = 2; d <= c.p + 1; ++d) {
                if (d % c.p == 0) continue;
                if (c.kind == CampaignKind::PropG2 && (c.p + 1) % d != 0) continue;
                Segment s;
                s.d = d;
                s.label = "d=" + std::to_string(d);
                for (unsigned i = 1; i + 2 <= d; ++i)
                    if (i % c.p != 0) s.exponents.push_back(i);
                s.space = detail::checked_pow(q, s.exponents.size());
                finish(std::move(s));
            }
            break;
        case CampaignKind::QuinticP2:
        case CampaignKind::QuinticP3:
            for (auto v : campaign_variants(c)) {
                Segment s;
                s.variant = v;
                s.label = variant_name(v);
                s.space = detail::checked_pow(q, quintic_template(v).params.size());
                finish(std::move(s));
            }
            break;
        case CampaignKind::P2Small: {
            Segment s;
            s.label = "f0+poles";
            s.exponents = {1, 3, 5, 7, 9};
            const auto layout = detail::pole_layout(static_cast<unsigned>(q), static_cast<unsigned>(q * q - 1));
            s.space = detail::checked_pow(q, s.exponents.size()) * layout.total;
            finish(std::move(s));
            break;
        }
    }
    return out;
}

inline std::uint64_t campaign_size(const std::vector<Segment>& segs) { return segs.empty() ? 0 : segs.back().offset + segs.back().count; }

// Outcome of one tuple.
struct ScanOutcome {
    std::uint64_t index = 0;
    std::size_t segment = 0;
    json params;
    int rank = -1;
    int a = -1;
    int genus = -1;
    std::optional<bool> valid;
    std::string verdict = "consistent";
    std::optional<std::string> reason;
    std::string exclusion;  // low-rank exclusion category
    bool crosschecked = false;
    bool notable = false;
};

inline json to_record(const std::string& hash, const ScanOutcome& o) {
    json r;
    r["c"] = hash;
    r["i"] = o.index;
    r["params"] = o.params;
    r["rank"] = o.rank;
    r["a"] = o.a;
    r["valid"] = o.valid ? json(*o.valid) : json(nullptr);
    r["verdict"] = o.verdict;
    r["reason"] = o.reason ? json(*o.reason) : json(nullptr);
    return r;
}

// Evaluates campaign indices; shared read-only across workers.
class Campaign {
  public:
    explicit Campaign(CampaignConfig cfg)
        : cfg_(std::move(cfg)), segments_(campaign_segments(cfg_)), hash_(campaign_hash(cfg_)),
          field_(&field(cfg_.p, detail::field_degree(cfg_.p, cfg_.field_order))), table_(*field_) {
        for (const auto& s : segments_)
            if (s.variant) compiled_.emplace(*s.variant, CompiledHasseWitt(*s.variant, table_));
        if (cfg_.kind == CampaignKind::P2Small) {
            const auto q = static_cast<unsigned>(cfg_.field_order);
            layout_ = detail::pole_layout(q, q * q - 1);
        }
    }

    const CampaignConfig& config() const noexcept { return cfg_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }
    const std::string& hash() const noexcept { return hash_; }
    std::uint64_t size() const noexcept { return campaign_size(segments_); }
    const FieldDescriptor& base_field() const noexcept { return *field_; }

    std::size_t segment_of(std::uint64_t index) const {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), index,
                                   [](std::uint64_t i, const Segment& s) { return i < s.offset; });
        return static_cast<std::size_t>(it - segments_.begin()) - 1;
    }

    // Base-q digits of the tuple at this index, least significant first.
    std::vector<std::uint8_t> digits(std::uint64_t index, std::size_t n, std::size_t seg) const {
        const Segment& s = segments_[seg];
        const std::uint64_t local = index - s.offset, q = cfg_.field_order;
        std::vector<std::uint8_t> out(n);
        if (s.sampled) {
            const std::uint64_t key = detail::mix64(cfg_.seed ^ detail::mix64(index));
            for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(detail::mix64(key + i) % q);
        } else {
            std::uint64_t t = local;
            for (std::size_t i = 0; i < n; ++i, t /= q) out[i] = static_cast<std::uint8_t>(t % q);
        }
        return out;
    }

    ScanOutcome evaluate(std::uint64_t index) const {
        require(index < size(), "index out of range");
        ScanOutcome o;
        o.index = index;
        o.segment = segment_of(index);
        try {
            switch (cfg_.kind) {
                case CampaignKind::QuinticP2:
                case CampaignKind::QuinticP3:
                    evaluate_quintic(o);
                    break;
                case CampaignKind::P2Small:
                    evaluate_p2_small(o);
                    break;
                default:
                    evaluate_polynomial(o);
            }
        } catch (const DomainError& e) {
            o.verdict = "skipped";
            o.reason = e.what();
            o.notable = true;
        }
        if (o.verdict != "consistent") o.notable = true;
        return o;
    }

  private:
    static bool crosscheck_selected(std::uint64_t index) { return detail::mix64(index ^ 0x5eedULL) % 100 == 0; }

    void evaluate_polynomial(ScanOutcome& o) const {
        const Segment& s = segments_[o.segment];
        const unsigned p = cfg_.p, d = s.d;
        auto dig = digits(o.index, s.exponents.size(), o.segment);
        std::vector<Fq> coef(d + 1, Fq::zero(*field_));
        coef[d] = Fq::one(*field_);
        std::map<unsigned, bool> nonzero;
        for (std::size_t t = 0; t < s.exponents.size(); ++t) {
            coef[s.exponents[t]] = table_.element(dig[t]);
            nonzero[s.exponents[t]] = dig[t] != 0;
        }
        UPoly f(*field_, coef);
        o.params = {{"d", d}, {"f", f.to_string()}};
        ASCurve c = as_reduce(p, RationalFunction(f));
        const int g = static_cast<int>(c.genus());
        o.genus = g;
        o.rank = static_cast<int>(cartier_rank(c));
        o.a = g - o.rank;
        auto nz = [&](unsigned e) { return nonzero.count(e) && nonzero.at(e); };
        // f is isomorphic to x^d: x -> x + c changes only a_1 when d = p + 1.
        const bool pure_power = std::none_of(nonzero.begin(), nonzero.end(), [&](const auto& kv) {
            return kv.second && !(kv.first == 1 && d == p + 1);
        });

        if ((cfg_.kind == CampaignKind::ThmG1 || cfg_.kind == CampaignKind::ThmSuperspecial) && crosscheck_selected(o.index)) {
            EOData eo = eo_data(derham_basis(c));
            ensure(static_cast<int>(eo.a_number) == o.a, "de Rham a-number " + std::to_string(eo.a_number) + " differs from the Cartier value " +
                                                              std::to_string(o.a) + " for " + c.to_string());
            o.crosschecked = true;
        }
        switch (cfg_.kind) {
            case CampaignKind::ThmG1: {
                const bool expected = (p == 5 && d == 3 && nz(1)) || (p == 3 && d == 4 && nz(2));
                const bool actual = o.a == g - 1;
                if (expected != actual) {
                    o.verdict = "counterexample";
                    o.reason = actual ? "a = g - 1 outside the two families" : "family member with a = " + std::to_string(o.a) + " != g - 1";
                }
                o.notable = o.a >= g - 2;
                break;
            }
            case CampaignKind::ThmSuperspecial: {
                const bool expected = pure_power && (p + 1) % d == 0;
                const bool actual = o.a == g;
                if (expected != actual) {
                    o.verdict = "counterexample";
                    o.reason = actual ? "a = g but f is not x^d with d | p + 1" : "x^d with d | p + 1 has a = " + std::to_string(o.a) + " != g";
                }
                if (actual && static_cast<unsigned>(g) > p * (p - 1) / 2) {
                    o.verdict = "counterexample";
                    o.reason = "a = g beyond the Ekedahl bound";
                }
                o.notable = o.a >= g - 2;
                break;
            }
            case CampaignKind::PropG2: {
                if (o.a == g - 2 && !(p == 7 && d == 4)) {
                    o.verdict = "counterexample";
                    o.reason = "a = g - 2 with (p, d) != (7, 4)";
                } else if (p == 7 && d == 4 && !nz(2) && nz(1) && o.a != 7) {
                    o.verdict = "counterexample";
                    o.reason = "x^4 + a_1 x with a_1 != 0 has a = " + std::to_string(o.a) + " != 7";
                } else if (p == 3 && o.a < g - 1) {
                    o.verdict = "counterexample";
                    o.reason = "p = 3 curve with a < g - 1";
                } else if (p == 5 && d == 6 && o.rank < 3 && !pure_power) {
                    o.verdict = "counterexample";
                    o.reason = "p = 5, d = 6 with rank " + std::to_string(o.rank) + " < 3";
                }
                o.notable = o.a >= g - 2;
                break;
            }
            default:
                break;
        }
    }

    void evaluate_quintic(ScanOutcome& o) const {
        const Segment& s = segments_[o.segment];
        const QuinticVariant v = *s.variant;
        const CompiledHasseWitt& hw = compiled_.at(v);
        auto dig = digits(o.index, hw.parameter_count(), o.segment);
        o.rank = static_cast<int>(hw.rank(dig.data()));
        o.a = 5 - o.rank;
        o.genus = 5;
        const int low = cfg_.p == 2 ? 2 : 1;
        auto params = [&] {
            json pj{{"variant", variant_name(v)}};
            const auto names = coefficient_names(v);
            for (std::size_t i = 0; i < names.size(); ++i) pj[names[i]] = table_.element(dig[i]).to_string();
            return pj;
        };
        if (o.rank > low) return;
        std::vector<Fq> coeffs;
        for (auto x : dig) coeffs.push_back(table_.element(x));
        QuinticModel m = build_quintic(cfg_.p, *field_, v, coeffs);
        ValidityResult vr = is_valid_trigonal_model(m, cfg_.k_max);
        ensure(static_cast<int>(hasse_witt(m).rank()) == o.rank, "compiled Hasse-Witt rank disagrees with direct expansion");
        o.params = params();
        o.valid = vr.valid;
        o.reason = vr.reason;
        o.notable = true;
        if (vr.valid) {
            o.verdict = "counterexample";
            o.reason = "valid model with rank(H) = " + std::to_string(o.rank) + ": " + vr.reason + "; F = " + m.F.to_string();
        } else {
            o.exclusion = vr.locus.certificate == Certificate::EnumerationBounded ? "degenerate elimination (common component)" : "extra singular point";
        }
    }

    void evaluate_p2_small(ScanOutcome& o) const {
        const Segment& s = segments_[o.segment];
        const std::uint64_t q = cfg_.field_order, local = o.index - s.offset;
        const std::uint64_t nf0 = detail::checked_pow(q, s.exponents.size());
        std::uint64_t f0i, pi;
        if (s.sampled) {
            const std::uint64_t key = detail::mix64(cfg_.seed ^ detail::mix64(o.index));
            f0i = detail::mix64(key) % nf0;
            pi = detail::mix64(key + 1) % layout_.total;
        } else {
            f0i = local % nf0;
            pi = local / nf0;
        }
        const FieldDescriptor& F = *field_;
        std::vector<Fq> c0(10, Fq::zero(F));
        for (unsigned e : s.exponents) {
            c0[e] = Fq::from_index(F, f0i % q);
            f0i /= q;
        }
        RationalFunction r{UPoly(F, c0)};
        const std::size_t which = static_cast<std::size_t>(std::upper_bound(layout_.starts.begin(), layout_.starts.end(), pi) - layout_.starts.begin()) - 1;
        std::uint64_t t = pi - layout_.starts[which];
        const std::uint64_t ntail = q * q - 1;
        for (unsigned pt : layout_.subsets[which]) {
            std::uint64_t code = t % ntail + 1;
            t /= ntail;
            Fq xi = Fq::from_index(F, pt), c1 = Fq::from_index(F, code % q), c3 = Fq::from_index(F, code / q);
            // c1 X + c3 X^3 with X = 1/(x - xi)
            UPoly lin = UPoly::linear(xi);
            UPoly num = UPoly::constant(c1) * lin.pow(2) + UPoly::constant(c3);
            r = r + RationalFunction(num, lin.pow(3));
        }
        o.params = {{"f", r.to_string()}};
        ASCurve c = as_reduce(2, r);
        const int g = static_cast<int>(c.genus());
        o.genus = g;
        if (g == 0) {
            o.verdict = "skipped";
            o.reason = "genus 0";
            return;
        }
        o.rank = static_cast<int>(cartier_rank(c));
        o.a = g - o.rank;
        if (o.a == g - 1) {
            auto d = c.degrees();
            std::sort(d.begin(), d.end());
            const bool shape = d == std::vector<unsigned>{5} || d == std::vector<unsigned>{7} || d == std::vector<unsigned>{1, 1} ||
                               d == std::vector<unsigned>{1, 3};
            if (!shape || g > 3) {
                o.verdict = "counterexample";
                std::string deg;
                for (auto x : d) deg += (deg.empty() ? "" : ",") + std::to_string(x);
                o.reason = "a = g - 1 with g = " + std::to_string(g) + " and branch degrees {" + deg + "}, outside {5}, {7}, {1,1}, {1,3} or g > 3";
            }
            o.notable = true;
        }
    }

    CampaignConfig cfg_;
    std::vector<Segment> segments_;
    std::string hash_;
    const FieldDescriptor* field_;
    GfTable table_;
    std::map<QuinticVariant, CompiledHasseWitt> compiled_;
    detail::PoleLayout layout_;
};

// Tallies for a set of indices; merging is commutative and associative.
struct Tally {
    json counts = json::object();
    std::vector<json> counterexamples;

    void add(const Campaign& cmp, const ScanOutcome& o) {
        const std::string seg = cmp.segments()[o.segment].label;
        bump(counts["tuples"]);
        bump(counts["verdicts"][o.verdict]);
        json& s = counts["segments"][seg];
        bump(s["tuples"]);
        if (o.rank >= 0) {
            bump(s["rank"][std::to_string(o.rank)]);
            bump(s["a"][std::to_string(o.a)]);
            if (o.genus >= 0) bump(s["g-a"][std::to_string(o.genus - o.a)]);
        }
        if (o.valid) bump(s["validity_checked"]);
        if (!o.exclusion.empty()) bump(counts["excluded"][o.exclusion]);
        if (o.crosschecked) bump(counts["crosschecked"]);
        if (o.verdict == "skipped") bump(counts["skipped_reasons"][*o.reason]);
        if (o.verdict == "counterexample") counterexamples.push_back(to_record(cmp.hash(), o));
    }

    void merge(const Tally& other) {
        merge_counts(counts, other.counts);
        counterexamples.insert(counterexamples.end(), other.counterexamples.begin(), other.counterexamples.end());
        std::sort(counterexamples.begin(), counterexamples.end(), [](const json& a, const json& b) { return a["i"] < b["i"]; });
        counterexamples.erase(std::unique(counterexamples.begin(), counterexamples.end(),
                                          [](const json& a, const json& b) { return a["i"] == b["i"]; }),
                              counterexamples.end());
    }

    json to_json() const { return {{"counts", counts}, {"counterexamples", counterexamples}}; }
    static Tally from_json(const json& j) {
        Tally t;
        t.counts = j.at("counts");
        for (const auto& c : j.at("counterexamples")) t.counterexamples.push_back(c);
        return t;
    }

  private:
    static void bump(json& n) { n = n.is_null() ? std::uint64_t{1} : n.get<std::uint64_t>() + 1; }
    static void merge_counts(json& into, const json& from) {
        for (const auto& [k, v] : from.items()) {
            if (v.is_object()) {
                if (!into.contains(k)) into[k] = json::object();
                merge_counts(into[k], v);
            } else {
                into[k] = (into.contains(k) ? into[k].get<std::uint64_t>() : 0) + v.get<std::uint64_t>();
            }
        }
    }
};

struct RunOptions {
    unsigned threads = 1;
    std::string out;     // start a fresh JSONL log here
    std::string resume;  // continue the JSONL log here
    std::uint64_t chunk_size = 4096;
    std::uint64_t max_chunks = 0;  // stop after this many new chunks; 0 runs to completion
    unsigned shard_index = 0;
    unsigned shard_count = 1;
};

struct RunResult {
    json summary;
    bool complete = false;
    std::uint64_t counterexamples = 0;
};

namespace detail {

struct ChunkLog {
    std::map<std::uint64_t, Tally> done;
};

inline ChunkLog read_log(const std::string& path, const std::string& hash, std::uint64_t chunk_size) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open checkpoint " + path);
    ChunkLog log;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            continue;  // torn final line after an interruption
        }
        if (!header) {
            require(j.contains("header"), "checkpoint " + path + " has no campaign header");
            require(j.value("c", "") == hash, "checkpoint " + path + " belongs to campaign " + j.value("c", "?") + ", not " + hash);
            require(j["header"].value("chunk_size", std::uint64_t{0}) == chunk_size, "checkpoint chunk size differs");
            header = true;
            continue;
        }
        if (j.contains("checkpoint")) log.done[j["checkpoint"]["chunk"].get<std::uint64_t>()] = Tally::from_json(j["checkpoint"]["tally"]);
    }
    require(header, "checkpoint " + path + " is empty");
    return log;
}

}  // namespace detail

// Summary of a finished (or partial) run; a pure function of the campaign
// and its tally.
inline json campaign_summary(const Campaign& cmp, const Tally& t, bool complete) {
    json s;
    s["c"] = cmp.hash();
    s["campaign"] = describe(cmp.config());
    s["complete"] = complete;
    json segs = json::array();
    bool counts_ok = true;
    for (const auto& seg : cmp.segments()) {
        std::uint64_t seen = 0;
        if (t.counts.contains("segments") && t.counts["segments"].contains(seg.label)) seen = t.counts["segments"][seg.label]["tuples"].get<std::uint64_t>();
        json js{{"label", seg.label}, {"mode", seg.sampled ? "sample" : "exhaustive"}, {"space", seg.space}, {"count", seg.count}, {"enumerated", seen}};
        if (!seg.sampled) js["expected"] = seg.space;
        if (complete && seen != seg.count) counts_ok = false;
        if (t.counts.contains("segments") && t.counts["segments"].contains(seg.label) && t.counts["segments"][seg.label].contains("rank")) {
            int mn = 1 << 30;
            for (const auto& [k, v] : t.counts["segments"][seg.label]["rank"].items()) mn = std::min(mn, std::stoi(k));
            js["min_rank"] = mn;
        }
        segs.push_back(js);
    }
    s["segments"] = segs;
    s["tallies"] = t.counts;
    s["counterexamples"] = t.counterexamples;
    s["violations"] = t.counterexamples.size();
    s["enumeration_complete"] = counts_ok;
    s["passed"] = complete && counts_ok && t.counterexamples.empty();
    if (cmp.config().kind == CampaignKind::P2Small)
        s["scope"] = "reduced f_0 of degree <= 9 plus at most 3 finite poles with tails c_1 X + c_3 X^3; a desk-scale space, not a completeness guarantee";
    return s;
}

inline RunResult run_campaign(const CampaignConfig& cfg, const RunOptions& opt = {}) {
    require(opt.chunk_size >= 1, "chunk size must be positive");
    require(opt.shard_count >= 1 && opt.shard_index < opt.shard_count, "shard index out of range");
    require(opt.out.empty() || opt.resume.empty(), "--out and --resume are exclusive");
    const Campaign cmp(cfg);
    const std::uint64_t n = cmp.size(), nchunks = (n + opt.chunk_size - 1) / opt.chunk_size;

    detail::ChunkLog log;
    std::ofstream out;
    if (!opt.resume.empty()) {
        log = detail::read_log(opt.resume, cmp.hash(), opt.chunk_size);
        out.open(opt.resume, std::ios::app);
        require(static_cast<bool>(out), "cannot append to " + opt.resume);
        out << '\n';  // terminate a torn line, if any
    } else if (!opt.out.empty()) {
        out.open(opt.out, std::ios::trunc);
        require(static_cast<bool>(out), "cannot write " + opt.out);
        json h{{"c", cmp.hash()}, {"header", {{"campaign", describe(cfg)}, {"chunk_size", opt.chunk_size}, {"tuples", n}}}};
        out << h.dump() << '\n';
    }

    std::vector<std::uint64_t> pending;
    for (std::uint64_t ch = 0; ch < nchunks; ++ch)
        if (ch % opt.shard_count == opt.shard_index && !log.done.count(ch)) pending.push_back(ch);
    const std::uint64_t todo = opt.max_chunks ? std::min<std::uint64_t>(opt.max_chunks, pending.size()) : pending.size();

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::exception_ptr error;
    auto worker = [&] {
        try {
            for (;;) {
                const std::uint64_t slot = next.fetch_add(1);
                if (slot >= todo || failed) return;
                const std::uint64_t ch = pending[slot];
                Tally t;
                std::vector<json> notable;
                for (std::uint64_t i = ch * opt.chunk_size; i < std::min(n, (ch + 1) * opt.chunk_size); ++i) {
                    ScanOutcome o = cmp.evaluate(i);
                    t.add(cmp, o);
                    if (o.notable && out.is_open()) notable.push_back(to_record(cmp.hash(), o));
                }
                std::lock_guard<std::mutex> lock(mu);
                if (out.is_open()) {
                    for (const auto& r : notable) out << r.dump() << '\n';
                    out << json{{"c", cmp.hash()}, {"checkpoint", {{"chunk", ch}, {"tally", t.to_json()}}}}.dump() << '\n';
                    out.flush();
                }
                log.done[ch] = std::move(t);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!error) error = std::current_exception();
            failed = true;
        }
    };
    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    Tally total;
    for (const auto& [ch, t] : log.done) total.merge(t);
    RunResult r;
    r.complete = log.done.size() == nchunks;
    r.summary = campaign_summary(cmp, total, r.complete);
    if (opt.shard_count > 1) r.summary["shard"] = std::to_string(opt.shard_index) + "/" + std::to_string(opt.shard_count);
    r.counterexamples = total.counterexamples.size();
    if (out.is_open()) {
        out << json{{"c", cmp.hash()}, {"summary", r.summary}}.dump() << '\n';
    }
    return r;
}

// Combines the logs of several shards of one campaign.
inline RunResult merge_logs(const CampaignConfig& cfg, const std::vector<std::string>& paths, std::uint64_t chunk_size = 4096) {
    const Campaign cmp(cfg);
    const std::uint64_t nchunks = (cmp.size() + chunk_size - 1) / chunk_size;
    std::map<std::uint64_t, Tally> done;
    for (const auto& path : paths)
        for (auto& [ch, t] : detail::read_log(path, cmp.hash(), chunk_size).done) done[ch] = std::move(t);
    Tally total;
    for (const auto& [ch, t] : done) total.merge(t);
    RunResult r;
    r.complete = done.size() == nchunks;
    r.summary = campaign_summary(cmp, total, r.complete);
    r.counterexamples = total.counterexamples.size();
    return r;
}

}  // namespace asnum

#endif
