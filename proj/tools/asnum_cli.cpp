#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "asnum/asnum.hpp"

using namespace asnum;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitCounterexample = 3;

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

const FieldDescriptor& field_of(unsigned p, std::optional<std::uint64_t> q) {
    return field(p, q ? detail::field_degree(p, *q) : 1);
}

json with_header(const std::string& invocation, const json& body) {
    json out{{"schema", 1}, {"invocation", invocation}};
    out.update(body);
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void pretty_matrix(std::ostream& os, const json& m) {
    for (const auto& row : m) {
        os << "  [";
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i].get<std::string>();
        os << "]\n";
    }
}

struct CurveArgs {
    unsigned p = 0;
    std::optional<std::uint64_t> field;
    std::string f;

    void add(CLI::App* sub) {
        sub->add_option("--p", p, "characteristic")->required();
        sub->add_option("--field", field, "order of the base field (default p)");
        sub->add_option("--f", f, "f(x), e.g. \"x^3+2*x\" or \"x+1/x\"")->required();
    }
    std::string canonical(const std::string& cmd) const {
        return "asnum " + cmd + " --p " + std::to_string(p) + " --field " + std::to_string(field.value_or(p)) + " --f " + quote(f);
    }
    const FieldDescriptor& base() const { return field_of(p, field); }
};

struct CampaignArgs {
    std::string campaign;
    unsigned p = 0;
    std::optional<std::uint64_t> field;
    std::vector<std::string> variants;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    std::uint64_t cap = 100000000;
    std::uint64_t fallback = 100000;
    unsigned k_max = 6;
    unsigned threads = 1;
    std::uint64_t chunk = 4096;
    std::string out, resume, shard;
    std::vector<std::string> merge;

    void add(CLI::App* sub) {
        sub->add_option("campaign", campaign, "thm-g1, prop-g2, thm-superspecial, quintic-p2, quintic-p3 or p2-small")->required();
        sub->add_option("--p", p, "characteristic")->required();
        sub->add_option("--field", field, "order of the base field (default p)");
        sub->add_option("--variant", variants, "quintic variant (repeatable; default all for p)");
        sub->add_option("--samples", samples, "sample every segment with this many seeded tuples");
        sub->add_option("--seed", seed, "sampling seed");
        sub->add_option("--cap", cap, "largest segment enumerated exhaustively");
        sub->add_option("--fallback-samples", fallback, "samples for segments above the cap");
        sub->add_option("--kmax", k_max, "largest extension degree for singular points");
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--chunk", chunk, "indices per checkpoint");
        sub->add_option("--out", out, "write JSONL records and checkpoints here");
        sub->add_option("--resume", resume, "continue the JSONL log at this path");
        sub->add_option("--shard", shard, "run shard i of n, written i/n");
        sub->add_option("--merge", merge, "combine shard logs instead of running (repeatable)");
    }

    CampaignConfig config() const {
        CampaignConfig c;
        c.kind = parse_campaign(campaign);
        c.p = p;
        c.field_order = field.value_or(p);
        for (const auto& v : variants) c.variants.push_back(parse_variant(v));
        c.samples = samples;
        c.seed = seed;
        c.cap = cap;
        c.fallback_samples = fallback;
        c.k_max = k_max;
        return c;
    }

    std::string canonical(const std::string& cmd) const {
        std::string s = "asnum " + cmd + " " + campaign + " --p " + std::to_string(p) + " --field " + std::to_string(field.value_or(p));
        for (const auto& v : variants) s += " --variant " + v;
        if (samples) s += " --samples " + std::to_string(*samples);
        s += " --seed " + std::to_string(seed) + " --cap " + std::to_string(cap) + " --fallback-samples " + std::to_string(fallback) +
             " --kmax " + std::to_string(k_max);
        return s;
    }

    RunOptions run_options() const {
        RunOptions o;
        o.threads = threads;
        o.out = out;
        o.resume = resume;
        o.chunk_size = chunk;
        if (!shard.empty()) {
            auto slash = shard.find('/');
            require(slash != std::string::npos, "--shard expects i/n");
            o.shard_index = static_cast<unsigned>(std::stoul(shard.substr(0, slash)));
            o.shard_count = static_cast<unsigned>(std::stoul(shard.substr(slash + 1)));
        }
        return o;
    }
};

void pretty_summary(const json& s) {
    std::cerr << s["campaign"]["kind"].get<std::string>() << " over F_" << s["campaign"]["field"] << ": "
              << (s["passed"].get<bool>() ? "passed" : "NOT passed") << ", " << s["violations"] << " violation(s)\n";
    for (const auto& seg : s["segments"])
        std::cerr << "  " << seg["label"].get<std::string>() << ": " << seg["enumerated"] << " of " << seg["count"] << " ("
                  << seg["mode"].get<std::string>() << ")" << (seg.contains("min_rank") ? ", min rank " + seg["min_rank"].dump() : "") << "\n";
    for (const auto& c : s["counterexamples"]) std::cerr << "  counterexample " << c.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"a-numbers, Cartier operators and point counts of Artin-Schreier curves and trigonal quintics"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    app.add_flag("--pretty", pretty, "also write a human-readable rendering to standard error");

    CurveArgs as_args, dr_args, zeta_args;
    bool canonical = false;
    auto* as_cmd = app.add_subcommand("as", "invariants of y^p - y = f(x)");
    as_args.add(as_cmd);
    as_cmd->add_flag("--canonical", canonical, "also make f monic with vanishing a_{d-1} and a_0");

    auto* dr_cmd = app.add_subcommand("derham", "de Rham basis, V, F, pairing and Ekedahl-Oort data (polynomial f)");
    dr_args.add(dr_cmd);

    auto* zeta_cmd = app.add_subcommand("zeta", "point counts, L-polynomial and Newton polygon");
    zeta_args.add(zeta_cmd);
    unsigned kmax = 0, zeta_threads = 1;
    double budget = 1e7;
    zeta_cmd->add_option("--kmax", kmax, "count over F_{q^k} for k <= kmax (at least g)");
    zeta_cmd->add_option("--budget", budget, "maximum number of trace evaluations");
    zeta_cmd->add_option("--threads", zeta_threads, "worker threads");

    auto* q_cmd = app.add_subcommand("quintic", "Hasse-Witt matrix and validity of a quintic model");
    std::string variant, normalize;
    std::optional<unsigned> q_p;
    std::optional<std::uint64_t> q_field;
    std::vector<std::string> sets;
    unsigned q_kmax = 6;
    q_cmd->add_option("--variant", variant, "node-b0, node-zero, cusp-p2, node-p3 or cusp-p3");
    q_cmd->add_option("--set", sets, "coefficient assignment name=value (repeatable)");
    q_cmd->add_option("--p", q_p, "characteristic (needed with --normalize)");
    q_cmd->add_option("--field", q_field, "order of the base field (default p)");
    q_cmd->add_option("--kmax", q_kmax, "largest extension degree for singular points");
    q_cmd->add_option("--normalize", normalize, "bring a quintic F(x,y,z) with a double point at (0:0:1) to a template");

    CampaignArgs scan_args, verify_args;
    auto* scan_cmd = app.add_subcommand("scan", "run a campaign and report full tallies");
    scan_args.add(scan_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run a campaign and report whether the statement held");
    verify_args.add(verify_cmd);

    auto* b_cmd = app.add_subcommand("bounds", "Re's a-number bound and Ekedahl's superspecial genus bound");
    std::int64_t bg = 0, bp = 0;
    b_cmd->add_option("--g", bg, "genus")->required();
    b_cmd->add_option("--p", bp, "characteristic")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*as_cmd) {
            AsOptions opt;
            opt.canonical = canonical;
            ASCurve c = as_reduce(as_args.p, parse_rational(as_args.f, as_args.base()), opt);
            json r = curve_report(c);
            emit(with_header(as_args.canonical("as") + (canonical ? " --canonical" : ""), r));
            if (pretty) {
                std::cerr << r["curve"].get<std::string>() << "\n  genus " << r["genus"] << ", p-rank " << r["p_rank"] << ", a-number "
                          << r["a_number"] << "\n  Cartier-Manin matrix:\n";
                pretty_matrix(std::cerr, r["cartier_matrix"]);
            }
            return kExitOk;
        }
        if (*dr_cmd) {
            ASCurve c = as_reduce(dr_args.p, parse_rational(dr_args.f, dr_args.base()));
            json r = derham_report(c);
            emit(with_header(dr_args.canonical("derham"), r));
            if (pretty) {
                std::cerr << r["curve"].get<std::string>() << "\n  a-number " << r["a_number"] << ", p-rank " << r["p_rank"] << "\n  V:\n";
                pretty_matrix(std::cerr, r["V"]);
                std::cerr << "  F:\n";
                pretty_matrix(std::cerr, r["F"]);
            }
            return kExitOk;
        }
        if (*zeta_cmd) {
            ASCurve c = as_reduce(zeta_args.p, parse_rational(zeta_args.f, zeta_args.base()));
            ZetaOptions opt;
            opt.threads = zeta_threads;
            opt.budget = budget;
            ZetaReport z = zeta(c, kmax, opt);
            std::ostringstream b;
            b << budget;
            json r = zeta_json(c, z);
            emit(with_header(zeta_args.canonical("zeta") + " --kmax " + std::to_string(kmax) + " --budget " + b.str(), r));
            if (pretty) {
                std::cerr << r["curve"].get<std::string>() << "\n  L = " << r["L"].dump() << "\n  slopes " << r["slopes"].dump()
                          << (z.supersingular ? "\n  supersingular\n" : "\n");
            }
            return kExitOk;
        }
        if (*q_cmd) {
            if (!normalize.empty()) {
                require(q_p.has_value(), "--normalize needs --p");
                const FieldDescriptor& K = field_of(*q_p, q_field);
                NormalizedQuintic n = normalize_quintic(*q_p, parse_poly(normalize, K, xyz_vars()));
                QuinticModel m = build_quintic(*q_p, K, n.variant, n.coefficients);
                json r = quintic_report(m, q_kmax);
                r["normalization"] = normalization_report(n);
                emit(with_header("asnum quintic --p " + std::to_string(*q_p) + " --field " + std::to_string(K.order()) + " --kmax " +
                                     std::to_string(q_kmax) + " --normalize " + quote(normalize),
                                 r));
                return kExitOk;
            }
            require(!variant.empty(), "quintic needs --variant or --normalize");
            const QuinticVariant v = parse_variant(variant);
            const unsigned p = variant_characteristic(v);
            require(!q_p || *q_p == p, "variant " + variant + " needs p = " + std::to_string(p));
            const FieldDescriptor& K = field_of(p, q_field);
            std::map<std::string, Fq> assign;
            for (const auto& s : sets) {
                auto eq = s.find('=');
                require(eq != std::string::npos && eq > 0, "--set expects name=value, got '" + s + "'");
                assign[s.substr(0, eq)] = parse_element(s.substr(eq + 1), K);
            }
            QuinticModel m = build_quintic(p, K, v, assign);
            json r = quintic_report(m, q_kmax);
            std::string inv = "asnum quintic --variant " + variant + " --field " + std::to_string(K.order()) + " --kmax " + std::to_string(q_kmax);
            for (const auto& [name, value] : assign) inv += " --set " + quote(name + "=" + value.to_string());
            emit(with_header(inv, r));
            if (pretty) {
                std::cerr << "F = " << r["F"].get<std::string>() << "\n  rank(H) " << r["rank"] << ", valid " << r["valid"] << " ("
                          << r["reason"].get<std::string>() << ")\n";
                pretty_matrix(std::cerr, r["H"]);
            }
            return kExitOk;
        }
        if (*scan_cmd || *verify_cmd) {
            const bool scan = scan_cmd->parsed();
            const CampaignArgs& a = scan ? scan_args : verify_args;
            const CampaignConfig cfg = a.config();
            RunResult res = a.merge.empty() ? run_campaign(cfg, a.run_options()) : merge_logs(cfg, a.merge, a.chunk);
            json body = res.summary;
            if (!scan) {
                body.erase("tallies");
                body["statement_holds"] = res.summary["passed"];
            }
            emit(with_header(a.canonical(scan ? "scan" : "verify"), body));
            if (pretty) pretty_summary(res.summary);
            if (res.counterexamples > 0) return kExitCounterexample;
            require(res.complete || !a.shard.empty(), "campaign did not complete");
            return kExitOk;
        }
        if (*b_cmd) {
            json r = bounds_report(bg, bp);
            emit(with_header("asnum bounds --g " + std::to_string(bg) + " --p " + std::to_string(bp), r));
            if (pretty)
                std::cerr << "Re: a <= " << r["re"]["value"].get<std::string>() << ", so a <= " << r["re"]["floor"] << "; Ekedahl: g <= "
                          << r["ekedahl"]["max_superspecial_genus"] << " when a = g\n";
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << json{{"schema", 1}, {"error", "parse"}, {"offset", e.offset()}, {"expected", e.expected()}, {"message", e.what()}}.dump()
                  << '\n';
        return kExitInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << json{{"schema", 1}, {"error", "budget"}, {"message", e.what()}}.dump() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << json{{"schema", 1}, {"error", "input"}, {"message", e.what()}}.dump() << '\n';
        return kExitInput;
    } catch (const HardFault& e) {
        std::cerr << json{{"schema", 1}, {"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << json{{"schema", 1}, {"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return kExitInternal;
    }
    return kExitInput;
}
