#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "asnum/parser.hpp"
#include "asnum/survey.hpp"

using namespace asnum;

namespace {

CampaignConfig config(CampaignKind kind, unsigned p, std::uint64_t q) {
    CampaignConfig c;
    c.kind = kind;
    c.p = p;
    c.field_order = q;
    return c;
}

std::uint64_t count_at(const json& s, const std::string& seg, const std::string& key, const std::string& value) {
    const json& t = s["tallies"]["segments"];
    if (!t.contains(seg) || !t[seg].contains(key) || !t[seg][key].contains(value)) return 0;
    return t[seg][key][value].get<std::uint64_t>();
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("asnum_" + name)).string(); }

json strip(json s) {
    s.erase("shard");
    return s;
}

}  // namespace

TEST(Campaign, SegmentsAndSizes) {
    auto segs = campaign_segments(config(CampaignKind::ThmG1, 5, 5));
    ASSERT_EQ(segs.size(), 4u);  // d = 2, 3, 4, 6
    EXPECT_EQ(segs[0].space, 1u);
    EXPECT_EQ(segs[1].space, 5u);
    EXPECT_EQ(segs[2].space, 25u);
    EXPECT_EQ(segs[3].space, 625u);
    EXPECT_EQ(campaign_size(segs), 656u);
    auto g2 = campaign_segments(config(CampaignKind::PropG2, 7, 7));
    ASSERT_EQ(g2.size(), 3u);  // d = 2, 4, 8
    EXPECT_EQ(g2[2].exponents, (std::vector<unsigned>{1, 2, 3, 4, 5, 6}));
    auto qs = campaign_segments(config(CampaignKind::QuinticP3, 3, 3));
    ASSERT_EQ(qs.size(), 2u);
    EXPECT_EQ(qs[0].space, 1594323u);  // 3^13
    EXPECT_EQ(qs[1].space, 177147u);   // 3^11
    auto small = campaign_segments(config(CampaignKind::P2Small, 2, 2));
    EXPECT_EQ(small[0].space, 32u * 16u);
    auto small4 = campaign_segments(config(CampaignKind::P2Small, 2, 4));
    EXPECT_EQ(small4[0].space, 1024u * (1 + 4 * 15 + 6 * 225 + 4 * 3375));
    EXPECT_THROW(campaign_segments(config(CampaignKind::ThmG1, 2, 2)), DomainError);
    EXPECT_THROW(campaign_segments(config(CampaignKind::ThmG1, 3, 6)), DomainError);
    EXPECT_THROW(parse_campaign("thm-g3"), DomainError);
}

TEST(Campaign, HashDependsOnParameters) {
    auto a = config(CampaignKind::ThmG1, 3, 9), b = a;
    EXPECT_EQ(campaign_hash(a), campaign_hash(b));
    b.seed = 1;
    EXPECT_NE(campaign_hash(a), campaign_hash(b));
    EXPECT_EQ(campaign_hash(a).size(), 16u);
}

TEST(Campaign, IndicesDetermineParameters) {
    Campaign c(config(CampaignKind::ThmG1, 5, 5));
    EXPECT_EQ(c.evaluate(0).params["f"], "x^2");
    EXPECT_EQ(c.evaluate(1).params["f"], "x^3");
    EXPECT_EQ(c.evaluate(2).params["f"], "x^3+x");
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < c.size(); ++i) seen.insert(c.evaluate(i).params["f"].get<std::string>());
    EXPECT_EQ(seen.size(), c.size());
    auto s = config(CampaignKind::PropG2, 7, 49);
    s.samples = 10;
    s.seed = 4;
    Campaign a(s), b(s);
    for (std::uint64_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.evaluate(i).params, b.evaluate(i).params);
}

TEST(ThmG1, CharacteristicFiveOverF5) {
    RunResult r = run_campaign(config(CampaignKind::ThmG1, 5, 5));
    EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
    EXPECT_EQ(count_at(r.summary, "d=3", "g-a", "1"), 4u);
    for (std::string d : {"d=2", "d=4", "d=6"}) EXPECT_EQ(count_at(r.summary, d, "g-a", "1"), 0u) << d;
    EXPECT_GE(r.summary["tallies"]["crosschecked"].get<int>(), 1);
}

TEST(ThmG1, CharacteristicThree) {
    for (std::uint64_t q : {3u, 9u}) {
        RunResult r = run_campaign(config(CampaignKind::ThmG1, 3, q));
        EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
        // x^4 + a_2 x^2 + a_1 x with a_2 != 0
        EXPECT_EQ(count_at(r.summary, "d=4", "g-a", "1"), (q - 1) * q);
    }
}

TEST(Superspecial, SmallFields) {
    for (auto [p, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{3, 3}, {3, 9}, {5, 5}}) {
        RunResult r = run_campaign(config(CampaignKind::ThmSuperspecial, p, q));
        EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
    }
    RunResult r = run_campaign(config(CampaignKind::ThmSuperspecial, 3, 3));
    // x^4 + a_1 x is x^4 after x -> x + c with c^(1/3) + c^3 = a_1.
    EXPECT_EQ(count_at(r.summary, "d=4", "g-a", "0"), 3u);
    EXPECT_EQ(count_at(r.summary, "d=2", "g-a", "0"), 1u);
}

TEST(PropG2, SevenOverF49) {
    auto c = config(CampaignKind::PropG2, 7, 49);
    c.cap = 5000;
    c.fallback_samples = 300;
    RunResult r = run_campaign(c);
    EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
    EXPECT_EQ(r.summary["segments"][1]["mode"], "exhaustive");
    EXPECT_EQ(r.summary["segments"][2]["mode"], "sample");
    EXPECT_GE(count_at(r.summary, "d=4", "a", "7"), 48u);
    for (auto [p, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{3, 9}, {5, 5}}) {
        RunResult s = run_campaign(config(CampaignKind::PropG2, p, q));
        EXPECT_TRUE(s.summary["passed"]) << s.summary.dump(1);
    }
}

TEST(QuinticP2, ExhaustiveOverF2) {
    RunResult r = run_campaign(config(CampaignKind::QuinticP2, 2, 2));
    EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
    EXPECT_TRUE(r.summary["enumeration_complete"]);
    for (const auto& s : r.summary["segments"]) {
        EXPECT_EQ(s["enumerated"], s["expected"]);
        EXPECT_GE(s["min_rank"].get<int>(), 0);
    }
    EXPECT_GT(r.summary["tallies"]["excluded"].size(), 0u);
    EXPECT_EQ(r.summary["violations"], 0);
}

TEST(QuinticP3, SampledOverF3) {
    auto c = config(CampaignKind::QuinticP3, 3, 3);
    c.samples = 4000;
    c.seed = 9;
    RunResult r = run_campaign(c);
    EXPECT_TRUE(r.summary["passed"]) << r.summary.dump(1);
    EXPECT_EQ(r.summary["segments"][0]["enumerated"], 4000);
}

// y^2 + y = x^3 + 1/x^3: basis {dx, dx/x, dx/x^2}, C(dx/x) = dx/x and the
// other two images vanish, so a = 2 = g - 1 with branch degrees {3, 3}.
TEST(P2Small, ThreeThreeShapeHasAEqualsGMinusOne) {
    ASCurve c = as_reduce(2, parse_rational("x^3+1/x^3", field(2, 1)));
    EXPECT_EQ(c.genus(), 3u);
    EXPECT_EQ(a_number(c), 2u);
}

bool only_three_three(const json& summary) {
    for (const auto& r : summary["counterexamples"]) {
        const std::string reason = r["reason"];
        if (reason.find("g = 3 and branch degrees {3,3}") == std::string::npos) return false;
    }
    return true;
}

TEST(P2Small, ExhaustiveOverF2) {
    std::string path = temp_path("p2small.jsonl");
    RunOptions opt;
    opt.out = path;
    RunResult r = run_campaign(config(CampaignKind::P2Small, 2, 2), opt);
    EXPECT_TRUE(r.summary.contains("scope"));
    EXPECT_TRUE(r.summary["enumeration_complete"]);
    // The listed shapes miss {3, 3}; every violation is of that kind.
    EXPECT_FALSE(r.summary["passed"]);
    EXPECT_GT(r.counterexamples, 0u);
    EXPECT_TRUE(only_three_three(r.summary)) << r.summary["counterexamples"].dump(1);
    std::ifstream in(path);
    std::string line;
    bool x5 = false, x_plus_inverse = false, three_three = false;
    while (std::getline(in, line)) {
        json j = json::parse(line);
        if (!j.contains("params") || !j["params"].contains("f")) continue;
        if (j["params"]["f"] == "x^5") x5 = j["a"] == 1;
        if (j["params"]["f"] == "(x^2+1)/(x)") x_plus_inverse = j["a"] == 0 && j["verdict"] == "consistent";
        if (j["params"]["f"] == "(x^6+1)/(x^3)") three_three = j["verdict"] == "counterexample";
    }
    EXPECT_TRUE(x5);
    EXPECT_TRUE(x_plus_inverse);
    EXPECT_TRUE(three_three);
    std::remove(path.c_str());
}

TEST(P2Small, SampledOverF4) {
    auto c = config(CampaignKind::P2Small, 2, 4);
    c.samples = 1500;
    RunResult r = run_campaign(c);
    EXPECT_TRUE(only_three_three(r.summary)) << r.summary["counterexamples"].dump(1);
}

TEST(Checkpoint, ResumeMatchesUninterruptedRun) {
    auto c = config(CampaignKind::ThmSuperspecial, 5, 5);
    RunOptions base;
    base.chunk_size = 50;
    RunResult full = run_campaign(c, base);
    ASSERT_TRUE(full.complete);

    std::string path = temp_path("resume.jsonl");
    RunOptions first = base;
    first.out = path;
    first.max_chunks = 6;
    RunResult part = run_campaign(c, first);
    EXPECT_FALSE(part.complete);
    EXPECT_FALSE(part.summary["passed"]);

    RunOptions second = base;
    second.resume = path;
    second.threads = 3;
    RunResult done = run_campaign(c, second);
    EXPECT_TRUE(done.complete);
    EXPECT_EQ(done.summary, full.summary);

    auto changed = c;
    changed.seed = 5;
    EXPECT_THROW(run_campaign(changed, second), DomainError);
    std::remove(path.c_str());
}

TEST(Checkpoint, ThreadCountDoesNotChangeTallies) {
    auto c = config(CampaignKind::QuinticP2, 2, 2);
    RunOptions one, four;
    one.chunk_size = four.chunk_size = 300;
    four.threads = 4;
    EXPECT_EQ(run_campaign(c, one).summary, run_campaign(c, four).summary);
}

TEST(Checkpoint, ShardsMergeToTheSingleRun) {
    auto c = config(CampaignKind::ThmG1, 3, 9);
    RunOptions base;
    base.chunk_size = 10;
    RunResult full = run_campaign(c, base);
    std::vector<std::string> paths;
    for (unsigned s = 0; s < 2; ++s) {
        RunOptions o = base;
        o.shard_index = s;
        o.shard_count = 2;
        o.out = temp_path("shard" + std::to_string(s) + ".jsonl");
        paths.push_back(o.out);
        EXPECT_FALSE(run_campaign(c, o).complete);
    }
    RunResult merged = merge_logs(c, paths, base.chunk_size);
    EXPECT_TRUE(merged.complete);
    EXPECT_EQ(strip(merged.summary), full.summary);
    for (const auto& p : paths) std::remove(p.c_str());
}
