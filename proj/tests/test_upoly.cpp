#include <gtest/gtest.h>

#include <random>

#include "asnum/embedding.hpp"
#include "asnum/upoly.hpp"

using namespace asnum;

namespace {

UPoly poly(const FieldDescriptor& f, std::vector<long long> c) {
    std::vector<Fq> v;
    for (auto a : c) v.push_back(Fq(f, a));
    return UPoly(f, std::move(v));
}

UPoly random_poly(const FieldDescriptor& f, int deg, std::mt19937_64& rng, bool monic = false) {
    std::vector<Fq> v;
    for (int i = 0; i <= deg; ++i) v.push_back(Fq::from_index(f, rng() % f.order()));
    if (monic || v.back().is_zero()) v.back() = Fq::one(f);
    return UPoly(f, std::move(v));
}

// Oracle: trial division by every monic polynomial of degree 1..deg/2.
bool brute_irreducible(const UPoly& g) {
    const FieldDescriptor& f = g.field();
    const int n = g.degree();
    if (n <= 0) return false;
    for (int e = 1; 2 * e <= n; ++e) {
        std::uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= f.order();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<Fq> v;
            std::uint64_t r = idx;
            for (int i = 0; i < e; ++i) {
                v.push_back(Fq::from_index(f, r % f.order()));
                r /= f.order();
            }
            v.push_back(Fq::one(f));
            if ((g % UPoly(f, v)).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

TEST(UPoly, DivisionIdentity) {
    std::mt19937_64 rng(1);
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 2}, {5, 1}, {7, 2}}) {
        const auto& f = field(p, k);
        for (int t = 0; t < 200; ++t) {
            UPoly a = random_poly(f, static_cast<int>(rng() % 12), rng);
            UPoly b = random_poly(f, static_cast<int>(rng() % 6), rng);
            auto [q, r] = UPoly::divmod(a, b);
            EXPECT_EQ(q * b + r, a);
            EXPECT_LT(r.degree(), b.degree());
            auto [g, s, u] = UPoly::xgcd(a, b);
            EXPECT_EQ(s * a + u * b, g);
            EXPECT_TRUE((a % g).is_zero());
            EXPECT_TRUE((b % g).is_zero());
        }
    }
}

TEST(UPoly, SmallExamples) {
    const auto& f2 = field(2, 1);
    auto fs = factor(poly(f2, {1, 0, 1}));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].poly, poly(f2, {1, 1}));
    EXPECT_EQ(fs[0].multiplicity, 2u);

    const auto& f3 = field(3, 1);
    auto f3s = factor(poly(f3, {0, -1, 0, 1}));
    ASSERT_EQ(f3s.size(), 3u);
    EXPECT_EQ(f3s[0].poly, poly(f3, {0, 1}));
    EXPECT_EQ(f3s[1].poly, poly(f3, {1, 1}));
    EXPECT_EQ(f3s[2].poly, poly(f3, {2, 1}));

    UPoly q = poly(f2, {1, 1, 0, 0, 1});
    EXPECT_TRUE(is_irreducible(q));
    EXPECT_TRUE(brute_irreducible(q));
    // No roots in F_2 or F_4.
    for (const auto& a : enumerate(field(2, 2))) EXPECT_FALSE(embed(f2, field(2, 2))(q).eval(a).is_zero());
    EXPECT_EQ(factor(q).size(), 1u);
    EXPECT_THROW(factor(UPoly(f2)), DomainError);
}

TEST(UPoly, FactorizationProductAndIrreducibility) {
    std::mt19937_64 rng(5);
    int cases = 0;
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 3}, {5, 2}}) {
        const auto& f = field(p, k);
        for (int t = 0; t < 150; ++t, ++cases) {
            // Build inputs with repeated and p-power factors.
            UPoly g = random_poly(f, 1 + static_cast<int>(rng() % 6), rng);
            if (t % 3 == 0) g = g * random_poly(f, 1 + static_cast<int>(rng() % 3), rng).pow(p);
            if (t % 4 == 0) g = g * random_poly(f, 1, rng).pow(2 + static_cast<unsigned>(rng() % 4));
            auto fs = factor(g);
            UPoly prod = UPoly::constant(g.lead());
            for (const auto& fc : fs) {
                prod *= fc.poly.pow(fc.multiplicity);
                EXPECT_EQ(fc.poly.lead(), Fq::one(f));
                // Degree-e factor divides x^(q^e) - x and no x^(q^j) - x, j < e.
                const unsigned e = static_cast<unsigned>(fc.poly.degree());
                UPoly x = UPoly::x(f);
                UPoly h = x % fc.poly;
                for (unsigned j = 1; j <= e; ++j) {
                    h = UPoly::powmod(h, f.order(), fc.poly);
                    if (j < e) {
                        EXPECT_FALSE((h - x % fc.poly).is_zero());
                    } else {
                        EXPECT_TRUE((h - x % fc.poly).is_zero());
                    }
                }
                if (std::pow(static_cast<double>(f.order()), e / 2) < 3000) {
                    EXPECT_TRUE(brute_irreducible(fc.poly));
                }
            }
            EXPECT_EQ(prod, g);
            for (std::size_t i = 1; i < fs.size(); ++i) EXPECT_NE(fs[i - 1].poly, fs[i].poly);
        }
    }
    EXPECT_GE(cases, 1000);
}

TEST(UPoly, FactorSeedIndependence) {
    std::mt19937_64 rng(9);
    const auto& f = field(3, 2);
    for (int t = 0; t < 30; ++t) {
        UPoly g = random_poly(f, 8, rng);
        auto a = factor(g);
        auto b = factor(g, 12345);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].poly, b[i].poly);
    }
}

TEST(UPoly, SquarefreeDecomposition) {
    const auto& f = field(3, 1);
    // (x+1)^3 (x^2+1)^2 x^4
    UPoly g = poly(f, {1, 1}).pow(3) * poly(f, {1, 0, 1}).pow(2) * poly(f, {0, 1}).pow(4);
    auto sq = squarefree_decomposition(g);
    ASSERT_EQ(sq.size(), 3u);
    EXPECT_EQ(sq[0].multiplicity, 2u);
    EXPECT_EQ(sq[0].poly, poly(f, {1, 0, 1}));
    EXPECT_EQ(sq[1].multiplicity, 3u);
    EXPECT_EQ(sq[2].multiplicity, 4u);
    EXPECT_EQ(squarefree_part(g), poly(f, {1, 1}) * poly(f, {1, 0, 1}) * poly(f, {0, 1}));
}

TEST(UPoly, RootsMatchBruteEvaluation) {
    std::mt19937_64 rng(2);
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {5, 1}, {7, 2}, {2, 4}}) {
        const auto& f = field(p, k);
        for (int t = 0; t < 60; ++t) {
            UPoly g = random_poly(f, 1 + static_cast<int>(rng() % 7), rng);
            if (t % 2) g = g * UPoly::linear(Fq::from_index(f, rng() % f.order()));
            std::vector<Fq> expect;
            for (const auto& a : enumerate(f))
                if (g.eval(a).is_zero()) expect.push_back(a);
            EXPECT_EQ(roots(g), expect);
        }
    }
}

TEST(UPoly, PthRootAndDerivative) {
    const auto& f = field(5, 2);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        UPoly h = random_poly(f, 4, rng);
        UPoly g = h.pow(5);
        EXPECT_TRUE(g.derivative().is_zero());
        EXPECT_EQ(g.pth_root(), h);
    }
    EXPECT_THROW(poly(f, {0, 1}).pth_root(), DomainError);
}

TEST(Embedding, HomomorphismAndGenerator) {
    std::mt19937_64 rng(8);
    for (auto [p, a, b] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 1, 2}, {2, 2, 4}, {2, 2, 6}, {3, 1, 3}, {3, 2, 4}, {5, 2, 4}, {2, 3, 6}}) {
        const auto& small = field(p, a);
        const auto& big = field(p, b);
        Embedding e(small, big);
        // The image of the generator is the first root of the small modulus.
        std::vector<Fq> mc;
        for (auto c : small.modulus()) mc.push_back(Fq(big, c));
        UPoly m(big, mc);
        if (a > 1) {
            EXPECT_TRUE(m.eval(e.image_of_generator()).is_zero());
            for (const auto& z : enumerate(big)) {
                if (z == e.image_of_generator()) break;
                EXPECT_FALSE(m.eval(z).is_zero());
            }
        }
        for (int t = 0; t < 100; ++t) {
            Fq x = Fq::from_index(small, rng() % small.order()), y = Fq::from_index(small, rng() % small.order());
            EXPECT_EQ(e(x + y), e(x) + e(y));
            EXPECT_EQ(e(x * y), e(x) * e(y));
            EXPECT_EQ(e(x.frobenius(1)), e(x).frobenius(1));
            auto back = restrict_to(e, e(x));
            ASSERT_TRUE(back.has_value());
            EXPECT_EQ(*back, x);
        }
    }
    EXPECT_THROW(Embedding(field(2, 2), field(2, 3)), DomainError);
}
