#include <gtest/gtest.h>

#include <random>
#include <set>

#include "asnum/fields.hpp"

using namespace asnum;

namespace {

// Oracle: a monic polynomial of degree k over F_p is irreducible iff no monic
// polynomial of degree 1..k/2 divides it (plain long division).
bool brute_irreducible(std::vector<unsigned> m, unsigned p) {
    const unsigned k = static_cast<unsigned>(m.size()) - 1;
    for (unsigned e = 1; 2 * e <= k; ++e) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            std::vector<unsigned> d(e + 1, 0);
            d[e] = 1;
            std::uint64_t r = n;
            for (unsigned i = 0; i < e; ++i) {
                d[i] = r % p;
                r /= p;
            }
            std::vector<unsigned> a = m;
            for (unsigned top = k; top >= e; --top) {
                unsigned c = a[top];
                if (c)
                    for (unsigned j = 0; j <= e; ++j) a[top - e + j] = (a[top - e + j] + (p - c) * d[j]) % p;
                if (top == e) break;
            }
            bool zero = true;
            for (unsigned j = 0; j < e; ++j) zero = zero && a[j] == 0;
            if (zero) return false;
        }
    }
    return true;
}

Fq random_element(const FieldDescriptor& f, std::mt19937_64& rng) {
    return Fq::from_index(f, rng() % f.order());
}

const std::vector<std::pair<unsigned, unsigned>> kFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 8}, {3, 1}, {3, 2}, {3, 3}, {3, 5},
    {5, 1}, {5, 2}, {5, 4}, {7, 1}, {7, 2}, {7, 9}, {11, 1}, {31, 2}};

}  // namespace

TEST(Fields, PrimeFieldModulusIsT) {
    const auto& f = field(2, 1);
    EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(f.order(), 2u);
}

TEST(Fields, F9ModulusMatchesLexSearch) {
    // Oracle: walk monic quadratics t^2 + c1 t + c0 with c0 most significant
    // and stop at the first without a root in F_3.
    std::vector<std::uint32_t> expect;
    for (unsigned c0 = 0; c0 < 3 && expect.empty(); ++c0)
        for (unsigned c1 = 0; c1 < 3 && expect.empty(); ++c1) {
            bool root = false;
            for (unsigned x = 0; x < 3; ++x) root = root || (x * x + c1 * x + c0) % 3 == 0;
            if (!root) expect = {c0, c1, 1};
        }
    EXPECT_EQ(field(3, 2).modulus(), expect);
}

TEST(Fields, ModulusIsSmallestIrreducible) {
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {3, 4}}) {
        const auto& m = field(p, k).modulus();
        std::vector<unsigned> mm(m.begin(), m.end());
        EXPECT_TRUE(brute_irreducible(mm, p)) << p << "^" << k;
        // Every lexicographically smaller monic candidate is reducible.
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < k; ++i) idx = idx * p + m[i];
        for (std::uint64_t n = 0; n < idx; ++n) {
            std::vector<unsigned> c(k + 1, 0);
            c[k] = 1;
            std::uint64_t r = n;
            for (unsigned i = k; i-- > 0;) {
                c[i] = r % p;
                r /= p;
            }
            EXPECT_FALSE(brute_irreducible(c, p)) << p << "^" << k << " candidate " << n;
        }
    }
}

TEST(Fields, RegistryInterns) {
    EXPECT_EQ(&field(5, 4), &field(5, 4));
    EXPECT_NE(&field(5, 4), &field(5, 2));
}

TEST(Fields, RejectsBadParameters) {
    EXPECT_THROW(field(4, 1), DomainError);
    EXPECT_THROW(field(37, 1), DomainError);
    EXPECT_THROW(field(3, 0), DomainError);
    EXPECT_THROW(field(2, 65), BudgetExceeded);
    EXPECT_THROW(field(31, 20), BudgetExceeded);
}

TEST(Fields, SmallExamples) {
    const auto& f3 = field(3, 1);
    EXPECT_EQ(Fq(f3, 2) + Fq(f3, 2), Fq(f3, 1));
    EXPECT_EQ(Fq(field(5, 1), 2).inv(), Fq(field(5, 1), 3));
    const auto& f9 = field(3, 2);
    Fq t = Fq::generator(f9);
    EXPECT_TRUE((t * t.inv()).is_one());
    EXPECT_EQ(Fq(f3, 2).frobenius(-1), Fq(f3, 2));
    EXPECT_THROW(Fq(f3, 0).inv(), DomainError);
    EXPECT_THROW(Fq(f3, 1) + Fq(f9, 1), DomainError);
}

TEST(Fields, FrobeniusOfGeneratorIsModularCube) {
    // Oracle: t^3 reduced by schoolbook long division against the modulus.
    const auto& f9 = field(3, 2);
    const auto& m = f9.modulus();
    std::vector<unsigned> a = {0, 0, 0, 1};
    for (int top = 3; top >= 2; --top) {
        unsigned c = a[top];
        for (int j = 0; j <= 2; ++j) a[top - 2 + j] = (a[top - 2 + j] + (3 - c) * m[j]) % 3;
    }
    Fq expect = Fq::from_coefficients(f9, std::vector<std::uint32_t>{a[0], a[1]});
    EXPECT_EQ(Fq::generator(f9).frobenius(1), expect);
}

TEST(Fields, FrobeniusAndTraceProperties) {
    std::mt19937_64 rng(11);
    for (auto [p, k] : kFields) {
        const auto& f = field(p, k);
        Fq g = Fq::generator(f);
        // Multiplicative order k of frobenius on the generator.
        Fq cur = g;
        for (unsigned e = 1; e <= k; ++e) {
            cur = cur.frobenius(1);
            if (e < k) {
                EXPECT_NE(cur, g);
            }
        }
        EXPECT_EQ(cur, g);
        for (int trial = 0; trial < 100; ++trial) {
            Fq a = random_element(f, rng), b = random_element(f, rng);
            EXPECT_EQ((a + b).pow(p), a.pow(p) + b.pow(p));
            EXPECT_EQ(a.frobenius(1), a.pow(p));
            EXPECT_EQ(a.frobenius(-1).frobenius(1), a);
            EXPECT_EQ(a.frobenius(static_cast<long long>(k)), a);
            Fq s = Fq::zero(f), c = a;
            for (unsigned e = 0; e < k; ++e, c = c.pow(p)) s += c;
            EXPECT_TRUE(s.in_prime_field());
            EXPECT_EQ(s.coeff(0), a.trace());
        }
    }
}

TEST(Fields, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    for (auto [p, k] : kFields) {
        const auto& f = field(p, k);
        for (int trial = 0; trial < 1000; ++trial) {
            Fq a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ(a - a, Fq::zero(f));
            ASSERT_EQ(a + (-a), Fq::zero(f));
            if (!a.is_zero()) {
                ASSERT_TRUE((a * a.inv()).is_one());
                ASSERT_EQ(a.pow(-3) * a.pow(3), Fq::one(f));
                ASSERT_EQ((b / a) * a, b);
            }
        }
    }
}

TEST(Fields, MultiplicativeGroupOrder) {
    std::mt19937_64 rng(3);
    for (auto [p, k] : kFields) {
        const auto& f = field(p, k);
        for (int trial = 0; trial < 20; ++trial) {
            Fq a = random_element(f, rng);
            if (a.is_zero()) continue;
            EXPECT_TRUE(a.pow(static_cast<long long>(f.order() - 1)).is_one());
        }
    }
}

TEST(Fields, Enumeration) {
    auto e2 = enumerate(field(2, 1));
    ASSERT_EQ(e2.size(), 2u);
    EXPECT_TRUE(e2[0].is_zero());
    EXPECT_TRUE(e2[1].is_one());
    auto e3 = enumerate(field(3, 1));
    ASSERT_EQ(e3.size(), 3u);
    EXPECT_EQ(e3[2], Fq(field(3, 1), 2));
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {2, 6}, {3, 4}}) {
        const auto& f = field(p, k);
        auto all = enumerate(f);
        ASSERT_EQ(all.size(), f.order());
        std::set<std::uint64_t> seen;
        for (std::size_t i = 0; i < all.size(); ++i) {
            EXPECT_EQ(all[i].index(), i);
            seen.insert(all[i].index());
            if (i) {
                EXPECT_TRUE(all[i - 1] < all[i]);
            }
        }
        EXPECT_EQ(seen.size(), f.order());
        Fq walk = Fq::zero(f);
        std::size_t steps = 1;
        while (next_element(walk)) ++steps;
        EXPECT_EQ(steps, f.order());
    }
    auto e4 = enumerate(field(2, 2));
    EXPECT_TRUE(e4[0].is_zero());
    EXPECT_TRUE(e4[1].is_one());
    EXPECT_THROW(enumerate(field(2, 40)), BudgetExceeded);
}

TEST(Fields, CanonicalText) {
    const auto& f = field(3, 3);
    Fq g = Fq::generator(f);
    EXPECT_EQ((g.pow(2).scaled(2) + g + Fq::one(f)).to_string(), "2*g^2+g+1");
    EXPECT_EQ(Fq::zero(f).to_string(), "0");
    EXPECT_EQ(Fq(field(7, 1), 12).to_string(), "5");
}

TEST(Fields, BinomialLucas) {
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (unsigned n = 0; n < 40; ++n) {
            // Oracle: Pascal's triangle mod p.
            std::vector<std::vector<unsigned>> c(n + 1, std::vector<unsigned>(n + 1, 0));
            for (unsigned i = 0; i <= n; ++i) {
                c[i][0] = 1;
                for (unsigned j = 1; j <= i; ++j) c[i][j] = (c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0)) % p;
            }
            for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(binomial_mod(n, k, p), c[n][k]);
        }
}
