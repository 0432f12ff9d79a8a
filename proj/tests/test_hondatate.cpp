#include <weilpoly/enumerate.hpp>
#include <weilpoly/hondatate.hpp>

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace weilpoly;

namespace {

WeilCandidate cand(long p, int n, std::vector<long> a) {
    WeilCandidate c{Int(p), n, static_cast<int>(a.size()), {}};
    for (long v : a) c.a.emplace_back(v);
    return c;
}

std::vector<Rat> over_p_values(const std::vector<BrauerInvariant>& inv) {
    std::vector<Rat> out;
    for (const auto& b : inv)
        if (b.place == Place::over_p) out.push_back(b.value);
    std::sort(out.begin(), out.end());
    return out;
}

int count_place(const std::vector<BrauerInvariant>& inv, Place pl) {
    return static_cast<int>(std::count_if(inv.begin(), inv.end(), [&](const auto& b) { return b.place == pl; }));
}

// Root valuations, as multiples of n, of each Newton polygon in the dimension-5 criteria.
std::map<int, std::map<Rat, int>> expected_slopes() {
    auto r = [](long a, long b) { return Rat(a, b); };
    return {
        {2, {{r(0, 1), 1}, {r(1, 2), 8}, {r(1, 1), 1}}},
        {3, {{r(0, 1), 1}, {r(1, 3), 3}, {r(1, 2), 2}, {r(2, 3), 3}, {r(1, 1), 1}}},
        {4, {{r(0, 1), 1}, {r(1, 4), 4}, {r(3, 4), 4}, {r(1, 1), 1}}},
        {5, {{r(0, 1), 2}, {r(1, 2), 6}, {r(1, 1), 2}}},
        {6, {{r(0, 1), 2}, {r(1, 3), 3}, {r(2, 3), 3}, {r(1, 1), 2}}},
        {7, {{r(0, 1), 3}, {r(1, 2), 4}, {r(1, 1), 3}}},
        {8, {{r(1, 3), 3}, {r(1, 2), 4}, {r(2, 3), 3}}},
        {9, {{r(0, 1), 4}, {r(1, 2), 2}, {r(1, 1), 4}}},
        {10, {{r(1, 4), 4}, {r(1, 2), 2}, {r(3, 4), 4}}},
        {11, {{r(0, 1), 5}, {r(1, 1), 5}}},
        {12, {{r(1, 5), 5}, {r(4, 5), 5}}},
        {13, {{r(2, 5), 5}, {r(3, 5), 5}}},
        {14, {{r(1, 2), 10}}},
    };
}

}  // namespace

TEST(Invariants, Examples) {
    auto i1 = frobenius_invariants(IntPoly{-3, 0, 1}, Int(3), 1);
    EXPECT_EQ(count_place(i1, Place::real), 2);
    EXPECT_EQ(over_p_values(i1), std::vector<Rat>{Rat(0)});
    for (const auto& b : i1) {
        if (b.place == Place::real) {
            EXPECT_EQ(b.value, Rat(1, 2));
        }
    }

    auto i2 = frobenius_invariants(IntPoly{2, -1, 1}, Int(2), 1);
    EXPECT_EQ(count_place(i2, Place::real), 0);
    EXPECT_EQ(over_p_values(i2), (std::vector<Rat>{Rat(0), Rat(0)}));

    auto i3 = frobenius_invariants(IntPoly{4, 2, 1}, Int(2), 2);
    EXPECT_EQ(over_p_values(i3), std::vector<Rat>{Rat(0)});

    EXPECT_EQ(over_p_values(frobenius_invariants(IntPoly{32, 2, 1}, Int(2), 5)), (std::vector<Rat>{Rat(1, 5), Rat(4, 5)}));
    EXPECT_THROW(frobenius_invariants(IntPoly{2, 3, 1}, Int(2), 1), ShapeError);
}

TEST(Invariants, MultiplicityAndDimensionExamples) {
    EXPECT_EQ(multiplicity_e(IntPoly{-3, 0, 1}, Int(3), 1), 2);
    EXPECT_EQ(multiplicity_e(IntPoly{2, -1, 1}, Int(2), 1), 1);
    EXPECT_EQ(multiplicity_e(IntPoly{32, 2, 1}, Int(2), 5), 5);
    EXPECT_EQ(dimension_of_simple(IntPoly{-3, 0, 1}, Int(3), 1), 2);
    EXPECT_EQ(dimension_of_simple(IntPoly{32, 2, 1}, Int(2), 5), 5);
    EXPECT_EQ(multiplicity_e(IntPoly{-4, 1}, Int(2), 4), 2);
    EXPECT_EQ(dimension_of_simple(IntPoly{-4, 1}, Int(2), 4), 1);
}

TEST(Invariants, SmallHelpers) {
    EXPECT_EQ(prop35_allowed_e(5), (std::set<int>{1, 5}));
    EXPECT_EQ(prop35_allowed_e(3), (std::set<int>{1, 3}));
    EXPECT_EQ(prop35_allowed_e(7), (std::set<int>{1, 7}));
    EXPECT_THROW(prop35_allowed_e(9), ShapeError);
    EXPECT_THROW(prop35_allowed_e(2), ShapeError);
    EXPECT_EQ(lemma24_real_dimension(2), 1);
    EXPECT_EQ(lemma24_real_dimension(3), 2);
    EXPECT_EQ(lemma24_real_dimension(1), 2);
    EXPECT_EQ(frac(Rat(7, 3)), Rat(1, 3));
    EXPECT_EQ(frac(Rat(-1, 4)), Rat(3, 4));
    EXPECT_EQ(frac(Rat(2)), Rat(0));
}

TEST(QuadraticPowerTest, Examples) {
    EXPECT_TRUE(test_theorem12(Int(2), 5, 5, Int(2), Int(32)).ok);
    EXPECT_TRUE(test_theorem12(Int(2), 5, 5, Int(4), Int(32)).ok);
    EXPECT_TRUE(test_theorem12(Int(2), 5, 5, Int(-6), Int(32)).ok);
    EXPECT_FALSE(test_theorem12(Int(2), 5, 5, Int(8), Int(32)).ok);
    EXPECT_FALSE(test_theorem12(Int(2), 5, 5, Int(0), Int(32)).ok);
    EXPECT_FALSE(test_theorem12(Int(2), 5, 5, Int(2), Int(31)).ok);
    EXPECT_FALSE(test_theorem12(Int(2), 4, 5, Int(2), Int(16)).ok);
    EXPECT_FALSE(test_theorem12(Int(2), 5, 5, Int(1), Int(32)).ok);
    EXPECT_FALSE(test_theorem12(Int(3), 3, 3, Int(11), Int(27)).ok);  // a^2 >= 4q
    EXPECT_TRUE(test_theorem12(Int(3), 3, 3, Int(3), Int(27)).ok);
    EXPECT_THROW(test_theorem12(Int(2), 2, 2, Int(2), Int(4)), ShapeError);
}

TEST(QuadraticDimension, Examples) {
    EXPECT_EQ(lemma26_dimension(Int(2), Int(2), 2), 1);
    EXPECT_EQ(lemma26_dimension(Int(2), Int(2), 5), 5);
    EXPECT_EQ(lemma26_dimension(Int(0), Int(5), 1), 1);
    EXPECT_THROW(lemma26_dimension(Int(4), Int(2), 2), ShapeError);
}

// The quadratic dimension formula agrees with the invariants, and the g-fold
// power of t^2 + a t + q is simple exactly when the quadratic-power test says so.
TEST(QuadraticDimension, MatchesInvariantDimension) {
    int checked = 0;
    for (long p : {2, 3, 5, 7})
        for (int n = 1; n <= 6; ++n) {
            Int q = ipow(Int(p), static_cast<unsigned long>(n));
            if (q > 5000) continue;
            Int B = isqrt(4 * q);
            for (Int a = -B; a <= B; ++a) {
                if (a * a >= 4 * q) continue;
                IntPoly m(std::vector<Int>{q, a, 1});
                int dim = dimension_of_simple(m, Int(p), n);
                EXPECT_EQ(lemma26_dimension(a, Int(p), n), dim) << "p=" << p << " n=" << n << " a=" << a;
                for (int g = 3; g <= 7; ++g) {
                    bool thm = test_theorem12(Int(p), n, g, a, q).ok;
                    EXPECT_EQ(thm, dim == g) << "p=" << p << " n=" << n << " a=" << a << " g=" << g;
                }
                ++checked;
            }
        }
    EXPECT_GT(checked, 300);
}

TEST(Invariants, SumRule) {
    std::mt19937_64 rng(61);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        long p = std::vector<long>{2, 3, 5}[rng() % 3];
        int n = 1 + static_cast<int>(rng() % 4);
        int g = 1 + static_cast<int>(rng() % 3);
        auto c = gen::real_root_candidate(rng, p, n, g);
        if (!c) continue;
        for (const auto& [m, k] : factor_over_q(expand(*c)).factors) {
            if (sturm_count(m, std::nullopt, std::nullopt) > 0) continue;
            auto pr = qp_factor_profile(m, Int(p));
            Rat total = 0;
            for (const auto& fct : pr.factors) total += fct.slope * fct.degree;
            Rat expect(n * m.degree(), 2);
            expect.canonicalize();
            EXPECT_EQ(total, expect) << m.to_string();
            ++checked;
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Classify, Examples) {
    auto r1 = classify(cand(5, 1, {1}));
    EXPECT_TRUE(r1.weil);
    EXPECT_TRUE(r1.simple);
    EXPECT_EQ(r1.multiplicity, 1);
    EXPECT_EQ(r1.dimension, 1);
    EXPECT_FALSE(r1.real_root);
    EXPECT_EQ(r1.case_label, "non-dim5");

    auto r2 = classify(cand(3, 1, {0, -6}));
    EXPECT_TRUE(r2.simple);
    EXPECT_EQ(r2.multiplicity, 2);
    EXPECT_EQ(r2.dimension, 2);
    EXPECT_TRUE(r2.real_root);
    EXPECT_EQ(r2.min_poly, (IntPoly{-3, 0, 1}));

    // t^4 - 4t^2 + 4 = (t^2 - 2)^2 at q = 2.
    auto r3 = classify(cand(2, 1, {0, -4}));
    EXPECT_TRUE(r3.weil);
    EXPECT_TRUE(r3.simple);
    EXPECT_EQ(r3.multiplicity, 2);
    EXPECT_EQ(r3.dimension, 2);
    EXPECT_TRUE(r3.real_root);

    auto r4 = classify(cand(2, 1, {3}));
    EXPECT_FALSE(r4.weil);
    EXPECT_EQ(r4.case_label, "rejected(not-weil)");

    // (t^2 + t + 2)(t^2 - t + 2): two distinct factors.
    auto r5 = classify(cand(2, 1, {0, 3}));
    EXPECT_TRUE(r5.weil);
    EXPECT_FALSE(r5.simple);
    EXPECT_EQ(r5.multiplicity, 0);

    // (t - 4)^4 at q = 16: e = 2, dimension 1, so the fourth power is not simple.
    auto r6 = classify(cand(2, 4, {-16, 96}));
    EXPECT_FALSE(r6.simple);
    EXPECT_EQ(r6.multiplicity, 2);
    EXPECT_EQ(r6.dimension, 1);
    auto r7 = classify(cand(2, 4, {-8}));
    EXPECT_TRUE(r7.simple);
    EXPECT_EQ(r7.dimension, 1);
}

TEST(Classify, Dim5Examples) {
    IntPoly m{32, 2, 1};
    WeilCandidate c{Int(2), 5, 5, gen::tuple_of(m.pow(5))};
    auto d = classify_dim5(c);
    EXPECT_TRUE(d.accepted);
    EXPECT_EQ(d.label, "I(1)");
    auto r = classify(c);
    EXPECT_TRUE(r.simple);
    EXPECT_EQ(r.dimension, 5);
    EXPECT_EQ(r.case_label, "I(1)");

    WeilCandidate c8{Int(2), 5, 5, gen::tuple_of(IntPoly{32, 8, 1}.pow(5))};
    EXPECT_FALSE(classify_dim5(c8).accepted);
    EXPECT_FALSE(classify(c8).simple);

    WeilCandidate prod{Int(2), 1, 5, gen::tuple_of(IntPoly{2, 1, 1}.pow(3) * IntPoly{2, -1, 1}.pow(2))};
    EXPECT_FALSE(classify_dim5(prod).accepted);
    EXPECT_THROW(classify_dim5(cand(2, 1, {1})), ShapeError);
}

// Elliptic curves: classification of t^2 + a t + q against Waterhouse's list,
// and against point counts over prime fields.
TEST(Classify, EllipticOracle) {
    for (long p : {2, 3, 5, 7, 11, 13})
        for (int n = 1; n <= 4; ++n) {
            Int q = ipow(Int(p), static_cast<unsigned long>(n));
            if (q > 3000) continue;
            Int B = isqrt(4 * q);
            for (long a = -B.get_si(); a <= B.get_si(); ++a) {
                auto r = classify(cand(p, n, {a}));
                ASSERT_TRUE(r.weil);
                bool elliptic = r.simple && r.dimension == 1;
                EXPECT_EQ(elliptic, oracle::waterhouse_trace(p, n, a)) << "p=" << p << " n=" << n << " a=" << a;
            }
        }
    for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
        auto traces = elliptic_trace_oracle(p);
        Int B = isqrt(Int(4 * p));
        for (long a = -B.get_si(); a <= B.get_si(); ++a) {
            auto r = classify(cand(p, 1, {a}));
            bool occurs = traces.count(-a) > 0;
            EXPECT_EQ(r.simple && r.dimension == 1, occurs) << "p=" << p << " a=" << a;
        }
    }
}

TEST(Classify, StructuralInvariants) {
    std::mt19937_64 rng(71);
    int simple = 0;
    for (int trial = 0; trial < 400; ++trial) {
        long p = std::vector<long>{2, 3, 5}[rng() % 3];
        int n = 1 + static_cast<int>(rng() % 4);
        Int q = ipow(Int(p), static_cast<unsigned long>(n));
        int g = 1 + static_cast<int>(rng() % 4);
        IntPoly f = (trial % 2) ? gen::palindromic_product(rng, q, g, false) : IntPoly();
        WeilCandidate c;
        if (f.is_zero()) {
            auto rc = gen::real_root_candidate(rng, p, n, g);
            if (!rc) continue;
            c = *rc;
        } else {
            c = WeilCandidate{Int(p), n, g, gen::tuple_of(f)};
        }
        auto r = classify(c);
        ASSERT_TRUE(r.weil);
        if (!r.simple) continue;
        ++simple;
        EXPECT_EQ(r.min_poly.pow(static_cast<unsigned>(r.multiplicity)), r.f);
        EXPECT_EQ((2 * r.dimension) % r.multiplicity, 0);
        EXPECT_EQ(r.dimension, g);
        if (!r.real_root) {
            EXPECT_EQ(c.n % r.multiplicity, 0);
        }
        int lcd = 1;
        for (const auto& b : r.invariants) lcd = std::lcm(lcd, static_cast<int>(b.value.get_den().get_si()));
        EXPECT_EQ(lcd, r.multiplicity);
    }
    EXPECT_GT(simple, 50);
}

// Central cross-check in dimension 5: the explicit criterion accepts exactly
// the simple classes (classify hard-fails otherwise), and each accepted label's
// valuation pattern is the Newton polygon of f.
TEST(Classify, Dim5CriterionMatchesInvariants) {
    std::mt19937_64 rng(83);
    auto slopes = expected_slopes();
    std::map<std::string, int> labels;
    int tried = 0;
    for (int trial = 0; trial < 4000 && tried < 400; ++trial) {
        long p = std::vector<long>{2, 3, 5}[rng() % 3];
        int n = 1 + static_cast<int>(rng() % 5);
        auto c = gen::real_root_candidate(rng, p, n, 5);
        if (!c) continue;
        ++tried;
        IsogenyClassReport r;
        ASSERT_NO_THROW(r = classify(*c)) << "p=" << p << " n=" << n;
        ++labels[r.case_label.substr(0, r.case_label.find('('))];
        if (r.case_label.rfind("II(", 0) != 0) continue;
        int k = std::stoi(r.case_label.substr(3));
        std::map<Rat, int> got;
        for (const auto& v : newton_polygon(r.f, Int(p)).root_valuations()) ++got[v / n];
        EXPECT_EQ(got, slopes[k]) << r.case_label << " " << r.f.to_string();
    }
    EXPECT_GT(tried, 200);
    EXPECT_GT(labels["II"], 50);
    EXPECT_GT(labels["rejected"], 10);
}
