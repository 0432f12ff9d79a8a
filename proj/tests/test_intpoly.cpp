#include <weilpoly/factor_z.hpp>
#include <weilpoly/intpoly.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace weilpoly;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long bound) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<Int> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coef(rng);
    while (c.back() == 0) c.back() = coef(rng);
    return IntPoly(c);
}

}  // namespace

TEST(IntPoly, ArithmeticAndNormalization) {
    IntPoly a{1, 2, 0, 0};
    EXPECT_EQ(a.degree(), 1);
    IntPoly b{-1, 1};
    EXPECT_EQ((a * b), (IntPoly{-1, -1, 2}));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((IntPoly{1, 1}).pow(3), (IntPoly{1, 3, 3, 1}));
    EXPECT_EQ((IntPoly{7, 3, 1}).to_string(), "t^2 + 3t + 7");
    EXPECT_EQ((IntPoly{-3, 0, 1}).to_csv(), "-3,0,1");
    EXPECT_EQ(parse_poly_csv("-3, 0,1"), (IntPoly{-3, 0, 1}));
    EXPECT_THROW(parse_poly_csv("1,,2"), ShapeError);
}

TEST(IntPoly, ExactQuotientAndGcd) {
    IntPoly f = IntPoly{1, 0, 1} * IntPoly{1, 1, 1};
    EXPECT_EQ(exact_quotient(f, IntPoly{1, 1, 1}), (IntPoly{1, 0, 1}));
    EXPECT_THROW(exact_quotient(f, IntPoly{1, 1}), ShapeError);
    IntPoly g = IntPoly{2, 1} * IntPoly{1, 0, 1};
    EXPECT_EQ(gcd(f, g), (IntPoly{1, 0, 1}));
    EXPECT_EQ(gcd(IntPoly{2, 4}, IntPoly{6, 12}), (IntPoly{2, 4}));
}

TEST(IntPoly, SquarefreeDecomposition) {
    IntPoly a{1, 1}, b{-2, 0, 1}, c{1, 1, 1};
    IntPoly f = Int(3) * a * b.pow(2) * c.pow(3);
    auto dec = squarefree_decomposition(f);
    ASSERT_EQ(dec.size(), 3u);
    EXPECT_EQ(dec[0], (std::pair<IntPoly, int>{a, 1}));
    EXPECT_EQ(dec[1], (std::pair<IntPoly, int>{b, 2}));
    EXPECT_EQ(dec[2], (std::pair<IntPoly, int>{c, 3}));
    EXPECT_EQ(squarefree_part(f), a * b * c);
}

TEST(FunctionalEquation, Examples) {
    EXPECT_TRUE(functional_equation_holds(IntPoly{7, 3, 1}, 7, 1));
    EXPECT_FALSE(functional_equation_holds(IntPoly{4, 1, 0, 1, 1}, 2, 2));
    IntPoly cube = IntPoly{8, 2, 1}.pow(3);
    // Direct check of c_(2g-i) = q^(g-i) c_i on the expansion.
    for (int i = 0; i <= 3; ++i) EXPECT_EQ(cube.coeff(i), ipow(Int(8), 3 - i) * cube.coeff(6 - i));
    EXPECT_TRUE(functional_equation_holds(cube, 8, 3));
    EXPECT_THROW(functional_equation_holds(IntPoly{1, 2, 2}, 2, 1), ShapeError);
    EXPECT_THROW(functional_equation_holds(IntPoly{1, 2, 1, 1}, 2, 1), ShapeError);
    EXPECT_THROW(functional_equation_holds(IntPoly{7, 3, 1}, 7, 2), ShapeError);
}

TEST(RealWeilTransform, Examples) {
    EXPECT_EQ(real_weil_transform(IntPoly{5, 3, 1}, 5), (IntPoly{3, 1}));
    EXPECT_EQ(real_weil_transform(IntPoly{4, 4, 5, 2, 1}, 2), (IntPoly{1, 2, 1}));
    // (t^2 - 2)^2 = t^2 (x^2 - 8) with x = t + 2/t: both roots x = +-2 sqrt 2.
    IntPoly sq = IntPoly{-2, 0, 1}.pow(2);
    IntPoly h = real_weil_transform(sq, 2);
    EXPECT_EQ(h, (IntPoly{-8, 0, 1}));
    EXPECT_EQ(expand_real_weil(h, 2), sq);
    EXPECT_THROW(real_weil_transform(IntPoly{4, 1, 0, 1, 1}, 2), ShapeError);
}

TEST(RealWeilTransform, RoundTripProperty) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Int q = std::uniform_int_distribution<int>(2, 30)(rng);
        IntPoly h = random_poly(rng, 6, 50);
        std::vector<Int> c = h.coeffs();
        c.back() = 1;
        h = IntPoly(c);
        IntPoly f = expand_real_weil(h, q);
        ASSERT_TRUE(functional_equation_holds(f, q, h.degree()));
        EXPECT_EQ(real_weil_transform(f, q), h);
    }
}

TEST(Sturm, Examples) {
    EXPECT_EQ(sturm_count(IntPoly{-2, 0, 1}, Rat(-2), Rat(2)), 2);
    EXPECT_EQ(sturm_count(IntPoly{1, 0, 1}, std::nullopt, std::nullopt), 0);
    EXPECT_EQ(sturm_count(IntPoly{0, -3, 0, 1}, Rat(0), Rat(2)), 1);
    // Half-open: the root at 0 is excluded on the left, included on the right.
    EXPECT_EQ(sturm_count(IntPoly{0, -3, 0, 1}, Rat(-1), Rat(0)), 1);
    EXPECT_EQ(sturm_count(IntPoly{0, -3, 0, 1}, std::nullopt, std::nullopt), 3);
    // Multiple roots are counted once.
    EXPECT_EQ(sturm_count(IntPoly{-1, 1}.pow(3) * IntPoly{1, 1}, std::nullopt, std::nullopt), 2);
    EXPECT_EQ(sturm_count(IntPoly{-1, 0, 1}, Rat(1, 2), Rat(1)), 1);
    EXPECT_EQ(sturm_count(IntPoly{-1, 0, -1, 0, 2}, std::nullopt, std::nullopt), 2);
    EXPECT_THROW(sturm_count(IntPoly{}, std::nullopt, std::nullopt), ShapeError);
}

TEST(Sturm, AgreesWithDescartesOracle) {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 10000; ++trial) {
        IntPoly h = random_poly(rng, 10, 10000);
        ASSERT_EQ(sturm_count(h, std::nullopt, std::nullopt), oracle::real_root_count(h)) << h.to_string();
    }
}

TEST(Sturm, SquarefreeCountsEachRootOnce) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        IntPoly r1{std::uniform_int_distribution<long>(-9, 9)(rng), 1};
        IntPoly r2{std::uniform_int_distribution<long>(-9, 9)(rng), 1};
        IntPoly h = r1.pow(2) * r2 * IntPoly{1, 0, 1};
        bool squarefree = gcd(h, derivative(h)).degree() == 0;
        EXPECT_FALSE(squarefree);
        int distinct = (r1 == r2) ? 1 : 2;
        EXPECT_EQ(sturm_count(h, std::nullopt, std::nullopt), distinct);
        EXPECT_EQ(sturm_count(squarefree_part(h), std::nullopt, std::nullopt), distinct);
    }
}

TEST(FactorModP, Examples) {
    auto f1 = factor_mod_p(FpPoly::from_int(IntPoly{1, 0, 1}, 2), 1);
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0].factor, FpPoly(2, {1, 1}));
    EXPECT_EQ(f1[0].multiplicity, 2);
    auto f2 = factor_mod_p(FpPoly::from_int(IntPoly{1, 0, 1}, 5), 1);
    ASSERT_EQ(f2.size(), 2u);
    EXPECT_EQ(f2[0].factor, FpPoly(5, {2, 1}));
    EXPECT_EQ(f2[1].factor, FpPoly(5, {3, 1}));
    auto f3 = factor_mod_p(FpPoly::from_int(IntPoly{1, 1, 0, 0, 1}, 2), 1);
    ASSERT_EQ(f3.size(), 1u);
    EXPECT_EQ(f3[0].factor.degree(), 4);
}

TEST(FactorModP, ProductProperty) {
    std::mt19937_64 rng(3);
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL}) {
        for (int trial = 0; trial < 60; ++trial) {
            IntPoly f = random_poly(rng, 12, 1000);
            FpPoly fb = FpPoly::from_int(f, p);
            if (fb.degree() < 1) continue;
            auto fs = factor_mod_p(fb, trial);
            FpPoly prod = FpPoly::one(p);
            for (auto& fac : fs) {
                // Each factor is irreducible: distinct-degree splitting leaves it whole.
                auto ddf = distinct_degree_factor(fac.factor);
                ASSERT_EQ(ddf.size(), 1u);
                EXPECT_EQ(ddf[0].second, fac.factor.degree());
                for (int i = 0; i < fac.multiplicity; ++i) prod = prod * fac.factor;
            }
            EXPECT_EQ(prod, fb.monic());
        }
    }
}

TEST(Hensel, LiftsFactorization) {
    IntPoly f = IntPoly{-2, 0, 1} * IntPoly{3, 1, 1} * IntPoly{-7, 1};
    u64 p = 5;
    auto fs = factor_mod_p(FpPoly::from_int(f, p), 1);
    std::vector<FpPoly> parts;
    for (auto& x : fs) parts.push_back(x.factor);
    auto lifted = hensel_lift(f, parts, p, 8);
    Int m = ipow(Int(5), 8);
    IntPoly prod = IntPoly::constant(1);
    for (auto& g : lifted) prod = mod_poly(prod * g, m);
    EXPECT_EQ(prod, mod_poly(f, m));
}

TEST(RationalIrreducibility, Examples) {
    auto v1 = rational_irreducibility(IntPoly{1, 1, 1});
    EXPECT_EQ(v1.status, IrreducibilityStatus::irreducible);
    IntPoly f = IntPoly{1, 0, 1} * IntPoly{1, 1, 1};
    auto v2 = rational_irreducibility(f);
    ASSERT_EQ(v2.status, IrreducibilityStatus::composite_of);
    ASSERT_EQ(v2.factors.size(), 2u);
    EXPECT_EQ(v2.factors[0], (IntPoly{1, 0, 1}));
    EXPECT_EQ(v2.factors[1], (IntPoly{1, 1, 1}));
    EXPECT_THROW(rational_irreducibility(IntPoly{2, 4}), ShapeError);
    // x^4 + 1 splits modulo every prime but is irreducible over Q.
    EXPECT_EQ(rational_irreducibility(IntPoly{1, 0, 0, 0, 1}).status, IrreducibilityStatus::irreducible);
    // Swinnerton-Dyer style: (x^2-2)(x^2-3) is composite, x^4-10x^2+1 is not.
    EXPECT_EQ(rational_irreducibility(IntPoly{1, 0, -10, 0, 1}).status, IrreducibilityStatus::irreducible);
}

TEST(RationalIrreducibility, CompositeProductProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly a = random_poly(rng, 4, 30), b = random_poly(rng, 5, 30);
        IntPoly f = primitive_part(a * b * (trial % 3 == 0 ? a : IntPoly::constant(1)));
        if (f.degree() < 1) continue;
        auto v = rational_irreducibility(f);
        if (v.status == IrreducibilityStatus::composite_of) {
            IntPoly prod = IntPoly::constant(1);
            for (auto& g : v.factors) prod *= g;
            EXPECT_EQ(prod, f);
            for (auto& g : v.factors) EXPECT_EQ(rational_irreducibility(primitive_part(g)).status,
                                                IrreducibilityStatus::irreducible);
        } else {
            EXPECT_TRUE(primitive_part(a).degree() == 0 || primitive_part(b).degree() == 0);
        }
    }
}

TEST(FactorOverQ, ReconstructsInput) {
    IntPoly f = Int(-6) * IntPoly{-1, 1}.pow(2) * IntPoly{2, 0, 3} * IntPoly{1, 1, 0, 1};
    auto fz = factor_over_q(f);
    EXPECT_EQ(fz.expand(), f);
    EXPECT_EQ(fz.unit, -6);
    ASSERT_EQ(fz.factors.size(), 3u);
    EXPECT_EQ(fz.factors[0].second, 2);
}
