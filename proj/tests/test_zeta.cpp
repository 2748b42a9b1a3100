#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace ascart;
using namespace testing_support;

namespace {

SlopePolygon poly(std::vector<std::pair<Rational, int>> parts) { return SlopePolygon::from(std::move(parts)); }

}  // namespace

TEST(CountPoints, XSquaredOverF3) {
    const CurveSpec spec = polynomial_curve(3, {0, 0, 1});
    EXPECT_EQ(count_points(spec, 1), 4u);
    EXPECT_EQ(count_points(spec, 2), 16u);
}

TEST(CountPoints, RationalCurve) {
    for (std::uint32_t p : {3u, 5u, 7u}) EXPECT_EQ(count_points(polynomial_curve(p, {0, 1}), 1), p + 1);
    EXPECT_EQ(count_points(polynomial_curve(3, {0, 1}, 2), 2), 82u);
}

TEST(CountPoints, MatchesBruteForceOverBaseField) {
    std::mt19937_64 rng(31);
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {5u, 2u}, {7u, 1u}, {13u, 1u}}) {
        for (int i = 0; i < 20; ++i) {
            CurveSpec spec = random_spec(rng, p, k, 3, 5);
            spec.poles[0].coeffs[0] = spec.field->element(uniform_below(rng, spec.field->size()));  // constant term
            EXPECT_EQ(count_points(spec, 1), brute_force_points(spec)) << format_spec(spec);
        }
    }
}

TEST(CountPoints, ExtensionCountMatchesBruteForceOverBiggerField) {
    // A curve with coefficients in F_p counted over F_{p^2} equals the same curve written over GF(p^2).
    std::mt19937_64 rng(32);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        for (int i = 0; i < 10; ++i) {
            const CurveSpec small = random_spec(rng, p, 1, 2, 4);
            const FieldPtr big = Field::create(p, 2);
            CurveSpec lifted{big, {}};
            for (const auto& pole : small.poles) {
                std::vector<FieldElement> c;
                for (const auto& e : pole.coeffs) c.push_back(big->from_int(static_cast<std::int64_t>(e.code())));
                lifted.poles.push_back({pole.location ? std::optional<FieldElement>(big->from_int(static_cast<std::int64_t>(pole.location->code())))
                                                      : std::nullopt,
                                        c});
            }
            EXPECT_EQ(count_points(small, 2), brute_force_points(lifted)) << format_spec(small);
        }
    }
}

TEST(LPolynomial, XSquaredOverF3) {
    const LPolynomial L = l_polynomial(polynomial_curve(3, {0, 0, 1}));
    EXPECT_EQ(L.coeffs, (std::vector<std::int64_t>{1, 0, 3}));
    EXPECT_TRUE(L.satisfies_functional_equation());
    EXPECT_EQ(predicted_counts(L, 2), (std::vector<std::int64_t>{4, 16}));
}

TEST(LPolynomial, RationalCurve) {
    const LPolynomial L = l_polynomial(polynomial_curve(5, {0, 1}));
    EXPECT_EQ(L.coeffs, (std::vector<std::int64_t>{1}));
}

TEST(LPolynomial, TwoPoleCurveCountsUpToTwiceGenus) {
    const CurveSpec spec = two_pole_curve();
    const LPolynomial L = l_polynomial(spec);
    ASSERT_EQ(L.coeffs.size(), 7u);
    EXPECT_TRUE(L.satisfies_functional_equation());
    const auto predicted = predicted_counts(L, 6);
    for (unsigned s = 1; s <= 6; ++s) EXPECT_EQ(static_cast<std::int64_t>(count_points(spec, s)), predicted[s - 1]) << "s=" << s;
}

TEST(LPolynomial, InconsistentCounts) {
    try {
        l_polynomial_from_counts(3, 2, {4, 7});  // 2 c_2 = S_2 + S_1 c_1 must be even
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentCounts);
    }
}

TEST(NewtonPolygon, Examples) {
    EXPECT_EQ(newton_polygon({3, 1, {1, 0, 3}}, 3), poly({{Rational(1, 2), 2}}));
    EXPECT_EQ(newton_polygon({3, 1, {1, -1, 3}}, 3), poly({{Rational(0), 1}, {Rational(1), 1}}));
    EXPECT_EQ(newton_polygon({3, 0, {1}}, 3).length(), 0);
}

TEST(HodgePolygon, Examples) {
    EXPECT_EQ(hodge_polygon({2}), poly({{Rational(1, 2), 1}}));
    EXPECT_EQ(hodge_polygon({2, 1}), poly({{Rational(0), 1}, {Rational(1, 2), 1}, {Rational(1), 1}}));
    EXPECT_EQ(hodge_polygon({3}), poly({{Rational(1, 3), 1}, {Rational(2, 3), 1}}));
}

TEST(ComparePolygons, Examples) {
    EXPECT_EQ(compare_polygons(poly({{Rational(1, 2), 2}}), hodge_polygon({2}), 3), PolygonComparison::Equal);
    EXPECT_EQ(compare_polygons(poly({{Rational(0), 2}, {Rational(1, 2), 2}, {Rational(1), 2}}), hodge_polygon({2, 1}), 3),
              PolygonComparison::Equal);
    EXPECT_EQ(compare_polygons(poly({{Rational(1), 2}}), hodge_polygon({2}), 3), PolygonComparison::NpAbove);
    try {
        compare_polygons(poly({{Rational(1, 2), 3}}), hodge_polygon({2}), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotShrinkable);
    }
}

TEST(Zeta, PolygonPropertiesOnRandomCurves) {
    std::mt19937_64 rng(33);
    int applicable = 0;
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {7u, 1u}}) {
        for (int i = 0; i < 25; ++i) {
            CurveSpec spec = random_spec(rng, p, k, 2, p == 3 ? 4 : 3);
            const CurveInvariants inv = validate(spec);
            double size = 1;
            for (int s = 0; s < inv.g; ++s) size *= static_cast<double>(spec.field->size());
            if (size > 2e6) continue;
            const LPolynomial L = l_polynomial(spec);
            EXPECT_TRUE(L.satisfies_functional_equation());
            const SlopePolygon np = newton_polygon(L, p);
            EXPECT_EQ(np.length(), 2 * inv.g);
            EXPECT_EQ(np.length(), inv.D * static_cast<int>(p - 1));
            EXPECT_EQ(np.multiplicity(Rational(0)), inv.s);
            for (const auto& [slope, mult] : np.slopes) EXPECT_EQ(np.multiplicity(Rational(1) + Rational(-slope.num, slope.den)), mult);
            const SlopePolygon hp = hodge_polygon(spec.orders());
            EXPECT_EQ(hp.length(), inv.D);
            if (inv.theorem_applicable) {
                ++applicable;
                EXPECT_EQ(compare_polygons(np, hp, p), PolygonComparison::Equal) << format_spec(spec);
            }
        }
    }
    EXPECT_GT(applicable, 10);
}

TEST(Zeta, PredictedCountsBeyondGenusMatchEnumeration) {
    std::mt19937_64 rng(34);
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}}) {
        for (int i = 0; i < 8; ++i) {
            const CurveSpec spec = random_spec(rng, p, k, 2, 3);
            const int g = validate(spec).g;
            if (g == 0 || std::pow(static_cast<double>(p), 2 * g) > 2e6) continue;
            const auto predicted = predicted_counts(l_polynomial(spec), 2 * g);
            for (int s = g + 1; s <= 2 * g; ++s)
                EXPECT_EQ(static_cast<std::int64_t>(count_points(spec, static_cast<unsigned>(s))), predicted[static_cast<std::size_t>(s - 1)]);
        }
    }
}
