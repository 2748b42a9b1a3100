#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace ascart;
using namespace testing_support;

namespace {

/// Termwise C on a polynomial, straight from C(a x^n dx) = a^(1/p) x^((n+1)/p - 1) dx.
Poly cartier_poly_oracle(const Poly& g) {
    const FieldPtr& F = g.field_ptr();
    const std::size_t p = F->characteristic();
    Poly out(F);
    for (std::size_t n = p - 1; n < g.size(); n += p)
        out += Poly::monomial(F, g.coeff(n).pth_root(), (n + 1) / p - 1);
    return out;
}

/// Random valid spec whose orders satisfy p = 1 mod L.
CurveSpec random_applicable_spec(std::mt19937_64& rng, std::uint32_t p, unsigned k) {
    std::vector<int> allowed;
    for (int d = 1; d < static_cast<int>(p); ++d)
        if ((p - 1) % static_cast<std::uint32_t>(d) == 0) allowed.push_back(d);
    const FieldPtr F = Field::create(p, k);
    const auto poles = 1 + uniform_below(rng, std::min<std::uint64_t>(3, F->size() + 1));
    std::vector<int> orders;
    for (std::uint64_t j = 0; j < poles; ++j) orders.push_back(allowed[uniform_below(rng, allowed.size())]);
    return random_curve(F, orders, rng);
}

}  // namespace

TEST(CartierPoly, Examples) {
    const auto F3 = Field::create(3, 1);
    EXPECT_EQ(cartier_poly(Poly::monomial(F3, F3->one(), 2)), Poly::one(F3));
    EXPECT_TRUE(cartier_poly(Poly::one(F3)).is_zero());
    const auto F7 = Field::create(7, 1);
    EXPECT_EQ(cartier_poly(Poly::monomial(F7, F7->one(), 6)), Poly::one(F7));
    EXPECT_TRUE(cartier_poly(Poly::monomial(F7, F7->one(), 9)).is_zero());
    EXPECT_EQ(cartier_poly(Poly::monomial(F7, F7->one(), 13)), Poly::x(F7));
}

TEST(CartierPoly, MatchesTermwiseOracle) {
    std::mt19937_64 rng(12);
    for (auto [p, k] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 1u}}) {
        const auto F = Field::create(p, k);
        for (int i = 0; i < 100; ++i) {
            const Poly g = random_ratfunc(F, rng, 30, 0).num();
            EXPECT_EQ(cartier_poly(g), cartier_poly_oracle(g));
        }
    }
}

TEST(CartierRational, Examples) {
    const auto F = Field::create(5, 1);
    const FieldElement e = F->from_int(2);
    const RatFunc log_form(Poly::one(F), Poly::linear(F, e));
    EXPECT_EQ(cartier_rational(log_form), log_form);
    const auto F3 = Field::create(3, 1);
    EXPECT_EQ(cartier_rational(RatFunc(Poly::monomial(F3, F3->one(), 2))), RatFunc(Poly::one(F3)));
    EXPECT_TRUE(cartier_rational(RatFunc(Poly::one(F3), Poly::linear(F3, F3->one()).pow(2))).is_zero());
}

TEST(CartierLocal, Examples) {
    const auto F = Field::create(3, 1);
    const FieldElement e = F->from_int(2);
    auto pole_power = [&](int n) {
        std::vector<FieldElement> c(static_cast<std::size_t>(n), F->zero());
        c.back() = F->one();
        return PartialFraction(Poly(F), {PoleTail{e, c}});
    };
    EXPECT_EQ(cartier_local(pole_power(4)), pole_power(2));
    EXPECT_TRUE(cartier_local(pole_power(2)).tails.empty());
    EXPECT_EQ(cartier_local(pole_power(1)), pole_power(1));
}

TEST(CartierLocal, AgreesWithRationalPipeline) {
    std::mt19937_64 rng(13);
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {7u, 1u}}) {
        const auto F = Field::create(p, k);
        for (int i = 0; i < 100; ++i) {
            const RatFunc g = random_split_ratfunc(F, rng, 3, 2 * static_cast<int>(p) + 1);
            EXPECT_EQ(assemble(cartier_local(partial_fractions(g))), cartier_rational(g)) << g.to_string();
        }
    }
}

TEST(CartierAxioms, RandomRationalFunctions) {
    std::mt19937_64 rng(14);
    int trials = 0;
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {5u, 2u}, {7u, 1u}}) {
        const auto F = Field::create(p, k);
        for (int i = 0; i < 250; ++i, ++trials) {
            const RatFunc h = random_ratfunc(F, rng, 3, 2);
            const RatFunc g1 = random_ratfunc(F, rng), g2 = random_ratfunc(F, rng);
            const RatFunc dh = h.derivative();
            ASSERT_TRUE(cartier_rational(dh).is_zero()) << h.to_string();
            ASSERT_EQ(cartier_rational(h.pow(p - 1) * dh), dh) << h.to_string();
            ASSERT_EQ(cartier_rational(g1 + g2), cartier_rational(g1) + cartier_rational(g2));
            ASSERT_EQ(cartier_rational(h.pow(p) * g1), h * cartier_rational(g1));
            const FieldElement c = F->element(uniform_below(rng, F->size()));
            const RatFunc cg1(g1.num().scaled(c), g1.den());
            ASSERT_EQ(cartier_rational(cg1), RatFunc(cartier_rational(g1).num().scaled(c.pth_root()), cartier_rational(g1).den()));
        }
    }
    EXPECT_GE(trials, 1000);
}

TEST(CartierExpansion, BinomialCoefficients) {
    // (y^p - f)^2 = y^2p - 2 y^p f + f^2 over F_7
    const CartierExpansion e = cartier_expansion(7, 2);
    ASSERT_EQ(e.terms.size(), 3u);
    EXPECT_EQ(e.terms[0].coefficient, 1u);
    EXPECT_EQ(e.terms[0].f_power, 2);
    EXPECT_EQ(e.terms[1].coefficient, 5u);
    EXPECT_EQ(e.terms[2].coefficient, 1u);
    EXPECT_EQ(e.terms[2].y_power, 2);
}

TEST(CartierBasisForm, XCubedOverF7) {
    const CurveSpec spec = polynomial_curve(7, {0, 0, 0, 1});
    const auto F = spec.field;
    const MixedDifferential y2 = cartier_basis_form(spec, {0, 0, 2});
    ASSERT_EQ(y2.terms.size(), 1u);
    EXPECT_EQ(y2.terms.at(0), RatFunc(Poly::one(F)));
    const MixedDifferential y3 = cartier_basis_form(spec, {0, 0, 3});
    ASSERT_EQ(y3.terms.size(), 1u);
    EXPECT_EQ(y3.terms.at(1), RatFunc(Poly::constant(F, F->from_int(3))));
    EXPECT_TRUE(cartier_basis_form(spec, {0, 0, 0}).terms.empty());
}

TEST(ExpressInBasis, Examples) {
    const CurveSpec spec = polynomial_curve(7, {0, 0, 0, 1});
    const auto F = spec.field;
    MixedDifferential dx{F, {}};
    dx.add(0, RatFunc(Poly::one(F)));
    EXPECT_EQ(express_in_basis(spec, dx), ints(*F, {1, 0, 0, 0, 0, 0}));
    MixedDifferential ydx{F, {}};
    ydx.add(1, RatFunc(Poly::constant(F, F->from_int(3))));
    EXPECT_EQ(express_in_basis(spec, ydx), ints(*F, {0, 0, 3, 0, 0, 0}));
    MixedDifferential outside{F, {}};
    outside.add(0, RatFunc(Poly::monomial(F, F->one(), 3)));
    try {
        express_in_basis(spec, outside);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInSpan);
    }
}

TEST(CartierMatrix, XSquaredOverF3IsZero) {
    const CartierMatrix M = cartier_matrix(polynomial_curve(3, {0, 0, 1}));
    EXPECT_EQ(M.size(), 1u);
    EXPECT_EQ(M.nonzero_count(), 0u);
}

TEST(CartierMatrix, XCubedOverF7) {
    const CurveSpec spec = polynomial_curve(7, {0, 0, 0, 1});
    for (Pipeline pipeline : {Pipeline::Rational, Pipeline::Local}) {
        const CartierMatrix M = cartier_matrix(spec, pipeline);
        ASSERT_EQ(M.size(), 6u);
        EXPECT_EQ(M.nonzero_count(), 2u);
        const auto dx = *M.index_of({0, 0, 0}), ydx = *M.index_of({0, 0, 1});
        const auto y2dx = *M.index_of({0, 0, 2}), y3dx = *M.index_of({0, 0, 3});
        EXPECT_EQ(M.at(dx, y2dx), spec.field->one());
        EXPECT_EQ(M.at(ydx, y3dx), spec.field->from_int(3));
    }
}

TEST(CartierMatrix, TwoPoleCurve) {
    const CurveSpec spec = two_pole_curve();
    const CartierMatrix M = cartier_matrix(spec);
    EXPECT_EQ(M, cartier_matrix(spec, Pipeline::Local));
    const auto dx = *M.index_of({0, 0, 0}), x1 = *M.index_of({1, 1, 0}), x1y = *M.index_of({1, 1, 1});
    for (std::size_t r = 0; r < 3; ++r) EXPECT_TRUE(M.at(r, dx).is_zero());
    EXPECT_FALSE(M.at(x1, x1).is_zero());
    EXPECT_FALSE(M.at(x1y, x1y).is_zero());
}

TEST(CartierMatrix, PipelinesAgreeOnRandomSpecs) {
    std::mt19937_64 rng(15);
    int count = 0;
    for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {5u, 2u}, {7u, 1u}}) {
        for (int i = 0; i < 30; ++i, ++count) {
            const CurveSpec spec = random_spec(rng, p, k, 3, 5);
            CartierEngine engine(spec);
            EXPECT_EQ(engine.matrix(Pipeline::Rational), engine.matrix(Pipeline::Local)) << format_spec(spec);
        }
    }
    EXPECT_GE(count, 100);
}

TEST(CartierMatrix, MatchesDirectApplicationToBasisForms) {
    // y = y^p - f, so for r <= 2 the columns can be written out by hand
    std::mt19937_64 rng(16);
    for (int i = 0; i < 20; ++i) {
        const CurveSpec spec = random_spec(rng, 7, 1, 2, 4);
        const CartierMatrix M = cartier_matrix(spec);
        const RatFunc f = f_rational(spec);
        for (std::size_t c = 0; c < M.size(); ++c) {
            const BasisForm w = M.basis()[c];
            if (w.r > 2) continue;
            const RatFunc xb = coordinate_power(spec, w.j, w.b);
            MixedDifferential md{spec.field, {}};
            if (w.r == 0) md.add(0, cartier_rational(xb));
            if (w.r == 1) {
                md.add(1, cartier_rational(xb));
                md.add(0, -cartier_rational(xb * f));
            }
            if (w.r == 2) {
                md.add(2, cartier_rational(xb));
                md.add(1, -(cartier_rational(xb * f) + cartier_rational(xb * f)));
                md.add(0, cartier_rational(xb * f * f));
            }
            const auto coords = express_in_basis(spec, md);
            for (std::size_t r = 0; r < M.size(); ++r) EXPECT_EQ(M.at(r, c), coords[r]);
        }
    }
}

TEST(CartierMatrix, UnmodifiedMatrixHasSameRank) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const CurveSpec spec = random_spec(rng, i % 2 ? 3 : 5, 2, 3, 4);
        const CartierMatrix M = cartier_matrix(spec);
        EXPECT_EQ(rank(M), rank(M.cartier_manin()));
        EXPECT_EQ(M.twisted(static_cast<int>(spec.field->degree())), M);
    }
}

TEST(KeyTerm, Examples) {
    const CurveSpec x3 = polynomial_curve(7, {0, 0, 0, 1});
    const KeyTerm a = key_term(x3, {0, 0, 2});
    EXPECT_EQ(a.target, (BasisForm{0, 0, 0}));
    EXPECT_EQ(a.coefficient, x3.field->one());
    const KeyTerm b = key_term(x3, {0, 0, 3});
    EXPECT_EQ(b.target, (BasisForm{0, 0, 1}));
    EXPECT_EQ(b.coefficient, x3.field->from_int(3));
    const CurveSpec two = two_pole_curve();
    const KeyTerm c = key_term(two, {1, 1, 1});
    EXPECT_EQ(c.target, (BasisForm{1, 1, 1}));
    EXPECT_EQ(c.coefficient, two.field->one());
}

TEST(KeyTerm, Errors) {
    try {
        key_term(polynomial_curve(7, {0, 0, 0, 1}), {0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInH);
    }
    try {
        key_term(polynomial_curve(5, {0, 0, 0, 1}), {0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConditionNotSatisfied);
    }
}

TEST(KeyTerm, PivotStructureOnRandomSpecs) {
    std::mt19937_64 rng(18);
    for (auto [p, k] : {std::pair{3u, 2u}, {5u, 1u}, {7u, 1u}, {13u, 1u}}) {
        for (int i = 0; i < 25; ++i) {
            const CurveSpec spec = random_applicable_spec(rng, p, k);
            const CartierMatrix M = cartier_matrix(spec);
            const HAPartition part = partition_HA(spec);
            std::set<BasisForm> targets;
            std::vector<std::size_t> h_columns;
            for (const auto& w : part.H) {
                const KeyTerm kt = key_term(spec, M, w);
                EXPECT_FALSE(kt.coefficient.is_zero()) << format_spec(spec) << w.to_string();
                const auto row = *M.index_of(kt.target);
                for (std::size_t c = 0; M.basis()[c] < w; ++c) EXPECT_TRUE(M.at(row, c).is_zero());
                targets.insert(kt.target);
                h_columns.push_back(*M.index_of(w));
            }
            EXPECT_EQ(targets.size(), part.H.size());
            EXPECT_EQ(column_rank(M, h_columns), part.H.size());
            EXPECT_EQ(rank(M), part.H.size());
        }
    }
}
