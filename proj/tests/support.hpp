#pragma once

// Shared helpers for the test suites: curve builders, random generators and
// brute-force oracles that do not go through the library code they check.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ascart/io.hpp"
#include "ascart/sweep.hpp"

namespace testing_support {

using namespace ascart;

inline std::vector<FieldElement> ints(const Field& F, std::initializer_list<std::int64_t> v) {
    std::vector<FieldElement> out;
    for (auto c : v) out.push_back(F.from_int(c));
    return out;
}

/// y^p - y = sum c_i x^i, constant term first.
inline CurveSpec polynomial_curve(std::uint32_t p, std::initializer_list<std::int64_t> coeffs, unsigned k = 1) {
    const FieldPtr F = Field::create(p, k);
    return CurveSpec{F, {PoleDatum::infinite(ints(*F, coeffs))}};
}

/// p = 3, f = x^2 + 1/(x - 1)
inline CurveSpec two_pole_curve() {
    const FieldPtr F = Field::create(3, 1);
    return CurveSpec{F, {PoleDatum::infinite(ints(*F, {0, 0, 1})), PoleDatum::finite(F->one(), ints(*F, {1}))}};
}

inline RatFunc random_ratfunc(const FieldPtr& F, std::mt19937_64& rng, int max_num = 4, int max_den = 3) {
    auto poly = [&](int deg, bool monic) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(deg) + 1);
        for (auto& v : c) v = uniform_below(rng, F->size());
        if (monic) c.back() = 1;
        return Poly(F, c);
    };
    const int dn = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_num) + 1));
    const int dd = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_den) + 1));
    return RatFunc(poly(dn, false), poly(dd, true));
}

/// Rational function whose denominator splits over F (so partial fractions exist).
inline RatFunc random_split_ratfunc(const FieldPtr& F, std::mt19937_64& rng, int max_poles = 2, int max_order = 3) {
    Poly num(F);
    std::vector<std::uint64_t> nc(1 + uniform_below(rng, 5));
    for (auto& v : nc) v = uniform_below(rng, F->size());
    num = Poly(F, nc);
    Poly den = Poly::one(F);
    const int poles = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_poles) + 1));
    for (int i = 0; i < poles; ++i) {
        const FieldElement e = F->element(uniform_below(rng, F->size()));
        const auto order = 1 + uniform_below(rng, static_cast<std::uint64_t>(max_order));
        den = den * Poly::linear(F, e).pow(order);
    }
    return RatFunc(num, den);
}

/// Random valid spec with random orders (none divisible by p).
inline CurveSpec random_spec(std::mt19937_64& rng, std::uint32_t p, unsigned k, int max_poles = 3, int max_order = 6) {
    const FieldPtr F = Field::create(p, k);
    const int poles = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::min<std::uint64_t>(max_poles, F->size() + 1))));
    std::vector<int> orders;
    for (int j = 0; j < poles; ++j) {
        int d;
        do d = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_order)));
        while (d % static_cast<int>(p) == 0);
        orders.push_back(d);
    }
    return random_curve(F, orders, rng);
}

// Oracles -------------------------------------------------------------------

/// Genus from the pole orders: (p-1)/2 * (sum (d_j + 1) - 2).
inline int genus_oracle(std::uint32_t p, const std::vector<int>& orders) {
    int D = -2;
    for (int d : orders) D += d + 1;
    return D * static_cast<int>(p - 1) / 2;
}

/// Closed-form a-number, written out independently of the library.
inline std::optional<int> a_formula_oracle(std::uint32_t p, const std::vector<int>& orders) {
    int L = 1;
    for (int d : orders) L = std::lcm(L, d);
    if ((p - 1) % static_cast<std::uint32_t>(L) != 0) return std::nullopt;
    const int pm = static_cast<int>(p) - 1;
    int a = 0;
    for (int d : orders) a += d % 2 == 0 ? pm * d / 4 : pm * (d * d - 1) / (4 * d);
    return a;
}

/// Rank over a prime field by plain Gaussian elimination on int64 entries.
inline int prime_field_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    auto inv = [&](std::int64_t v) {
        std::int64_t r = 1, b = v % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        const std::int64_t iv = inv(a[static_cast<std::size_t>(rank)][c]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][c] % p == 0) continue;
            const std::int64_t f = a[r][c] * iv % p;
            for (std::size_t cc = 0; cc < cols; ++cc)
                a[r][cc] = ((a[r][cc] - f * a[static_cast<std::size_t>(rank)][cc]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<std::int64_t>> as_int_matrix(const CartierMatrix& M) {
    std::vector<std::vector<std::int64_t>> out(M.size(), std::vector<std::int64_t>(M.size()));
    for (std::size_t r = 0; r < M.size(); ++r)
        for (std::size_t c = 0; c < M.size(); ++c) out[r][c] = static_cast<std::int64_t>(M.code(r, c));
    return out;
}

/// Points over the base field by brute force: affine pairs (x, y) with y^p - y = f(x),
/// one point over each pole.
inline std::uint64_t brute_force_points(const CurveSpec& spec) {
    const Field& F = *spec.field;
    const RatFunc f = f_rational(spec);
    std::uint64_t n = spec.poles.size();
    for (std::uint64_t xc = 0; xc < F.size(); ++xc) {
        const FieldElement x = F.element(xc);
        const FieldElement den = f.den()(x);
        if (den.is_zero()) continue;
        const FieldElement v = f.num()(x) / den;
        for (std::uint64_t yc = 0; yc < F.size(); ++yc) {
            const FieldElement y = F.element(yc);
            if (y.pow(F.characteristic()) - y == v) ++n;
        }
    }
    return n;
}

}  // namespace testing_support
