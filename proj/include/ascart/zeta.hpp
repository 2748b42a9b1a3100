#pragma once

// Point counts, the L-polynomial, and Newton / Hodge slope polygons.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ascart/curve.hpp"

namespace ascart {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in zeta computation");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in zeta computation");
    return out;
}

inline std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t acc = 1;
    for (int i = 0; i < e; ++i) acc = checked_mul(acc, base);
    return acc;
}

}  // namespace detail

/// Exact rational with positive denominator in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return detail::checked_mul(a.num, b.den) <=> detail::checked_mul(b.num, a.den);
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return {detail::checked_add(detail::checked_mul(a.num, b.den), detail::checked_mul(b.num, a.den)),
                detail::checked_mul(a.den, b.den)};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {detail::checked_mul(a.num, b.num), detail::checked_mul(a.den, b.den)};
    }

    std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// Multiset of slopes, stored ascending with positive multiplicities.
struct SlopePolygon {
    std::vector<std::pair<Rational, int>> slopes;

    static SlopePolygon from(std::vector<std::pair<Rational, int>> parts) {
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SlopePolygon out;
        for (const auto& [s, mult] : parts) {
            if (mult <= 0) continue;
            if (!out.slopes.empty() && out.slopes.back().first == s) out.slopes.back().second += mult;
            else out.slopes.emplace_back(s, mult);
        }
        return out;
    }

    int length() const {
        int n = 0;
        for (const auto& part : slopes) n += part.second;
        return n;
    }

    int multiplicity(const Rational& s) const {
        for (const auto& [slope, mult] : slopes)
            if (slope == s) return mult;
        return 0;
    }

    /// Heights at each breakpoint, starting from (0, 0).
    std::vector<std::pair<int, Rational>> vertices() const {
        std::vector<std::pair<int, Rational>> out{{0, Rational(0)}};
        for (const auto& [s, mult] : slopes) out.emplace_back(out.back().first + mult, out.back().second + s * Rational(mult));
        return out;
    }

    /// Height of the polygon above x (0 <= x <= length).
    Rational height(int x) const {
        Rational h(0);
        int at = 0;
        for (const auto& [s, mult] : slopes) {
            const int step = std::min(mult, x - at);
            if (step <= 0) break;
            h = h + s * Rational(step);
            at += step;
        }
        return h;
    }

    friend bool operator==(const SlopePolygon&, const SlopePolygon&) = default;

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < slopes.size(); ++i) {
            if (i) out += ", ";
            out += slopes[i].first.to_string();
            if (slopes[i].second > 1) out += " x" + std::to_string(slopes[i].second);
        }
        return out + "}";
    }
};

/// L(u) = sum coeffs[i] u^i with coeffs[0] = 1 and degree 2g.
struct LPolynomial {
    std::int64_t q = 0;
    int g = 0;
    std::vector<std::int64_t> coeffs;

    friend bool operator==(const LPolynomial&, const LPolynomial&) = default;

    /// coeffs[2g - i] = q^{g - i} coeffs[i]
    bool satisfies_functional_equation() const {
        if (coeffs.size() != static_cast<std::size_t>(2 * g + 1) || coeffs[0] != 1) return false;
        for (int i = 0; i <= g; ++i)
            if (coeffs[static_cast<std::size_t>(2 * g - i)] != detail::checked_mul(detail::ipow(q, g - i), coeffs[static_cast<std::size_t>(i)]))
                return false;
        return true;
    }
};

/// Embeds GF(p^a) into GF(p^{a s}) by sending t to the smallest-code root of the small modulus.
class FieldEmbedding {
public:
    FieldEmbedding(const FieldPtr& small, unsigned s) : small_(small) {
        if (s == 1) {
            big_ = small;
            return;
        }
        big_ = Field::create(small->characteristic(), small->degree() * s);
        const Field& B = *big_;
        std::vector<std::uint64_t> mod_codes;
        for (auto c : small->modulus()) mod_codes.push_back(B.from_int(c).code());
        const Poly modulus(big_, mod_codes);
        std::uint64_t root = B.size();
        for (std::uint64_t c = 0; c < B.size(); ++c)
            if (modulus(B.element(c)).is_zero()) {
                root = c;
                break;
            }
        if (root == B.size()) throw std::logic_error("small modulus has no root in the extension");
        std::uint64_t power = 1;
        for (unsigned i = 0; i < small->degree(); ++i) {
            basis_images_.push_back(power);
            power = B.mul(power, root);
        }
    }

    const FieldPtr& big() const noexcept { return big_; }

    std::uint64_t operator()(std::uint64_t small_code) const {
        if (basis_images_.empty()) return small_code;
        const Field& B = *big_;
        const std::uint32_t p = small_->characteristic();
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < basis_images_.size(); ++i, small_code /= p)
            out = B.add(out, B.mul(B.from_int(static_cast<std::int64_t>(small_code % p)).code(), basis_images_[i]));
        return out;
    }

private:
    FieldPtr small_;
    FieldPtr big_;
    std::vector<std::uint64_t> basis_images_;
};

/// #X(F_{q^s}) = (m + 1) + p * #{x not a pole : Tr(f(x)) = 0}.
inline std::uint64_t count_points(const CurveSpec& spec, unsigned s) {
    const CurveInvariants inv = validate(spec);
    const FieldEmbedding embed(spec.field, s);
    const Field& B = *embed.big();
    struct EmbeddedPole {
        bool at_infinity;
        std::uint64_t location;
        std::vector<std::uint64_t> coeffs;
    };
    std::vector<EmbeddedPole> poles;
    for (const auto& pole : spec.poles) {
        EmbeddedPole e{pole.at_infinity(), pole.location ? embed(pole.location->code()) : 0, {}};
        for (const auto& c : pole.coeffs) e.coeffs.push_back(embed(c.code()));
        poles.push_back(std::move(e));
    }
    auto horner = [&](const std::vector<std::uint64_t>& c, std::uint64_t z) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = B.add(B.mul(acc, z), c[i]);
        return acc;
    };
    std::uint64_t affine = 0;
    for (std::uint64_t x = 0; x < B.size(); ++x) {
        bool at_pole = false;
        std::uint64_t value = 0;
        for (const auto& pole : poles) {
            if (pole.at_infinity) {
                value = B.add(value, horner(pole.coeffs, x));
                continue;
            }
            if (x == pole.location) {
                at_pole = true;
                break;
            }
            value = B.add(value, horner(pole.coeffs, B.inv(B.sub(x, pole.location))));
        }
        if (!at_pole && B.trace(value) == 0) ++affine;
    }
    return static_cast<std::uint64_t>(inv.m + 1) + spec.p() * affine;
}

inline std::int64_t field_order(const CurveSpec& spec) { return static_cast<std::int64_t>(spec.field->size()); }

/// Recovers L from N_1..N_g via log L(u) = sum (N_s - q^s - 1) u^s / s and the functional equation.
inline LPolynomial l_polynomial_from_counts(std::int64_t q, int g, const std::vector<std::uint64_t>& counts) {
    if (counts.size() < static_cast<std::size_t>(g)) throw std::invalid_argument("need N_1..N_g");
    std::vector<std::int64_t> S(static_cast<std::size_t>(g) + 1, 0);
    for (int s = 1; s <= g; ++s)
        S[static_cast<std::size_t>(s)] = static_cast<std::int64_t>(counts[static_cast<std::size_t>(s - 1)]) - detail::ipow(q, s) - 1;
    LPolynomial L{q, g, std::vector<std::int64_t>(static_cast<std::size_t>(2 * g) + 1, 0)};
    L.coeffs[0] = 1;
    for (int k = 1; k <= g; ++k) {
        std::int64_t acc = 0;
        for (int s = 1; s <= k; ++s)
            acc = detail::checked_add(acc, detail::checked_mul(S[static_cast<std::size_t>(s)], L.coeffs[static_cast<std::size_t>(k - s)]));
        if (acc % k != 0)
            throw Error(ErrorKind::InconsistentCounts, "coefficient " + std::to_string(k) + " of L is not an integer");
        L.coeffs[static_cast<std::size_t>(k)] = acc / k;
    }
    for (int k = g + 1; k <= 2 * g; ++k)
        L.coeffs[static_cast<std::size_t>(k)] = detail::checked_mul(detail::ipow(q, k - g), L.coeffs[static_cast<std::size_t>(2 * g - k)]);
    return L;
}

inline std::vector<std::uint64_t> point_counts(const CurveSpec& spec, int up_to) {
    std::vector<std::uint64_t> out;
    for (int s = 1; s <= up_to; ++s) out.push_back(count_points(spec, static_cast<unsigned>(s)));
    return out;
}

inline LPolynomial l_polynomial(const CurveSpec& spec) {
    const CurveInvariants inv = validate(spec);
    return l_polynomial_from_counts(field_order(spec), inv.g, point_counts(spec, inv.g));
}

/// N_1..N_up_to implied by L.
inline std::vector<std::int64_t> predicted_counts(const LPolynomial& L, int up_to) {
    auto c = [&](int i) -> std::int64_t { return i < static_cast<int>(L.coeffs.size()) ? L.coeffs[static_cast<std::size_t>(i)] : 0; };
    std::vector<std::int64_t> S(static_cast<std::size_t>(up_to) + 1, 0), out;
    for (int k = 1; k <= up_to; ++k) {
        std::int64_t acc = detail::checked_mul(k, c(k));
        for (int s = 1; s < k; ++s) acc = detail::checked_add(acc, -detail::checked_mul(S[static_cast<std::size_t>(s)], c(k - s)));
        S[static_cast<std::size_t>(k)] = acc;
        out.push_back(detail::checked_add(detail::ipow(L.q, k) + 1, acc));
    }
    return out;
}

/// Lower convex hull of (i, ord_p(c_i)/a), q = p^a.
inline SlopePolygon newton_polygon(const LPolynomial& L, std::uint32_t p) {
    if (L.coeffs.empty() || L.coeffs[0] != 1) throw std::invalid_argument("L must have constant term 1");
    int a = 0;
    for (std::int64_t q = L.q; q > 1; q /= p) ++a;
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;  // (i, ord_p c_i)
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
        std::int64_t c = L.coeffs[i];
        if (c == 0) continue;
        std::int64_t v = 0;
        while (c % static_cast<std::int64_t>(p) == 0) {
            c /= static_cast<std::int64_t>(p);
            ++v;
        }
        pts.emplace_back(static_cast<std::int64_t>(i), v);
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& m = hull.back();
            // drop m unless it lies strictly below the chord o-pt
            const std::int64_t cross = (m.first - o.first) * (pt.second - o.second) - (m.second - o.second) * (pt.first - o.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<std::pair<Rational, int>> parts;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const std::int64_t dx = hull[i].first - hull[i - 1].first;
        const std::int64_t dy = hull[i].second - hull[i - 1].second;
        parts.emplace_back(Rational(dy, dx * a), static_cast<int>(dx));
    }
    return SlopePolygon::from(std::move(parts));
}

/// Slopes 0 and 1 with multiplicity m, plus i/d_j for 1 <= i < d_j.
inline SlopePolygon hodge_polygon(const std::vector<int>& orders) {
    const int m = static_cast<int>(orders.size()) - 1;
    std::vector<std::pair<Rational, int>> parts{{Rational(0), m}, {Rational(1), m}};
    for (int d : orders)
        for (int i = 1; i < d; ++i) parts.emplace_back(Rational(i, d), 1);
    return SlopePolygon::from(std::move(parts));
}

enum class PolygonComparison { Equal, NpAbove, Incomparable };

inline std::string_view to_string(PolygonComparison c) {
    switch (c) {
        case PolygonComparison::Equal: return "equal";
        case PolygonComparison::NpAbove: return "np_above";
        case PolygonComparison::Incomparable: return "incomparable";
    }
    return "incomparable";
}

/// Shrinks np by p - 1 in both directions (multiplicities divided by p - 1) and compares with hp.
inline PolygonComparison compare_polygons(const SlopePolygon& np, const SlopePolygon& hp, std::uint32_t p) {
    std::vector<std::pair<Rational, int>> shrunk;
    for (const auto& [s, mult] : np.slopes) {
        if (mult % static_cast<int>(p - 1) != 0)
            throw Error(ErrorKind::NotShrinkable,
                        "multiplicity " + std::to_string(mult) + " of slope " + s.to_string() + " is not divisible by p-1");
        shrunk.emplace_back(s, mult / static_cast<int>(p - 1));
    }
    const SlopePolygon small = SlopePolygon::from(std::move(shrunk));
    if (small == hp) return PolygonComparison::Equal;
    if (small.length() != hp.length()) return PolygonComparison::Incomparable;
    for (int x = 0; x <= hp.length(); ++x)
        if (small.height(x) < hp.height(x)) return PolygonComparison::Incomparable;
    return PolygonComparison::NpAbove;
}

}  // namespace ascart
