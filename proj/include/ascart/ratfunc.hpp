#pragma once

// Rational functions in one variable, their partial fraction decomposition,
// and fractional linear substitution.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascart/poly.hpp"

namespace ascart {

/// num/den with den monic and gcd(num, den) = 1. Zero is 0/1.
class RatFunc {
public:
    explicit RatFunc(FieldPtr field) : num_(field), den_(Poly::one(field)) {}
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field_ptr())) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// Skips the gcd; caller guarantees coprimality.
    static RatFunc coprime(Poly num, Poly den) {
        RatFunc r(num.field_ptr());
        const FieldElement lead = den.leading();
        if (lead.is_zero()) throw Error(ErrorKind::DivideByZero, "zero denominator");
        if (!lead.is_one()) {
            const FieldElement s = lead.inverse();
            num = num.scaled(s);
            den = den.scaled(s);
        }
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const FieldPtr& field_ptr() const noexcept { return num_.field_ptr(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc operator+(const RatFunc& o) const {
        if (den_ == o.den_) return {num_ + o.num_, den_};
        return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
    }
    RatFunc operator-() const { return coprime(-num_, den_); }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const {
        // Cross-cancel first so the products stay small.
        const Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
        return coprime((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of zero rational function");
        return coprime(den_, num_);
    }

    RatFunc pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        return coprime(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
    }

    RatFunc derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    std::string to_string() const {
        if (den_.degree() == 0) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error(ErrorKind::DivideByZero, "zero denominator");
        const Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        const FieldElement lead = den_.leading();
        if (!lead.is_one()) {
            const FieldElement s = lead.inverse();
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    Poly num_, den_;
};

/// Principal part at a finite pole e: coeffs[n-1] multiplies (x - e)^(-n).
struct PoleTail {
    FieldElement location;
    std::vector<FieldElement> coeffs;

    int order() const noexcept { return static_cast<int>(coeffs.size()); }
    friend bool operator==(const PoleTail& a, const PoleTail& b) {
        return a.location == b.location && a.coeffs == b.coeffs;
    }
};

/// poly_part + sum over tails; tails sorted by location code with nonzero top coefficient.
struct PartialFraction {
    Poly poly_part;
    std::vector<PoleTail> tails;

    explicit PartialFraction(FieldPtr field) : poly_part(std::move(field)) {}
    PartialFraction(Poly poly, std::vector<PoleTail> t) : poly_part(std::move(poly)), tails(std::move(t)) {}

    const FieldPtr& field_ptr() const noexcept { return poly_part.field_ptr(); }

    const PoleTail* tail_at(const FieldElement& e) const {
        for (const auto& t : tails)
            if (t.location == e) return &t;
        return nullptr;
    }

    friend bool operator==(const PartialFraction& a, const PartialFraction& b) {
        return a.poly_part == b.poly_part && a.tails == b.tails;
    }
};

namespace detail {

/// Trims trailing zero coefficients, drops empty tails and sorts by location.
inline void canonicalize_tails(std::vector<PoleTail>& tails) {
    for (auto& t : tails)
        while (!t.coeffs.empty() && t.coeffs.back().is_zero()) t.coeffs.pop_back();
    std::erase_if(tails, [](const PoleTail& t) { return t.coeffs.empty(); });
    std::sort(tails.begin(), tails.end(), [](const PoleTail& a, const PoleTail& b) { return a.location < b.location; });
}

/// Splits off the linear factors of `den` at the candidate locations. Returns the
/// (location, multiplicity) list and the unsplit cofactor.
inline std::pair<std::vector<std::pair<FieldElement, int>>, Poly> split_linear(
    Poly den, const std::vector<FieldElement>& candidates) {
    std::vector<std::pair<FieldElement, int>> roots;
    for (const auto& e : candidates) {
        if (den.degree() <= 0) break;
        if (!den(e).is_zero()) continue;
        const Poly lin = Poly::linear(den.field_ptr(), e);
        int mult = 0;
        while (den.degree() > 0) {
            auto [q, r] = divmod(den, lin);
            if (!r.is_zero()) break;
            den = std::move(q);
            ++mult;
        }
        roots.emplace_back(e, mult);
    }
    return {std::move(roots), std::move(den)};
}

/// Partial fractions once the denominator's roots are known.
inline PartialFraction decompose_with_roots(const RatFunc& f, const std::vector<std::pair<FieldElement, int>>& roots) {
    const FieldPtr& F = f.field_ptr();
    auto [poly_part, rem] = divmod(f.num(), f.den());
    std::vector<PoleTail> tails;
    for (const auto& [e, n] : roots) {
        const Poly cofactor = f.den() / Poly::linear(F, e).pow(static_cast<std::uint64_t>(n));
        // Laurent expansion of rem/den at e: rem(e+t) / (t^n cofactor(e+t)).
        const Poly r = rem.taylor_shifted(e);
        const Poly c = cofactor.taylor_shifted(e);
        const FieldElement c0_inv = c.coeff(0).inverse();
        std::vector<FieldElement> series(static_cast<std::size_t>(n), F->zero());
        for (int i = 0; i < n; ++i) {
            FieldElement acc = r.coeff(static_cast<std::size_t>(i));
            for (int j = 1; j <= i; ++j) acc -= c.coeff(static_cast<std::size_t>(j)) * series[static_cast<std::size_t>(i - j)];
            series[static_cast<std::size_t>(i)] = acc * c0_inv;
        }
        PoleTail tail{e, std::vector<FieldElement>(static_cast<std::size_t>(n), F->zero())};
        for (int i = 0; i < n; ++i) tail.coeffs[static_cast<std::size_t>(n - 1 - i)] = series[static_cast<std::size_t>(i)];
        tails.push_back(std::move(tail));
    }
    canonicalize_tails(tails);
    return {std::move(poly_part), std::move(tails)};
}

inline std::vector<FieldElement> all_elements(const Field& F) {
    std::vector<FieldElement> out;
    out.reserve(F.size());
    for (std::uint64_t c = 0; c < F.size(); ++c) out.emplace_back(F, c);
    return out;
}

}  // namespace detail

/// Partial fraction decomposition; the denominator must split over the field.
/// Roots are found by exhaustive evaluation.
inline PartialFraction partial_fractions(const RatFunc& f) {
    auto [roots, rest] = detail::split_linear(f.den(), detail::all_elements(*f.field_ptr()));
    if (rest.degree() > 0)
        throw Error(ErrorKind::IrreducibleDenominatorFactor,
                    "denominator has an irreducible factor of degree " + std::to_string(rest.degree()) +
                        "; enlarge the field");
    return detail::decompose_with_roots(f, roots);
}

/// Partial fractions when every pole is known to lie in `locations`.
inline PartialFraction partial_fractions_at(const RatFunc& f, const std::vector<FieldElement>& locations) {
    auto [roots, rest] = detail::split_linear(f.den(), locations);
    if (rest.degree() > 0)
        throw Error(ErrorKind::IrreducibleDenominatorFactor, "denominator does not split over the given locations");
    return detail::decompose_with_roots(f, roots);
}

inline RatFunc assemble(const PartialFraction& pf) {
    const FieldPtr& F = pf.field_ptr();
    Poly den = Poly::one(F);
    for (const auto& t : pf.tails) den *= Poly::linear(F, t.location).pow(static_cast<std::uint64_t>(t.order()));
    Poly num = pf.poly_part * den;
    for (const auto& t : pf.tails) {
        const Poly lin = Poly::linear(F, t.location);
        const Poly cofactor = den / lin.pow(static_cast<std::uint64_t>(t.order()));
        // sum_n c_n (x-e)^(order-n)
        Poly local(F);
        Poly power = Poly::one(F);
        for (int n = t.order(); n >= 1; --n) {
            local += power.scaled(t.coeffs[static_cast<std::size_t>(n - 1)]);
            power *= lin;
        }
        num += local * cofactor;
    }
    return {std::move(num), std::move(den)};
}

/// f((a x + b)/(c x + d)).
inline RatFunc moebius_substitute(const RatFunc& f, const FieldElement& a, const FieldElement& b,
                                  const FieldElement& c, const FieldElement& d) {
    if ((a * d - b * c).is_zero()) throw Error(ErrorKind::SingularTransform, "ad - bc = 0");
    const FieldPtr& F = f.field_ptr();
    const Poly top = Poly::from_elements(F, {b, a});
    const Poly bottom = Poly::from_elements(F, {d, c});
    const std::size_t m = static_cast<std::size_t>(std::max(f.num().degree(), f.den().degree()));
    auto homogenize = [&](const Poly& p) {
        Poly out(F);
        Poly top_pow = Poly::one(F);
        for (std::size_t i = 0; i <= m; ++i) {
            if (!p.coeff(i).is_zero()) out += (top_pow * bottom.pow(m - i)).scaled(p.coeff(i));
            top_pow *= top;
        }
        return out;
    };
    return {homogenize(f.num()), homogenize(f.den())};
}

/// Pole orders of f on the projective line, sorted ascending; the pole at
/// infinity (if any) is included.
inline std::vector<int> pole_orders(const RatFunc& f) {
    std::vector<int> out;
    const int at_inf = f.num().degree() - f.den().degree();
    if (at_inf > 0) out.push_back(at_inf);
    for (const auto& t : partial_fractions(f).tails) out.push_back(t.order());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ascart
