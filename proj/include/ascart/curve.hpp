#pragma once

// Artin-Schreier curves y^p - y = f(x) given by the pole data of f, with the
// regular-differential basis x_j^b y^r dx and its ordering.

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ascart/ratfunc.hpp"

namespace ascart {

/// One pole of f. At infinity `coeffs` are f_0(x) in degrees 0..d_0; at a finite
/// pole e_j they are f_j(x_j), x_j = 1/(x - e_j), in degrees 0..d_j where the
/// degree-0 entry must be zero. The order is coeffs.size() - 1; the leading
/// entry is u_j and is not trimmed.
struct PoleDatum {
    std::optional<FieldElement> location;  // nullopt is the point at infinity
    std::vector<FieldElement> coeffs;

    bool at_infinity() const noexcept { return !location.has_value(); }
    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

    static PoleDatum infinite(std::vector<FieldElement> coeffs) { return {std::nullopt, std::move(coeffs)}; }

    /// Finite pole from coefficients in degrees 1..d (the file-format convention).
    static PoleDatum finite(const FieldElement& e, const std::vector<FieldElement>& from_degree_one) {
        std::vector<FieldElement> c;
        c.reserve(from_degree_one.size() + 1);
        c.push_back(e.field().zero());
        c.insert(c.end(), from_degree_one.begin(), from_degree_one.end());
        return {e, std::move(c)};
    }
};

struct CurveSpec {
    FieldPtr field;
    std::vector<PoleDatum> poles;  // poles[0] is at infinity

    std::uint32_t p() const noexcept { return field->characteristic(); }
    /// Number of finite poles.
    int m() const noexcept { return static_cast<int>(poles.size()) - 1; }
    std::vector<int> orders() const {
        std::vector<int> out;
        for (const auto& pole : poles) out.push_back(pole.order());
        return out;
    }
    std::vector<FieldElement> finite_locations() const {
        std::vector<FieldElement> out;
        for (const auto& pole : poles)
            if (!pole.at_infinity()) out.push_back(*pole.location);
        return out;
    }
};

struct CurveInvariants {
    int m = 0;
    int D = 0;
    std::int64_t L = 1;
    int g = 0;
    int s = 0;
    std::vector<int> gamma;    // (p-1)/d_j, filled only when p = 1 mod L
    std::vector<int> epsilon;  // -1 at infinity, +1 elsewhere
    bool theorem_applicable = false;
};

inline CurveInvariants validate(const CurveSpec& spec) {
    if (!spec.field) throw std::invalid_argument("curve spec has no field");
    const std::uint32_t p = spec.p();
    if (spec.poles.empty() || !spec.poles.front().at_infinity())
        throw Error(ErrorKind::MissingInfinitePole,
                    "f must have its first pole at infinity; move a pole there with moebius_substitute "
                    "(x -> e + 1/x sends the pole e to infinity)");
    for (std::size_t j = 0; j < spec.poles.size(); ++j) {
        const PoleDatum& pole = spec.poles[j];
        for (const auto& c : pole.coeffs)
            if (!c.has_field() || !c.field().same_as(*spec.field))
                throw Error(ErrorKind::FieldMismatch, "coefficient outside the curve's field", j);
        if (pole.location && !pole.location->field().same_as(*spec.field))
            throw Error(ErrorKind::FieldMismatch, "pole location outside the curve's field", j);
        if (j > 0 && pole.at_infinity())
            throw Error(ErrorKind::DuplicatePoleLocation, "more than one pole at infinity", j);
        if (pole.coeffs.empty() || pole.coeffs.back().is_zero())
            throw Error(ErrorKind::ZeroLeadingCoefficient, "leading coefficient u_j is zero", j);
        if (pole.order() < 1) {
            if (j == 0)
                throw Error(ErrorKind::MissingInfinitePole,
                            "f_0 is constant so f has no pole at infinity; apply moebius_substitute first", j);
            throw Error(ErrorKind::ZeroLeadingCoefficient, "finite pole of order 0", j);
        }
        if (pole.order() % static_cast<int>(p) == 0)
            throw Error(ErrorKind::PoleOrderDivisibleByP,
                        "pole order " + std::to_string(pole.order()) + " is divisible by p = " + std::to_string(p), j);
        if (!pole.at_infinity() && !pole.coeffs.front().is_zero())
            throw Error(ErrorKind::ConstantTermOnFinitePole, "f_j must have no constant term", j);
        for (std::size_t i = 1; i < j; ++i)
            if (spec.poles[i].location == pole.location)
                throw Error(ErrorKind::DuplicatePoleLocation, "pole location " + pole.location->to_string() + " repeated", j);
    }

    CurveInvariants inv;
    inv.m = spec.m();
    inv.D = -2;
    for (const auto& pole : spec.poles) {
        inv.D += pole.order() + 1;
        inv.L = std::lcm(inv.L, static_cast<std::int64_t>(pole.order()));
    }
    inv.g = inv.D * static_cast<int>(p - 1) / 2;
    inv.s = inv.m * static_cast<int>(p - 1);
    inv.theorem_applicable = (p - 1) % inv.L == 0;
    for (std::size_t j = 0; j < spec.poles.size(); ++j) {
        inv.epsilon.push_back(j == 0 ? -1 : 1);
        if (inv.theorem_applicable) inv.gamma.push_back(static_cast<int>(p - 1) / spec.poles[j].order());
    }
    return inv;
}

/// x_j^b y^r dx
struct BasisForm {
    int j = 0;
    int b = 0;
    int r = 0;

    friend bool operator==(const BasisForm&, const BasisForm&) = default;

    /// The order on W: by r, then pole index j, then b.
    friend std::strong_ordering operator<=>(const BasisForm& a, const BasisForm& c) {
        if (auto o = a.r <=> c.r; o != 0) return o;
        if (auto o = a.j <=> c.j; o != 0) return o;
        return a.b <=> c.b;
    }

    std::string to_string() const {
        std::string s;
        const std::string x = j == 0 ? "x" : "x" + std::to_string(j);
        if (b == 1) s += x;
        else if (b > 1) s += x + "^" + std::to_string(b);
        if (r == 1) s += "y";
        else if (r > 1) s += "y^" + std::to_string(r);
        return s + (s.empty() ? "dx" : " dx");
    }
};

inline std::strong_ordering compare_forms(const BasisForm& a, const BasisForm& b) { return a <=> b; }

/// Membership in W_j for a pole of order d.
inline bool in_basis_block(std::uint32_t p, int d, const BasisForm& w) {
    const std::int64_t P = p;
    if (w.r < 0) return false;
    if (w.j == 0) return w.b >= 0 && std::int64_t{w.r} * d + std::int64_t{w.b} * P <= (P - 1) * (d - 1) - 2;
    return w.b >= 1 && std::int64_t{w.r} * d + std::int64_t{w.b} * P <= (P - 1) * (d + 1);
}

/// All forms of W sorted by the basis order; size equals the genus.
inline std::vector<BasisForm> basis(const CurveSpec& spec) {
    const std::uint32_t p = spec.p();
    std::vector<BasisForm> out;
    for (int j = 0; j < static_cast<int>(spec.poles.size()); ++j) {
        const int d = spec.poles[static_cast<std::size_t>(j)].order();
        for (int b = j == 0 ? 0 : 1;; ++b) {
            if (!in_basis_block(p, d, {j, b, 0})) break;
            for (int r = 0; in_basis_block(p, d, {j, b, r}); ++r) out.push_back({j, b, r});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct HAPartition {
    std::vector<BasisForm> H;
    std::vector<BasisForm> A;
};

/// H_j = {r >= (b - eps_j) gamma_j}, A_j = W_j - H_j; both in basis order.
inline HAPartition partition_HA(const CurveSpec& spec) {
    const CurveInvariants inv = validate(spec);
    if (!inv.theorem_applicable)
        throw Error(ErrorKind::ConditionNotSatisfied,
                    "p = " + std::to_string(spec.p()) + " is not 1 mod L = " + std::to_string(inv.L));
    HAPartition out;
    for (const auto& w : basis(spec)) {
        const auto j = static_cast<std::size_t>(w.j);
        if (w.r >= (w.b - inv.epsilon[j]) * inv.gamma[j]) out.H.push_back(w);
        else out.A.push_back(w);
    }
    return out;
}

/// f as a single rational function, sum_j f_j(x_j).
inline RatFunc f_rational(const CurveSpec& spec) {
    const FieldPtr& F = spec.field;
    RatFunc f(F);
    for (const auto& pole : spec.poles) {
        if (pole.at_infinity()) {
            f += RatFunc(Poly::from_elements(F, pole.coeffs));
            continue;
        }
        // sum_i c_i (x-e)^(-i) = (sum_i c_i (x-e)^(d-i)) / (x-e)^d
        const Poly lin = Poly::linear(F, *pole.location);
        const auto d = static_cast<std::size_t>(pole.order());
        Poly num(F), power = Poly::one(F);
        for (std::size_t i = d + 1; i-- > 0;) {
            num += power.scaled(pole.coeffs[i]);
            power *= lin;
        }
        f += RatFunc(num, lin.pow(d));
    }
    return f;
}

/// x_j^b as a rational function in x.
inline RatFunc coordinate_power(const CurveSpec& spec, int j, int b) {
    const FieldPtr& F = spec.field;
    const auto& pole = spec.poles.at(static_cast<std::size_t>(j));
    if (pole.at_infinity()) return RatFunc(Poly::monomial(F, F->one(), static_cast<std::size_t>(b)));
    return RatFunc::coprime(Poly::one(F), Poly::linear(F, *pole.location).pow(static_cast<std::uint64_t>(b)));
}

}  // namespace ascart
