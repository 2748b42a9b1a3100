#pragma once

// The Cartier operator on differentials g(x) y^r dx and the Cartier-Manin
// matrix on the basis W.
//
// Two independent reductions of C(g dx) for rational g are provided:
//   rational: C(g dx) = den^{-1} C(num den^{p-1} dx), then only polynomial rules;
//   local:    partial fractions first, then C termwise on x^i and (x-e)^{-n}.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ascart/curve.hpp"

namespace ascart {

enum class Pipeline { Rational, Local };

inline std::string_view to_string(Pipeline p) { return p == Pipeline::Rational ? "rational" : "local"; }

/// C(g dx) for polynomial g: x^{ap+p-1} dx -> x^a dx, other monomials vanish.
inline Poly cartier_poly(const Poly& g) {
    const Field& F = g.field();
    const std::size_t p = F.characteristic();
    std::vector<std::uint64_t> out;
    for (std::size_t i = p - 1; i < g.size(); i += p) out.push_back(F.pth_root(g.codes()[i]));
    return {g.field_ptr(), std::move(out)};
}

namespace detail {

/// cartier_poly(a * b) without forming the coefficients that C discards.
inline Poly cartier_of_product(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_ptr());
    const Field& F = a.field();
    const std::size_t p = F.characteristic();
    const std::size_t top = a.size() + b.size() - 2;
    const auto& ac = a.codes();
    const auto& bc = b.codes();
    std::vector<std::uint64_t> out;
    for (std::size_t n = p - 1; n <= top; n += p) {
        const std::size_t lo = n >= bc.size() ? n - (bc.size() - 1) : 0;
        const std::size_t hi = std::min(n, ac.size() - 1);
        std::uint64_t acc = 0;
        if (F.degree() == 1 && p < (1u << 20)) {
            for (std::size_t i = lo; i <= hi; ++i) acc += ac[i] * bc[n - i];
            acc %= p;
        } else {
            for (std::size_t i = lo; i <= hi; ++i) acc = F.add(acc, F.mul(ac[i], bc[n - i]));
        }
        out.push_back(F.pth_root(acc));
    }
    return {a.field_ptr(), std::move(out)};
}

}  // namespace detail

/// Returns h with C(g dx) = h dx.
inline RatFunc cartier_rational(const RatFunc& g) {
    const std::uint32_t p = g.field_ptr()->characteristic();
    const Poly amplified = g.den().pow(p - 1);
    return {detail::cartier_of_product(g.num(), amplified), g.den()};
}

/// C applied termwise to a differential in partial-fraction form:
/// polynomial part by cartier_poly, (x-e)^{-(ap+1)} dx -> (x-e)^{-(a+1)} dx.
inline PartialFraction cartier_local(const PartialFraction& pf) {
    const FieldPtr& F = pf.field_ptr();
    const auto p = static_cast<std::size_t>(F->characteristic());
    std::vector<PoleTail> tails;
    for (const auto& t : pf.tails) {
        PoleTail out{t.location, {}};
        for (std::size_t n = 1; n <= t.coeffs.size(); n += p) {
            const std::size_t target = (n - 1) / p + 1;
            if (out.coeffs.size() < target) out.coeffs.resize(target, F->zero());
            out.coeffs[target - 1] = t.coeffs[n - 1].pth_root();
        }
        tails.push_back(std::move(out));
    }
    detail::canonicalize_tails(tails);
    return {cartier_poly(pf.poly_part), std::move(tails)};
}

/// The regrouped binomial form of (y^p - f)^r: terms (-1)^{r-i} C(r,i) y^{pi} f^{r-i}.
struct CartierExpansion {
    struct Term {
        int y_power;             // i
        std::uint32_t coefficient;  // (-1)^{r-i} C(r,i) mod p
        int f_power;             // r - i
    };
    int r = 0;
    std::vector<Term> terms;
};

inline CartierExpansion cartier_expansion(std::uint32_t p, int r) {
    CartierExpansion out{r, {}};
    const std::uint64_t P = p;
    std::uint64_t binom = 1;  // C(r, i) mod p, built multiplicatively; valid because r < p
    for (int i = 0; i <= r; ++i) {
        if (i > 0) binom = binom * static_cast<std::uint64_t>(r - i + 1) % P * detail::inv_mod(static_cast<std::uint64_t>(i), P) % P;
        const std::uint64_t c = ((r - i) % 2 == 0) ? binom : (P - binom) % P;
        out.terms.push_back({i, static_cast<std::uint32_t>(c), r - i});
    }
    return out;
}

/// sum_r g_r(x) y^r dx
struct MixedDifferential {
    FieldPtr field;
    std::map<int, RatFunc> terms;

    void add(int r, const RatFunc& g) {
        if (g.is_zero()) return;
        auto it = terms.find(r);
        if (it == terms.end()) {
            terms.emplace(r, g);
            return;
        }
        it->second += g;
        if (it->second.is_zero()) terms.erase(it);
    }

    friend bool operator==(const MixedDifferential& a, const MixedDifferential& b) { return a.terms == b.terms; }
};

/// Matrix of C on the ordered basis; column c holds the coordinates of C(basis[c]).
class CartierMatrix {
public:
    CartierMatrix(FieldPtr field, std::vector<BasisForm> basis)
        : field_(std::move(field)), basis_(std::move(basis)), entries_(basis_.size() * basis_.size(), 0) {}

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const std::vector<BasisForm>& basis() const noexcept { return basis_; }
    std::size_t size() const noexcept { return basis_.size(); }

    FieldElement at(std::size_t row, std::size_t col) const { return {*field_, entries_[row * size() + col]}; }
    std::uint64_t code(std::size_t row, std::size_t col) const { return entries_[row * size() + col]; }
    void set(std::size_t row, std::size_t col, const FieldElement& v) { entries_[row * size() + col] = v.code(); }
    const std::vector<std::uint64_t>& codes() const noexcept { return entries_; }

    std::optional<std::size_t> index_of(const BasisForm& w) const {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), w);
        if (it == basis_.end() || *it != w) return std::nullopt;
        return static_cast<std::size_t>(it - basis_.begin());
    }

    /// Entrywise Frobenius^power; power may be negative (p-th roots).
    CartierMatrix twisted(int power) const {
        CartierMatrix out = *this;
        const int k = static_cast<int>(field_->degree());
        const int steps = ((power % k) + k) % k;  // Frobenius has order k
        for (auto& e : out.entries_)
            for (int i = 0; i < steps; ++i) e = field_->frobenius(e);
        return out;
    }

    /// The unmodified Cartier-Manin matrix (m_ij^p).
    CartierMatrix cartier_manin() const { return twisted(1); }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](auto c) { return c != 0; }));
    }

    friend bool operator==(const CartierMatrix& a, const CartierMatrix& b) {
        return a.field_->same_as(*b.field_) && a.basis_ == b.basis_ && a.entries_ == b.entries_;
    }

private:
    FieldPtr field_;
    std::vector<BasisForm> basis_;
    std::vector<std::uint64_t> entries_;
};

/// Applies C to basis forms of one curve, caching the powers of f.
class CartierEngine {
public:
    explicit CartierEngine(CurveSpec spec)
        : spec_(std::move(spec)), inv_(validate(spec_)), basis_(ascart::basis(spec_)), f_(f_rational(spec_)),
          locations_(spec_.finite_locations()) {
        f_powers_.push_back(RatFunc(Poly::one(spec_.field)));
    }

    const CurveSpec& spec() const noexcept { return spec_; }
    const CurveInvariants& invariants() const noexcept { return inv_; }
    const std::vector<BasisForm>& basis() const noexcept { return basis_; }

    /// C(g dx) by the chosen pipeline.
    RatFunc apply(const RatFunc& g, Pipeline pipeline) const {
        if (pipeline == Pipeline::Rational) return cartier_rational(g);
        return assemble(cartier_local(partial_fractions_at(g, locations_)));
    }

    /// C(x_j^b y^r dx) = sum_i (-1)^{r-i} C(r,i) y^i C(x_j^b f^{r-i} dx).
    MixedDifferential apply(const BasisForm& w, Pipeline pipeline) {
        MixedDifferential out{spec_.field, {}};
        const RatFunc xb = coordinate_power(spec_, w.j, w.b);
        for (const auto& term : cartier_expansion(spec_.p(), w.r).terms) {
            if (term.coefficient == 0) continue;
            const RatFunc g = xb * f_power(term.f_power);
            const RatFunc c = apply(g, pipeline);
            if (c.is_zero()) continue;
            out.add(term.y_power, RatFunc::coprime(c.num().scaled(spec_.field->from_int(term.coefficient)), c.den()));
        }
        return out;
    }

    /// Coordinates of a differential in the basis; NotInSpan if a monomial falls outside W.
    std::vector<FieldElement> express(const MixedDifferential& md) const {
        std::vector<FieldElement> coords(basis_.size(), spec_.field->zero());
        auto place = [&](const BasisForm& w, const FieldElement& c) {
            if (c.is_zero()) return;
            auto it = std::lower_bound(basis_.begin(), basis_.end(), w);
            if (it == basis_.end() || *it != w)
                throw Error(ErrorKind::NotInSpan, "monomial " + w.to_string() + " is not in the basis");
            coords[static_cast<std::size_t>(it - basis_.begin())] += c;
        };
        for (const auto& [r, g] : md.terms) {
            PartialFraction pf(spec_.field);
            try {
                pf = partial_fractions_at(g, locations_);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::IrreducibleDenominatorFactor) throw;
                throw Error(ErrorKind::NotInSpan, "coefficient of y^" + std::to_string(r) + " has a pole off the branch locus");
            }
            for (std::size_t b = 0; b < pf.poly_part.size(); ++b) place({0, static_cast<int>(b), r}, pf.poly_part.coeff(b));
            for (const auto& tail : pf.tails) {
                int j = 0;
                for (std::size_t k = 1; k < spec_.poles.size(); ++k)
                    if (*spec_.poles[k].location == tail.location) j = static_cast<int>(k);
                for (std::size_t n = 1; n <= tail.coeffs.size(); ++n)
                    place({j, static_cast<int>(n), r}, tail.coeffs[n - 1]);
            }
        }
        return coords;
    }

    CartierMatrix matrix(Pipeline pipeline) {
        CartierMatrix M(spec_.field, basis_);
        for (std::size_t col = 0; col < basis_.size(); ++col) {
            const auto coords = express(apply(basis_[col], pipeline));
            for (std::size_t row = 0; row < coords.size(); ++row) M.set(row, col, coords[row]);
        }
        return M;
    }

private:
    const RatFunc& f_power(int t) {
        while (static_cast<int>(f_powers_.size()) <= t) f_powers_.push_back(f_powers_.back() * f_);
        return f_powers_[static_cast<std::size_t>(t)];
    }

    CurveSpec spec_;
    CurveInvariants inv_;
    std::vector<BasisForm> basis_;
    RatFunc f_;
    std::vector<FieldElement> locations_;
    std::vector<RatFunc> f_powers_;
};

inline MixedDifferential cartier_basis_form(const CurveSpec& spec, const BasisForm& w,
                                            Pipeline pipeline = Pipeline::Rational) {
    return CartierEngine(spec).apply(w, pipeline);
}

inline std::vector<FieldElement> express_in_basis(const CurveSpec& spec, const MixedDifferential& md) {
    return CartierEngine(spec).express(md);
}

inline CartierMatrix cartier_matrix(const CurveSpec& spec, Pipeline pipeline = Pipeline::Rational) {
    return CartierEngine(spec).matrix(pipeline);
}

struct KeyTerm {
    BasisForm source;
    BasisForm target;
    FieldElement coefficient;
};

/// x_j^b y^{r - (b - eps_j) gamma_j} dx for w in H_j.
inline BasisForm key_term_target(const CurveInvariants& inv, const BasisForm& w) {
    const auto j = static_cast<std::size_t>(w.j);
    return {w.j, w.b, w.r - (w.b - inv.epsilon[j]) * inv.gamma[j]};
}

/// Reads the key-term coefficient of C(w) off a computed matrix.
inline KeyTerm key_term(const CurveSpec& spec, const CartierMatrix& M, const BasisForm& w) {
    const CurveInvariants inv = validate(spec);
    if (!inv.theorem_applicable) throw Error(ErrorKind::ConditionNotSatisfied, "p is not 1 mod L");
    const auto j = static_cast<std::size_t>(w.j);
    if (w.j < 0 || j >= spec.poles.size() || !M.index_of(w) || w.r < (w.b - inv.epsilon[j]) * inv.gamma[j])
        throw Error(ErrorKind::NotInH, w.to_string() + " is not in H");
    const BasisForm target = key_term_target(inv, w);
    const auto row = M.index_of(target);
    if (!row) throw std::logic_error("key term " + target.to_string() + " is not a basis form");
    return {w, target, M.at(*row, *M.index_of(w))};
}

inline KeyTerm key_term(const CurveSpec& spec, const BasisForm& w) { return key_term(spec, cartier_matrix(spec), w); }

}  // namespace ascart
