#pragma once

// Exact arithmetic in GF(p^k).
//
// An element is stored as its "code": the base-p integer sum c_i p^i of its
// digit vector (c_0, ..., c_{k-1}) in the basis 1, t, ..., t^{k-1} of
// GF(p)[t]/(modulus). Codes are always canonical, so equality is equality of
// codes. The code order is also the order used to pick moduli and roots.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ascart/errors.hpp"

namespace ascart {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// Dense polynomials over GF(p) used only to find and check moduli.
namespace fp_poly {

using P = std::vector<std::uint64_t>;

inline void trim(P& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline P rem(P a, const P& m, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

inline P mul_mod(const P& a, const P& b, const P& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    P out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return rem(std::move(out), m, p);
}

inline P gcd(P a, P b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        P r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Ben-Or: a degree-k polynomial is irreducible iff gcd(t^{p^i} - t, m) = 1 for i <= k/2.
inline bool is_irreducible(const P& m, std::uint64_t p) {
    const std::size_t k = m.size() - 1;
    if (k == 1) return true;
    P power = rem(P{0, 1}, m, p);  // t
    for (std::size_t i = 1; i <= k / 2; ++i) {
        // power <- power^p mod m
        P base = power, acc{1};
        for (std::uint64_t e = p; e > 0; e >>= 1) {
            if (e & 1) acc = mul_mod(acc, base, m, p);
            base = mul_mod(base, base, m, p);
        }
        power = acc;
        P diff = power;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        if (gcd(diff, m, p).size() > 1) return false;
    }
    return true;
}

}  // namespace fp_poly
}  // namespace detail

/// GF(p^k) with a fixed monic irreducible modulus. Immutable once built.
class Field {
    struct Private {};

public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

    /// Smallest (by code order, leading digit c_{k-1} most significant) monic
    /// irreducible modulus of degree k.
    static FieldPtr create(std::uint32_t p, unsigned k) {
        if (!detail::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        if (k < 1) throw std::invalid_argument("field degree must be at least 1");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) {
            q *= p;
            if (q > (std::uint64_t{1} << 32)) throw std::invalid_argument("field too large");
        }
        for (std::uint64_t code = 0; code < q; ++code) {
            detail::fp_poly::P m(k + 1);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i, c /= p) m[i] = c % p;
            m[k] = 1;
            if (detail::fp_poly::is_irreducible(m, p)) {
                std::vector<std::uint32_t> modulus(m.begin(), m.end());
                return std::make_shared<const Field>(Private{}, p, std::move(modulus));
            }
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    /// Rebuilds a field from a serialized modulus; rejects reducible or non-monic input.
    static FieldPtr from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
        if (!detail::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        if (modulus.size() < 2 || modulus.back() != 1)
            throw Error(ErrorKind::ParseError, "modulus must be monic of degree >= 1");
        for (auto c : modulus)
            if (c >= p) throw Error(ErrorKind::ParseError, "modulus digit out of range");
        detail::fp_poly::P m(modulus.begin(), modulus.end());
        if (!detail::fp_poly::is_irreducible(m, p)) throw Error(ErrorKind::ParseError, "modulus is reducible");
        return std::make_shared<const Field>(Private{}, p, std::move(modulus));
    }

    Field(Private, std::uint32_t p, std::vector<std::uint32_t> modulus)
        : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
        q_ = 1;
        for (unsigned i = 0; i < k_; ++i) q_ *= p_;
        if (k_ > 1 && q_ <= kTableLimit) build_tables();
        trace_basis_.resize(k_);
        std::uint64_t basis = 1;  // t^i
        for (unsigned i = 0; i < k_; ++i) {
            trace_basis_[i] = trace_by_definition(basis);
            basis = mul(basis, k_ == 1 ? 1 : p_);  // t has code p
        }
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return k_; }
    std::uint64_t size() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    bool same_as(const Field& other) const noexcept {
        return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
    }

    FieldElement element(std::uint64_t code) const;
    FieldElement zero() const;
    FieldElement one() const;
    /// Image of an integer in the prime subfield.
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_digits(std::span<const std::uint32_t> digits) const;
    /// The generator t of GF(p)[t]/(modulus).
    FieldElement generator() const;

    std::vector<std::uint32_t> digits(std::uint64_t code) const {
        std::vector<std::uint32_t> out(k_);
        for (unsigned i = 0; i < k_; ++i, code /= p_) out[i] = static_cast<std::uint32_t>(code % p_);
        return out;
    }

    std::uint64_t encode(std::span<const std::uint32_t> digits) const {
        if (digits.size() != k_) throw std::invalid_argument("digit vector has wrong length");
        std::uint64_t code = 0;
        for (std::size_t i = k_; i-- > 0;) {
            if (digits[i] >= p_) throw std::invalid_argument("digit out of range");
            code = code * p_ + digits[i];
        }
        return code;
    }

    // Code-level arithmetic. Inputs must be canonical codes below size().

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        if (k_ == 1) {
            const std::uint64_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        std::uint64_t out = 0, scale = 1;
        while (a | b) {
            std::uint64_t d = a % p_ + b % p_;
            if (d >= p_) d -= p_;
            out += d * scale;
            scale *= p_;
            a /= p_;
            b /= p_;
        }
        return out;
    }

    std::uint64_t neg(std::uint64_t a) const noexcept {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        std::uint64_t out = 0, scale = 1;
        while (a) {
            const std::uint64_t d = a % p_;
            out += (d == 0 ? 0 : p_ - d) * scale;
            scale *= p_;
            a /= p_;
        }
        return out;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
        if (a == 0 || b == 0) return 0;
        if (k_ == 1) return a * b % p_;
        if (!exp_.empty()) {
            std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
            if (e >= q_ - 1) e -= q_ - 1;
            return exp_[e];
        }
        return mul_schoolbook(a, b);
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw Error(ErrorKind::DivideByZero, "inverse of zero");
        if (k_ == 1) return detail::inv_mod(a, p_);
        if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        return pow(a, q_ - 2);
    }

    std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept {
        std::uint64_t acc = 1;
        while (e > 0) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }

    std::uint64_t frobenius(std::uint64_t a) const noexcept { return k_ == 1 ? a : pow(a, p_); }

    /// Inverse Frobenius: a^(p^(k-1)), since Frobenius has order k.
    std::uint64_t pth_root(std::uint64_t a) const noexcept {
        if (k_ == 1) return a;
        return pow(a, q_ / p_);
    }

    /// Absolute trace to GF(p), via the precomputed traces of the basis t^i.
    std::uint32_t trace(std::uint64_t a) const noexcept {
        if (k_ == 1) return static_cast<std::uint32_t>(a);
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < k_; ++i, a /= p_) acc += (a % p_) * trace_basis_[i];
        return static_cast<std::uint32_t>(acc % p_);
    }

private:
    std::uint64_t mul_schoolbook(std::uint64_t a, std::uint64_t b) const noexcept {
        std::array<std::uint64_t, 64> da{}, db{}, prod{};
        for (unsigned i = 0; i < k_; ++i, a /= p_, b /= p_) {
            da[i] = a % p_;
            db[i] = b % p_;
        }
        for (unsigned i = 0; i < k_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
        for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (unsigned j = 0; j < k_; ++j) prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
        }
        std::uint64_t code = 0;
        for (unsigned i = k_; i-- > 0;) code = code * p_ + prod[i];
        return code;
    }

    std::uint64_t pow_schoolbook(std::uint64_t a, std::uint64_t e) const noexcept {
        std::uint64_t acc = 1;
        while (e > 0) {
            if (e & 1) acc = mul_schoolbook(acc, a);
            a = mul_schoolbook(a, a);
            e >>= 1;
        }
        return acc;
    }

    void build_tables() {
        const auto factors = detail::prime_factors(q_ - 1);
        std::uint64_t gen = 0;
        for (std::uint64_t c = 1; c < q_ && gen == 0; ++c) {
            bool primitive = true;
            for (auto l : factors)
                if (pow_schoolbook(c, (q_ - 1) / l) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) gen = c;
        }
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i + 1 < q_; ++i) {
            exp_[i] = static_cast<std::uint32_t>(x);
            log_[x] = static_cast<std::uint32_t>(i);
            x = mul_schoolbook(x, gen);
        }
    }

    std::uint32_t trace_by_definition(std::uint64_t a) const noexcept {
        std::uint64_t acc = 0, conj = a;
        for (unsigned i = 0; i < k_; ++i) {
            acc = add(acc, conj);
            conj = frobenius(conj);
        }
        return static_cast<std::uint32_t>(acc);
    }

    std::uint32_t p_;
    unsigned k_;
    std::uint64_t q_ = 1;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_, log_;
    std::vector<std::uint32_t> trace_basis_;
};

/// A value in a Field. Holds a non-owning pointer: the Field must outlive it,
/// which in practice means keeping the FieldPtr alive next to the data.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const Field& field, std::uint64_t code) : field_(&field), code_(code) {}

    const Field& field() const noexcept { return *field_; }
    bool has_field() const noexcept { return field_ != nullptr; }
    std::uint64_t code() const noexcept { return code_; }
    std::vector<std::uint32_t> digits() const { return field_->digits(code_); }
    bool is_zero() const noexcept { return code_ == 0; }
    bool is_one() const noexcept { return code_ == 1; }

    FieldElement operator+(const FieldElement& o) const { return {check(o), field_->add(code_, o.code_)}; }
    FieldElement operator-(const FieldElement& o) const { return {check(o), field_->sub(code_, o.code_)}; }
    FieldElement operator*(const FieldElement& o) const { return {check(o), field_->mul(code_, o.code_)}; }
    FieldElement operator/(const FieldElement& o) const {
        check(o);
        if (o.is_zero()) throw Error(ErrorKind::DivideByZero, "division by zero field element");
        return {*field_, field_->div(code_, o.code_)};
    }
    FieldElement operator-() const { return {*field_, field_->neg(code_)}; }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    FieldElement inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of zero");
        return {*field_, field_->inv(code_)};
    }
    FieldElement pow(std::uint64_t e) const { return {*field_, field_->pow(code_, e)}; }
    FieldElement frobenius() const { return {*field_, field_->frobenius(code_)}; }
    FieldElement pth_root() const { return {*field_, field_->pth_root(code_)}; }
    std::uint32_t trace() const { return field_->trace(code_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept { return a.code_ == b.code_; }
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept {
        return a.code_ <=> b.code_;
    }

    /// Bare integer for prime fields, digit tuple "(c0,c1,...)" otherwise.
    std::string to_string() const {
        if (field_->degree() == 1) return std::to_string(code_);
        std::string s = "(";
        const auto d = digits();
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(d[i]);
        }
        return s + ")";
    }

private:
    const Field& check(const FieldElement& o) const {
        if (field_ != o.field_ && !field_->same_as(*o.field_))
            throw Error(ErrorKind::FieldMismatch, "operands belong to different fields");
        return *field_;
    }

    const Field* field_ = nullptr;
    std::uint64_t code_ = 0;
};

inline FieldElement Field::element(std::uint64_t code) const {
    if (code >= q_) throw std::invalid_argument("element code out of range");
    return {*this, code};
}
inline FieldElement Field::zero() const { return {*this, 0}; }
inline FieldElement Field::one() const { return {*this, 1}; }
inline FieldElement Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {*this, static_cast<std::uint64_t>(r)};
}
inline FieldElement Field::from_digits(std::span<const std::uint32_t> digits) const {
    return {*this, encode(digits)};
}
inline FieldElement Field::generator() const {
    // t itself; in GF(p) the modulus is t so t reduces to 0.
    return {*this, k_ == 1 ? 0 : std::uint64_t{p_}};
}

}  // namespace ascart
