#pragma once

// Dense univariate polynomials over a Field, coefficients ascending by degree.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ascart/finite_field.hpp"

namespace ascart {

class Poly {
public:
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<std::uint64_t> codes) : field_(std::move(field)), c_(std::move(codes)) { trim(); }

    static Poly from_elements(FieldPtr field, const std::vector<FieldElement>& coeffs) {
        std::vector<std::uint64_t> codes;
        codes.reserve(coeffs.size());
        for (const auto& c : coeffs) codes.push_back(c.code());
        return {std::move(field), std::move(codes)};
    }
    static Poly constant(FieldPtr field, const FieldElement& c) { return {std::move(field), {c.code()}}; }
    static Poly one(FieldPtr field) { return {std::move(field), {1}}; }
    static Poly monomial(FieldPtr field, const FieldElement& c, std::size_t degree) {
        std::vector<std::uint64_t> codes(degree + 1, 0);
        codes[degree] = c.code();
        return {std::move(field), std::move(codes)};
    }
    static Poly x(FieldPtr field) { return {std::move(field), {0, 1}}; }
    /// x - e
    static Poly linear(FieldPtr field, const FieldElement& e) {
        const std::uint64_t c0 = field->neg(e.code());
        return {std::move(field), {c0, 1}};
    }

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Field& field() const noexcept { return *field_; }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<std::uint64_t>& codes() const noexcept { return c_; }

    FieldElement coeff(std::size_t i) const { return {*field_, i < c_.size() ? c_[i] : 0}; }
    FieldElement leading() const { return coeff(c_.empty() ? 0 : c_.size() - 1); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }

    Poly operator+(const Poly& o) const {
        const Field& F = *field_;
        std::vector<std::uint64_t> out(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::uint64_t a = i < c_.size() ? c_[i] : 0;
            const std::uint64_t b = i < o.c_.size() ? o.c_[i] : 0;
            out[i] = F.add(a, b);
        }
        return {field_, std::move(out)};
    }

    Poly operator-() const {
        std::vector<std::uint64_t> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->neg(c_[i]);
        return {field_, std::move(out)};
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly(field_);
        const Field& F = *field_;
        const std::size_t n = c_.size() + o.c_.size() - 1;
        if (F.degree() == 1 && F.characteristic() < (1u << 20)) {
            // p^2 < 2^40, so sums of up to 2^23 products fit in 64 bits.
            const std::uint64_t p = F.characteristic();
            std::vector<std::uint64_t> acc(n, 0);
            for (std::size_t i = 0; i < c_.size(); ++i) {
                const std::uint64_t a = c_[i];
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += a * o.c_[j];
            }
            for (auto& v : acc) v %= p;
            return {field_, std::move(acc)};
        }
        std::vector<std::uint64_t> out(n, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(c_[i], o.c_[j]));
        }
        return {field_, std::move(out)};
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const FieldElement& s) const {
        std::vector<std::uint64_t> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(c_[i], s.code());
        return {field_, std::move(out)};
    }

    /// Multiplication by x^n.
    Poly shifted(std::size_t n) const {
        if (c_.empty()) return *this;
        std::vector<std::uint64_t> out(n, 0);
        out.insert(out.end(), c_.begin(), c_.end());
        return {field_, std::move(out)};
    }

    /// Quotient and remainder; throws DivideByZero for a zero divisor.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error(ErrorKind::DivideByZero, "polynomial division by zero");
        const Field& F = *a.field_;
        if (a.c_.size() < b.c_.size()) return {Poly(a.field_), a};
        std::vector<std::uint64_t> rem = a.c_;
        std::vector<std::uint64_t> quot(a.c_.size() - b.c_.size() + 1, 0);
        const std::uint64_t lead_inv = F.inv(b.c_.back());
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t i = quot.size(); i-- > 0;) {
            const std::uint64_t c = F.mul(rem[i + db], lead_inv);
            quot[i] = c;
            if (c == 0) continue;
            const std::uint64_t neg_c = F.neg(c);
            for (std::size_t j = 0; j <= db; ++j) rem[i + j] = F.add(rem[i + j], F.mul(neg_c, b.c_[j]));
        }
        rem.resize(db);
        return {Poly(a.field_, std::move(quot)), Poly(a.field_, std::move(rem))};
    }

    Poly operator/(const Poly& o) const { return divmod(*this, o).first; }
    Poly operator%(const Poly& o) const { return divmod(*this, o).second; }

    Poly monic() const {
        if (c_.empty() || c_.back() == 1) return *this;
        return scaled(leading().inverse());
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Poly pow(std::uint64_t e) const {
        Poly acc = one(field_), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return acc;
    }

    FieldElement operator()(const FieldElement& x) const {
        const Field& F = *field_;
        std::uint64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = F.add(F.mul(acc, x.code()), c_[i]);
        return {F, acc};
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<std::uint64_t> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<std::int64_t>(i)).code());
        return {field_, std::move(out)};
    }

    /// p(x + e)
    Poly taylor_shifted(const FieldElement& e) const {
        const Field& F = *field_;
        std::vector<std::uint64_t> out;
        out.reserve(c_.size());
        for (std::size_t i = c_.size(); i-- > 0;) {
            // out <- out * (x + e) + c_i
            out.push_back(0);
            for (std::size_t j = out.size() - 1; j > 0; --j) out[j] = F.add(out[j - 1], F.mul(out[j], e.code()));
            out[0] = F.add(F.mul(out[0], e.code()), c_[i]);
        }
        return {field_, std::move(out)};
    }

    /// Coefficients mapped through an arbitrary code-level function, e.g. p-th roots.
    template <class Fn>
    Poly map_coeffs(Fn&& fn) const {
        std::vector<std::uint64_t> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = fn(c_[i]);
        return {field_, std::move(out)};
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            const std::string c = coeff(i).to_string();
            if (i == 0) s += c;
            else {
                if (c_[i] != 1) s += c + "*";
                s += i == 1 ? "x" : "x^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    FieldPtr field_;
    std::vector<std::uint64_t> c_;
};

}  // namespace ascart
