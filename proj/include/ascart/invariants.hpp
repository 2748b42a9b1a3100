#pragma once

// Rank, a-number and p-rank from the Cartier-Manin matrix, plus the closed
// formulas they are checked against.

#include <cstdint>
#include <optional>
#include <vector>

#include "ascart/cartier.hpp"

namespace ascart {

namespace detail {

/// Rank of a rows x cols matrix of codes by Gaussian elimination.
inline std::size_t rank_of(const Field& F, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> a) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot * cols + c], a[rank * cols + c]);
        const std::uint64_t inv = F.inv(a[rank * cols + col]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::uint64_t factor = F.mul(a[r * cols + col], inv);
            if (factor == 0) continue;
            const std::uint64_t neg = F.neg(factor);
            for (std::size_t c = col; c < cols; ++c)
                a[r * cols + c] = F.add(a[r * cols + c], F.mul(neg, a[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::uint64_t> mat_mul(const Field& F, std::size_t n, const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t aik = a[i * n + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = F.add(out[i * n + j], F.mul(aik, b[k * n + j]));
        }
    return out;
}

}  // namespace detail

inline std::size_t rank(const CartierMatrix& M) { return detail::rank_of(*M.field_ptr(), M.size(), M.size(), M.codes()); }

/// Rank of the submatrix formed by the given columns.
inline std::size_t column_rank(const CartierMatrix& M, const std::vector<std::size_t>& columns) {
    const std::size_t n = M.size();
    std::vector<std::uint64_t> sub(n * columns.size());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c) sub[r * columns.size() + c] = M.code(r, columns[c]);
    return detail::rank_of(*M.field_ptr(), n, columns.size(), std::move(sub));
}

/// Closed-form a_j for one pole of order d when d | p - 1.
inline int theorem_a_j(std::uint32_t p, int d) {
    const std::int64_t P = p;
    if (d % 2 == 0) return static_cast<int>((P - 1) * d / 4);
    return static_cast<int>((P - 1) * (d - 1) * (d + 1) / (4 * d));
}

/// Sum of theorem_a_j, or nullopt when p is not 1 mod lcm(orders).
inline std::optional<int> theorem_a_number(std::uint32_t p, const std::vector<int>& orders) {
    std::int64_t L = 1;
    for (int d : orders) L = std::lcm(L, static_cast<std::int64_t>(d));
    if ((p - 1) % L != 0) return std::nullopt;
    int a = 0;
    for (int d : orders) a += theorem_a_j(p, d);
    return a;
}

struct ANumberReport {
    int g = 0;
    int rank = 0;
    int a_rank = 0;
    std::optional<int> a_formula;
    std::optional<bool> match;
};

inline ANumberReport a_number(const CurveSpec& spec, Pipeline pipeline = Pipeline::Rational) {
    const CurveInvariants inv = validate(spec);
    const CartierMatrix M = cartier_matrix(spec, pipeline);
    ANumberReport out;
    out.g = inv.g;
    out.rank = static_cast<int>(rank(M));
    out.a_rank = out.g - out.rank;
    out.a_formula = theorem_a_number(spec.p(), spec.orders());
    if (out.a_formula) out.match = *out.a_formula == out.a_rank;
    return out;
}

/// a-number of y^p - y = x^d from the h_b formula:
/// sum_{b=0}^{d-2} min(h_b, p - ceil((p + 1 + b p)/d)), h_b = (-1-b)/d mod p.
inline int a_monomial_remark(std::uint32_t p, int d) {
    if (d < 1) throw std::invalid_argument("pole order must be positive");
    if (d % static_cast<int>(p) == 0)
        throw Error(ErrorKind::DNotCoprime, "p = " + std::to_string(p) + " divides d = " + std::to_string(d));
    const std::int64_t P = p;
    const std::int64_t d_inv = static_cast<std::int64_t>(detail::inv_mod(static_cast<std::uint64_t>(d) % p, p));
    std::int64_t total = 0;
    for (std::int64_t b = 0; b <= d - 2; ++b) {
        std::int64_t h = ((-1 - b) % P + P) % P * d_inv % P;
        const std::int64_t ceil = (P + 1 + b * P + d - 1) / d;
        total += std::min(h, P - ceil);
    }
    return static_cast<int>(total);
}

/// Ranks of M, M M^{s}, M M^{s} M^{s^2}, ... (s = inverse Frobenius) for 1..factors factors.
inline std::vector<std::size_t> twisted_product_ranks(const CartierMatrix& M, std::size_t factors) {
    const Field& F = *M.field_ptr();
    const std::size_t n = M.size();
    std::vector<std::size_t> ranks;
    if (n == 0) return std::vector<std::size_t>(factors, 0);
    std::vector<std::uint64_t> product = M.codes();
    for (std::size_t t = 1; t <= factors; ++t) {
        if (t > 1) product = detail::mat_mul(F, n, product, M.twisted(-static_cast<int>(t - 1)).codes());
        ranks.push_back(detail::rank_of(F, n, n, product));
    }
    return ranks;
}

/// Stable rank of the 1/p-linear iterate, i.e. the rank after g factors.
inline int p_rank_stable(const CartierMatrix& M) {
    if (M.size() == 0) return 0;
    return static_cast<int>(twisted_product_ranks(M, M.size()).back());
}

}  // namespace ascart
