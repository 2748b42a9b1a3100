#pragma once

// Randomized sweep over curves with fixed pole orders.

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ascart/invariants.hpp"

namespace ascart {

inline constexpr std::string_view kGeneratorName = "mt19937_64 seeded via seed_seq(seed_lo, seed_hi, sample)";

struct SweepConfig {
    std::uint32_t p = 0;
    unsigned field_degree = 1;
    std::vector<int> orders;  // d_0 (at infinity), d_1, ...
    int samples = 1;
    std::uint64_t seed = 0;
};

struct SweepSample {
    int index = 0;
    std::uint64_t seed = 0;
    int a = 0;
    int s = 0;
    int g = 0;
    int rank = 0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepSample> samples;
    std::map<int, int> a_distribution;  // a-number -> count
    int distinct_a = 0;
    std::optional<int> theorem;
    std::optional<bool> pass;  // only when the closed formula applies
};

/// Uniform draw in [0, n) by rejection, identical on every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return v % n;
}

/// Per-sample seed; samples are independent streams of the master seed.
inline std::uint64_t sample_seed(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t{out[1]} << 32) | out[0];
}

/// Random curve with the given orders: distinct random finite locations, random
/// coefficients with nonzero leading terms and no constant term at finite poles.
inline CurveSpec random_curve(const FieldPtr& field, const std::vector<int>& orders, std::mt19937_64& rng) {
    const Field& F = *field;
    if (orders.empty()) throw std::invalid_argument("need at least the pole at infinity");
    if (F.size() < orders.size() - 1)
        throw Error(ErrorKind::FieldTooSmall, "GF(" + std::to_string(F.size()) + ") has fewer than " +
                                                  std::to_string(orders.size() - 1) + " elements for distinct poles");
    auto draw = [&] { return F.element(uniform_below(rng, F.size())); };
    auto draw_nonzero = [&] { return F.element(1 + uniform_below(rng, F.size() - 1)); };
    CurveSpec spec{field, {}};
    std::set<std::uint64_t> used;
    for (std::size_t j = 0; j < orders.size(); ++j) {
        const auto d = static_cast<std::size_t>(orders[j]);
        std::vector<FieldElement> coeffs;
        if (j == 0) {
            for (std::size_t i = 0; i < d; ++i) coeffs.push_back(draw());
            coeffs.push_back(draw_nonzero());
            spec.poles.push_back(PoleDatum::infinite(std::move(coeffs)));
            continue;
        }
        FieldElement e = draw();
        while (used.count(e.code())) e = draw();
        used.insert(e.code());
        for (std::size_t i = 1; i < d; ++i) coeffs.push_back(draw());
        coeffs.push_back(draw_nonzero());
        spec.poles.push_back(PoleDatum::finite(e, coeffs));
    }
    return spec;
}

inline SweepReport run_sweep(const SweepConfig& config, Pipeline pipeline = Pipeline::Rational) {
    if (config.samples < 1) throw std::invalid_argument("sample count must be at least 1");
    for (int d : config.orders) {
        if (d < 1) throw std::invalid_argument("pole orders must be positive");
        if (d % static_cast<int>(config.p) == 0)
            throw Error(ErrorKind::PoleOrderDivisibleByP, "order " + std::to_string(d) + " divisible by p");
    }
    const FieldPtr field = Field::create(config.p, config.field_degree);
    SweepReport report;
    report.config = config;
    report.theorem = theorem_a_number(config.p, config.orders);
    for (int i = 0; i < config.samples; ++i) {
        SweepSample sample;
        sample.index = i;
        sample.seed = sample_seed(config.seed, i);
        std::mt19937_64 rng(sample.seed);
        const CurveSpec spec = random_curve(field, config.orders, rng);
        const CartierMatrix M = cartier_matrix(spec, pipeline);
        sample.g = static_cast<int>(M.size());
        sample.rank = static_cast<int>(rank(M));
        sample.a = sample.g - sample.rank;
        sample.s = p_rank_stable(M);
        ++report.a_distribution[sample.a];
        report.samples.push_back(sample);
    }
    report.distinct_a = static_cast<int>(report.a_distribution.size());
    if (report.theorem)
        report.pass = report.distinct_a == 1 && report.a_distribution.begin()->first == *report.theorem;
    return report;
}

inline std::string sweep_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "sample,seed,a,s,g,rank\n";
    for (const auto& s : report.samples)
        out << s.index << "," << s.seed << "," << s.a << "," << s.s << "," << s.g << "," << s.rank << "\n";
    return out.str();
}

}  // namespace ascart
