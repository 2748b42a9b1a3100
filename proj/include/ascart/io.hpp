#pragma once

// Curve-spec text files and the JSON report schemas.
//
// Spec grammar (UTF-8, '#' starts a comment, blank lines ignored):
//
//   p = <int>
//   field_degree = <int>            # optional, default 1
//   pole inf: c0 c1 ... c_{d0}      # f_0(x), constant term first
//   pole <elem>: c1 ... c_{dj}      # f_j(1/(x - elem)), degree 1 first
//
// An element is a bare integer in [0, p) (a prime-subfield value) or a digit
// tuple "(a0,a1,...)" of exactly field_degree digits.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ascart/invariants.hpp"
#include "ascart/zeta.hpp"

namespace ascart {

using json = nlohmann::json;

namespace detail {

inline std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Splits on whitespace outside parentheses.
inline std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else if (!(depth > 0 && std::isspace(static_cast<unsigned char>(ch)))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline std::uint64_t parse_uint(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("'" + s + "' is not a non-negative integer");
    return std::stoull(s);
}

}  // namespace detail

inline FieldElement parse_element(const std::string& token, const Field& F) {
    if (!token.empty() && token.front() == '(') {
        if (token.back() != ')') throw std::invalid_argument("unterminated digit tuple '" + token + "'");
        std::vector<std::uint32_t> digits;
        std::stringstream ss(token.substr(1, token.size() - 2));
        std::string part;
        while (std::getline(ss, part, ',')) {
            const auto v = detail::parse_uint(detail::trim_copy(part));
            if (v >= F.characteristic()) throw std::invalid_argument("digit " + part + " out of range");
            digits.push_back(static_cast<std::uint32_t>(v));
        }
        if (digits.size() != F.degree())
            throw std::invalid_argument("tuple '" + token + "' needs " + std::to_string(F.degree()) + " digits");
        return F.from_digits(digits);
    }
    const auto v = detail::parse_uint(token);
    if (v >= F.characteristic()) throw std::invalid_argument("element " + token + " out of range [0, p)");
    return F.element(v);
}

/// Parses and validates a spec. Every failure is an Error whose message starts with the line number.
inline CurveSpec parse_spec_text(const std::string& text, const std::string& source = "<spec>") {
    std::optional<std::uint64_t> p;
    std::uint64_t degree = 1;
    CurveSpec spec;
    std::vector<int> pole_lines;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    auto fail = [&](ErrorKind kind, const std::string& msg) -> Error {
        return Error(kind, source + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        line = detail::trim_copy(line);
        if (line.empty()) continue;
        try {
            if (line.rfind("pole", 0) == 0) {
                const auto colon = line.find(':');
                if (colon == std::string::npos) throw fail(ErrorKind::ParseError, "expected 'pole <location>: coefficients'");
                if (!p) throw fail(ErrorKind::ParseError, "'p = ...' must precede the poles");
                if (!spec.field) spec.field = Field::create(static_cast<std::uint32_t>(*p), static_cast<unsigned>(degree));
                const Field& F = *spec.field;
                const std::string where = detail::trim_copy(std::string_view(line).substr(4, colon - 4));
                std::vector<FieldElement> coeffs;
                for (const auto& tok : detail::tokenize(std::string_view(line).substr(colon + 1)))
                    coeffs.push_back(parse_element(tok, F));
                if (coeffs.empty()) throw fail(ErrorKind::ParseError, "pole has no coefficients");
                if (where == "inf" || where == "∞") spec.poles.push_back(PoleDatum::infinite(std::move(coeffs)));
                else spec.poles.push_back(PoleDatum::finite(parse_element(where, F), coeffs));
                pole_lines.push_back(line_no);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw fail(ErrorKind::ParseError, "unrecognized line '" + line + "'");
            const std::string key = detail::trim_copy(std::string_view(line).substr(0, eq));
            const std::string value = detail::trim_copy(std::string_view(line).substr(eq + 1));
            if (spec.field) throw fail(ErrorKind::ParseError, "header '" + key + "' after the first pole");
            if (key == "p") p = detail::parse_uint(value);
            else if (key == "field_degree") degree = detail::parse_uint(value);
            else throw fail(ErrorKind::ParseError, "unknown key '" + key + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw fail(ErrorKind::ParseError, e.what());
        }
    }
    if (!p) throw Error(ErrorKind::ParseError, source + ": missing 'p = ...'");
    if (!spec.field) throw Error(ErrorKind::ParseError, source + ": no poles given");
    if (spec.poles.size() > 1 && !spec.poles.front().at_infinity()) {
        // allow the infinite pole anywhere in the file
        auto it = std::find_if(spec.poles.begin(), spec.poles.end(), [](const PoleDatum& d) { return d.at_infinity(); });
        if (it != spec.poles.end()) {
            const auto idx = static_cast<std::size_t>(it - spec.poles.begin());
            std::rotate(spec.poles.begin(), it, it + 1);
            std::rotate(pole_lines.begin(), pole_lines.begin() + static_cast<std::ptrdiff_t>(idx),
                        pole_lines.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
        }
    }
    try {
        validate(spec);
    } catch (const Error& e) {
        const std::string where = e.pole() ? source + ":" + std::to_string(pole_lines[*e.pole()]) : source;
        throw Error(e.kind(), where + ": " + e.message(), e.pole());
    }
    return spec;
}

inline CurveSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), path);
}

/// Inverse of parse_spec_text.
inline std::string format_spec(const CurveSpec& spec) {
    std::ostringstream out;
    out << "p = " << spec.p() << "\n";
    out << "field_degree = " << spec.field->degree() << "\n";
    for (const auto& pole : spec.poles) {
        out << "pole " << (pole.at_infinity() ? std::string("inf") : pole.location->to_string()) << ":";
        for (std::size_t i = pole.at_infinity() ? 0 : 1; i < pole.coeffs.size(); ++i) out << " " << pole.coeffs[i].to_string();
        out << "\n";
    }
    return out.str();
}

// JSON -----------------------------------------------------------------------

inline json to_json(const Field& F) { return {{"p", F.characteristic()}, {"k", F.degree()}, {"modulus", F.modulus()}}; }

inline FieldPtr field_from_json(const json& j) {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto k = j.at("k").get<unsigned>();
    auto modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    if (modulus.size() != k + 1) throw Error(ErrorKind::ParseError, "modulus length does not match k");
    return Field::from_modulus(p, std::move(modulus));
}

inline json to_json(const FieldElement& e) { return e.digits(); }

inline FieldElement element_from_json(const json& j, const Field& F) {
    return F.from_digits(j.get<std::vector<std::uint32_t>>());
}

inline json to_json(const BasisForm& w) { return json::array({w.j, w.b, w.r}); }

/// {field, basis: [[j,b,r],...], entries: rows of digit arrays}
inline json to_json(const CartierMatrix& M) {
    json basis = json::array(), entries = json::array();
    for (const auto& w : M.basis()) basis.push_back(to_json(w));
    for (std::size_t r = 0; r < M.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < M.size(); ++c) row.push_back(to_json(M.at(r, c)));
        entries.push_back(std::move(row));
    }
    return {{"field", to_json(*M.field_ptr())}, {"basis", basis}, {"entries", entries}};
}

inline CartierMatrix matrix_from_json(const json& j, FieldPtr field = nullptr) {
    if (!field) field = field_from_json(j.at("field"));
    std::vector<BasisForm> basis;
    for (const auto& w : j.at("basis")) basis.push_back({w.at(0).get<int>(), w.at(1).get<int>(), w.at(2).get<int>()});
    CartierMatrix M(field, basis);
    const auto& rows = j.at("entries");
    if (rows.size() != basis.size()) throw Error(ErrorKind::ParseError, "matrix row count does not match basis");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != basis.size()) throw Error(ErrorKind::ParseError, "matrix row length does not match basis");
        for (std::size_t c = 0; c < basis.size(); ++c) M.set(r, c, element_from_json(rows[r][c], *field));
    }
    return M;
}

inline json to_json(const CurveInvariants& inv) {
    json out{{"m", inv.m},       {"D", inv.D},           {"L", inv.L},
             {"g", inv.g},       {"s", inv.s},           {"epsilon", inv.epsilon},
             {"theorem_applicable", inv.theorem_applicable}};
    out["gamma"] = inv.theorem_applicable ? json(inv.gamma) : json(nullptr);
    return out;
}

inline json to_json(const ANumberReport& r) {
    json out{{"g", r.g}, {"rank", r.rank}, {"a_rank", r.a_rank}};
    out["a_formula"] = r.a_formula ? json(*r.a_formula) : json(nullptr);
    out["match"] = r.match ? json(*r.match) : json(nullptr);
    return out;
}

/// [[num, den, multiplicity], ...]
inline json to_json(const SlopePolygon& poly) {
    json out = json::array();
    for (const auto& [s, mult] : poly.slopes) out.push_back(json::array({s.num, s.den, mult}));
    return out;
}

}  // namespace ascart
