// ascart: Cartier-Manin matrices, a-numbers and zeta data of Artin-Schreier curves.
//
// Exit codes: 0 success / verified, 1 mathematical mismatch, 2 invalid input.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ascart/io.hpp"
#include "ascart/sweep.hpp"

namespace {

using namespace ascart;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInvalid = 2;

struct Options {
    std::string command;
    std::string spec_file;
    bool json = false;
    std::string method = "both";
    std::string pipeline = "rational";
    int samples = 100;
    std::uint64_t seed = 0;
    std::string orders;
    std::uint32_t p = 0;
    unsigned field_degree = 1;
    std::string csv;
    std::string num;
    std::string den;
    std::string infinity;
};

Pipeline pipeline_of(const std::string& name) { return name == "local" ? Pipeline::Local : Pipeline::Rational; }

CurveSpec load(const Options& opt) {
    if (opt.spec_file.empty()) throw Error(ErrorKind::ParseError, "this command needs a spec file");
    return parse_spec(opt.spec_file);
}

void print_matrix(const CartierMatrix& M) {
    const auto& basis = M.basis();
    std::size_t width = 1;
    for (std::size_t r = 0; r < M.size(); ++r)
        for (std::size_t c = 0; c < M.size(); ++c) width = std::max(width, M.at(r, c).to_string().size());
    std::cout << "basis (columns are C(w) for w in this order):\n";
    for (std::size_t i = 0; i < basis.size(); ++i) std::cout << "  " << i << ": " << basis[i].to_string() << "\n";
    for (std::size_t r = 0; r < M.size(); ++r) {
        std::cout << "  [";
        for (std::size_t c = 0; c < M.size(); ++c)
            std::cout << (c ? " " : "") << std::setw(static_cast<int>(width)) << M.at(r, c).to_string();
        std::cout << "]\n";
    }
}

void print_anumber(const ANumberReport& r) {
    std::cout << "g = " << r.g << "\nrank = " << r.rank << "\na (g - rank) = " << r.a_rank << "\n";
    if (r.a_formula) std::cout << "a (closed formula) = " << *r.a_formula << "\nmatch = " << (*r.match ? "yes" : "NO") << "\n";
    else std::cout << "closed formula: not applicable (p != 1 mod L)\n";
}

int cmd_info(const Options& opt) {
    const CurveSpec spec = load(opt);
    const CurveInvariants inv = validate(spec);
    if (opt.json) {
        json out = to_json(inv);
        out["field"] = to_json(*spec.field);
        out["orders"] = spec.orders();
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "field: GF(" << spec.field->size() << "), p = " << spec.p() << "\n";
    std::cout << "f = " << f_rational(spec).to_string() << "\n";
    std::cout << "pole orders:";
    for (int d : spec.orders()) std::cout << " " << d;
    std::cout << "\nm = " << inv.m << "\nD = " << inv.D << "\nL = " << inv.L << "\ng = " << inv.g << "\ns = " << inv.s
              << "\np = 1 mod L: " << (inv.theorem_applicable ? "yes" : "no") << "\n";
    if (inv.theorem_applicable) {
        std::cout << "gamma:";
        for (int g : inv.gamma) std::cout << " " << g;
        std::cout << "\n";
    }
    return kOk;
}

int cmd_matrix(const Options& opt) {
    const CurveSpec spec = load(opt);
    CartierEngine engine(spec);
    const CartierMatrix M = engine.matrix(pipeline_of(opt.pipeline));
    int status = kOk;
    if (opt.pipeline == "both" && engine.matrix(Pipeline::Local) != M) {
        std::cerr << "pipelines disagree\n";
        status = kMismatch;
    }
    if (opt.json) std::cout << to_json(M).dump(2) << "\n";
    else print_matrix(M);
    return status;
}

int cmd_anumber(const Options& opt) {
    const CurveSpec spec = load(opt);
    const CurveInvariants inv = validate(spec);
    if (opt.method == "formula" && !inv.theorem_applicable)
        throw Error(ErrorKind::ConditionNotSatisfied, "p is not 1 mod L; use --method rank");
    ANumberReport report;
    if (opt.method == "formula") {
        report.g = inv.g;
        report.a_formula = theorem_a_number(spec.p(), spec.orders());
        report.rank = report.g - *report.a_formula;
        report.a_rank = *report.a_formula;
    } else {
        report = a_number(spec, pipeline_of(opt.pipeline));
        if (opt.method == "rank") {
            report.a_formula.reset();
            report.match.reset();
        }
    }
    if (opt.json) std::cout << to_json(report).dump(2) << "\n";
    else print_anumber(report);
    return report.match.value_or(true) ? kOk : kMismatch;
}

int cmd_verify(const Options& opt) {
    const CurveSpec spec = load(opt);
    const CurveInvariants inv = validate(spec);
    if (!inv.theorem_applicable)
        throw Error(ErrorKind::ConditionNotSatisfied,
                    "p = " + std::to_string(spec.p()) + " is not 1 mod L = " + std::to_string(inv.L));
    const ANumberReport report = a_number(spec, pipeline_of(opt.pipeline));
    if (opt.json) std::cout << to_json(report).dump(2) << "\n";
    else print_anumber(report);
    return *report.match ? kOk : kMismatch;
}

int cmd_zeta(const Options& opt) {
    const CurveSpec spec = load(opt);
    const CurveInvariants inv = validate(spec);
    const auto counts = point_counts(spec, inv.g);
    const LPolynomial L = l_polynomial_from_counts(static_cast<std::int64_t>(spec.field->size()), inv.g, counts);
    const SlopePolygon np = newton_polygon(L, spec.p());
    const SlopePolygon hp = hodge_polygon(spec.orders());
    std::string comparison;
    try {
        comparison = std::string(to_string(compare_polygons(np, hp, spec.p())));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotShrinkable) throw;
        comparison = "not_shrinkable";
    }
    if (opt.json) {
        json out{{"q", L.q},
                 {"counts", counts},
                 {"l", L.coeffs},
                 {"newton", to_json(np)},
                 {"hodge", to_json(hp)},
                 {"comparison", comparison}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "q = " << L.q << "\ncounts N_1..N_g:";
        for (auto n : counts) std::cout << " " << n;
        std::cout << "\nL(u) coefficients:";
        for (auto c : L.coeffs) std::cout << " " << c;
        std::cout << "\nNewton slopes: " << np.to_string() << "\nHodge slopes:  " << hp.to_string()
                  << "\nshrunk Newton vs Hodge: " << comparison << "\n";
    }
    if (inv.theorem_applicable && comparison != "equal") return kMismatch;
    return kOk;
}

int cmd_oracle(const Options& opt) {
    const CurveSpec spec = load(opt);
    CartierEngine engine(spec);
    const bool agree = engine.matrix(Pipeline::Rational) == engine.matrix(Pipeline::Local);
    if (opt.json) std::cout << json{{"agree", agree}, {"g", engine.basis().size()}}.dump(2) << "\n";
    else std::cout << "rational and local pipelines " << (agree ? "agree" : "DISAGREE") << " (g = " << engine.basis().size() << ")\n";
    return agree ? kOk : kMismatch;
}

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(static_cast<int>(detail::parse_uint(detail::trim_copy(part))));
    if (out.empty()) throw Error(ErrorKind::ParseError, "--orders needs at least one pole order");
    return out;
}

int cmd_sweep(const Options& opt) {
    if (opt.p == 0) throw Error(ErrorKind::ParseError, "sweep needs --p");
    SweepConfig config{opt.p, opt.field_degree, {}, opt.samples, opt.seed};
    try {
        config.orders = parse_orders(opt.orders);
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    const SweepReport report = run_sweep(config, pipeline_of(opt.pipeline));
    if (!opt.csv.empty()) {
        std::ofstream out(opt.csv);
        if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + opt.csv + "'");
        out << sweep_csv(report);
    }
    if (opt.json) {
        json samples = json::array();
        for (const auto& s : report.samples)
            samples.push_back({{"sample", s.index}, {"seed", s.seed}, {"a", s.a}, {"s", s.s}, {"g", s.g}, {"rank", s.rank}});
        json dist = json::object();
        for (const auto& [a, n] : report.a_distribution) dist[std::to_string(a)] = n;
        json out{{"generator", kGeneratorName}, {"seed", config.seed},       {"p", config.p},
                 {"field_degree", config.field_degree}, {"orders", config.orders}, {"samples", samples},
                 {"distinct_a", report.distinct_a},    {"distribution", dist}};
        out["theorem"] = report.theorem ? json(*report.theorem) : json(nullptr);
        out["pass"] = report.pass ? json(*report.pass) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "generator: " << kGeneratorName << "\nseed: " << config.seed << "\np = " << config.p
                  << ", field degree " << config.field_degree << ", orders " << opt.orders << ", " << config.samples
                  << " samples\n";
        std::cout << "a-number distribution:";
        for (const auto& [a, n] : report.a_distribution) std::cout << " a=" << a << ":" << n;
        std::cout << "\np-ranks:";
        std::map<int, int> s_dist;
        for (const auto& s : report.samples) ++s_dist[s.s];
        for (const auto& [s, n] : s_dist) std::cout << " s=" << s << ":" << n;
        std::cout << "\n";
        if (report.theorem)
            std::cout << "closed formula: " << *report.theorem << "\nresult: " << (*report.pass ? "PASS" : "FAIL") << "\n";
        else
            std::cout << "closed formula: not applicable (exploratory run)\n";
    }
    return report.pass.value_or(true) ? kOk : kMismatch;
}

/// Rational f given by coefficient lists -> spec file text.
int cmd_convert(const Options& opt) {
    if (opt.p == 0) throw Error(ErrorKind::ParseError, "convert needs --p");
    const FieldPtr F = Field::create(opt.p, opt.field_degree);
    auto poly_of = [&](const std::string& text) {
        std::vector<FieldElement> coeffs;
        for (const auto& tok : detail::tokenize(text)) {
            try {
                coeffs.push_back(parse_element(tok, *F));
            } catch (const std::invalid_argument& e) {
                throw Error(ErrorKind::ParseError, e.what());
            }
        }
        return Poly::from_elements(F, coeffs);
    };
    RatFunc f(poly_of(opt.num), opt.den.empty() ? Poly::one(F) : poly_of(opt.den));
    if (f.num().degree() <= f.den().degree()) {
        if (opt.infinity.empty())
            throw Error(ErrorKind::MissingInfinitePole,
                        "f has no pole at infinity; pass --infinity <e> to substitute x -> e + 1/x");
        const FieldElement e = parse_element(opt.infinity, *F);
        f = moebius_substitute(f, e, F->one(), F->one(), F->zero());
    }
    const PartialFraction pf = partial_fractions(f);
    CurveSpec spec{F, {}};
    std::vector<FieldElement> f0;
    for (std::size_t i = 0; i < pf.poly_part.size(); ++i) f0.push_back(pf.poly_part.coeff(i));
    spec.poles.push_back(PoleDatum::infinite(f0));
    for (const auto& t : pf.tails) spec.poles.push_back(PoleDatum::finite(t.location, t.coeffs));
    validate(spec);
    std::cout << format_spec(spec);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Cartier-Manin matrices, a-numbers and zeta data of Artin-Schreier curves y^p - y = f(x)"};
    app.add_option("command", opt.command, "info | matrix | anumber | verify | zeta | oracle | sweep | convert")
        ->required()
        ->check(CLI::IsMember({"info", "matrix", "anumber", "verify", "zeta", "oracle", "sweep", "convert"}));
    app.add_option("spec-file", opt.spec_file, "curve spec file");
    app.add_flag("--json", opt.json, "emit JSON instead of tables");
    app.add_option("--method", opt.method, "a-number method")->check(CLI::IsMember({"rank", "formula", "both"}));
    app.add_option("--pipeline", opt.pipeline, "Cartier reduction pipeline")
        ->check(CLI::IsMember({"rational", "local", "both"}));
    app.add_option("--samples", opt.samples, "sweep sample count")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "sweep seed");
    app.add_option("--orders", opt.orders, "pole orders d0,d1,... (d0 at infinity)");
    app.add_option("--p", opt.p, "characteristic");
    app.add_option("--field-degree", opt.field_degree, "degree k of the field GF(p^k)")->check(CLI::PositiveNumber);
    app.add_option("--csv", opt.csv, "sweep: also write CSV rows sample,seed,a,s,g,rank to this file");
    app.add_option("--num", opt.num, "convert: numerator coefficients, constant first");
    app.add_option("--den", opt.den, "convert: denominator coefficients, constant first");
    app.add_option("--infinity", opt.infinity, "convert: move the pole at this element to infinity");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (opt.command == "info") return cmd_info(opt);
        if (opt.command == "matrix") return cmd_matrix(opt);
        if (opt.command == "anumber") return cmd_anumber(opt);
        if (opt.command == "verify") return cmd_verify(opt);
        if (opt.command == "zeta") return cmd_zeta(opt);
        if (opt.command == "oracle") return cmd_oracle(opt);
        if (opt.command == "sweep") return cmd_sweep(opt);
        return cmd_convert(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
}
