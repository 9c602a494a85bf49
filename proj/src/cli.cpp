#include "bohr/cli.hpp"

#include "bohr/errors.hpp"
#include "bohr/expression.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bohr {

namespace {

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

SymbolTable symbols_from(const std::vector<std::string>& defines) {
    SymbolTable table;
    for (const auto& d : defines) {
        const auto eq = d.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == d.size()) {
            throw InputError("--define expects name=decimal, got '" + d + "'");
        }
        const std::string name = d.substr(0, eq);
        if (!std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) ||
            !std::isalpha(static_cast<unsigned char>(name[0])) || name == "chi" || name == "hat" || name == "i") {
            throw InputError("invalid generator name '" + name + "'");
        }
        parse_rational(d.substr(eq + 1));
        table.defined[name] = d.substr(eq + 1);
    }
    return table;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (out.empty() || (!text.empty() && text.back() == ',')) throw InputError("empty entry in list '" + text + "'");
    return out;
}

std::vector<Generator> generators_from(const std::string& list, const SymbolTable& symbols) {
    std::vector<Generator> gens;
    for (const auto& item : split_list(list)) {
        Expr e;
        try {
            e = parse_expression("chi(" + item + ")", symbols);
        } catch (const ParseError& err) {
            throw InputError("bad generator '" + item + "': " + err.detail());
        }
        if (e.kind != Expr::Kind::Chi) throw InputError("bad generator '" + item + "'");
        const FreqLiteral& f = e.freq;
        if (!f.symbol) {
            gens.push_back(Generator::rational(f.coefficient));
        } else {
            auto it = symbols.defined.find(*f.symbol);
            gens.push_back(Generator::named(*f.symbol, f.coefficient, it == symbols.defined.end() ? "" : it->second));
        }
    }
    return gens;
}

std::pair<int, int> range_from(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw InputError("--freqs expects a..b, got '" + text + "'");
    try {
        std::size_t used_a = 0, used_b = 0;
        const int a = std::stoi(text.substr(0, dots), &used_a);
        const int b = std::stoi(text.substr(dots + 2), &used_b);
        if (used_a != dots || used_b != text.size() - dots - 2) throw std::invalid_argument("trailing");
        return {a, b};
    } catch (const std::logic_error&) {
        throw InputError("--freqs expects integers a..b, got '" + text + "'");
    }
}

Json function_json(const ExtendedFunction& f) {
    Json values = Json::array();
    for (const auto& v : f.c0.values()) values.push_back(Json::array({v.real(), v.imag()}));
    return Json{{"ap_part", ap_to_json(f.ap)},
                {"c0_part", Json{{"breakpoints", f.c0.breakpoints()}, {"values", values}}}};
}

void add_value(Json& report, const char* key, const Scalar& s) {
    report[key] = scalar_to_json(s);
    report[std::string(key) + "_exact"] = scalar_exact_json(s);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

struct Options {
    std::vector<std::string> defines;
    std::string expr, expr2, file, generators, freqs, shifts, angles, t, real;
    double T = 0.0, eps = 0.0, tmax = 0.0, tol = 1e-10;
    std::size_t max_candidates = KroneckerOptions{}.max_candidates;
};

int run_mean(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Expr e = parse_expression(o.expr, symbols);
    const ExtendedFunction f = lower(e, symbols);
    report["expression"] = print_expression(e);
    report["module"] = module_to_json(f.ap.module());
    add_value(report, "value", bohr_mean(f.ap));
    if (o.T > 0.0) {
        const auto numeric = bohr_mean_numeric(f.ap, o.T);
        report["T"] = o.T;
        report["numeric_ap_part"] = Json::array({numeric.real(), numeric.imag()});
        report["error_bound"] = bohr_mean_error_bound(f.ap, o.T);
    }
    return 0;
}

int run_inner(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Expr a = parse_expression(o.expr, symbols);
    const Expr b = parse_expression(o.expr2, symbols);
    const auto lowered = lower_all({a, b}, symbols);
    report["f"] = print_expression(a);
    report["g"] = print_expression(b);
    report["module"] = module_to_json(lowered[0].ap.module());
    add_value(report, "value", inner(lowered[0].ap, lowered[1].ap));
    return 0;
}

int run_translate(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Expr e = parse_expression(o.expr, symbols);
    const Real t = parse_real(o.t, symbols);
    const ExtendedFunction f = pullback(lower(e, symbols), t);
    report["expression"] = print_expression(e);
    report["t"] = t.to_string();
    report["function"] = function_json(f);
    return 0;
}

int run_haar(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const CanonicalModule canonical = canonicalize(generators_from(o.generators, symbols));
    const auto [lo, hi] = range_from(o.freqs);
    if (lo > 0 || hi < 0 || lo != -hi) throw InputError("--freqs must be a symmetric range -r..r");
    if (hi > 1000 || (canonical.module.rank() > 1 && hi > 30) || (canonical.module.rank() > 3 && hi > 3)) {
        throw InputError("--freqs range too large for this rank");
    }
    const std::vector<Real> shifts = parse_real_list(o.shifts, symbols);
    const UniquenessVerdict v = uniqueness_verdict(canonical.module, symmetric_box(canonical.module, hi), shifts);
    report["module"] = module_to_json(canonical.module);
    report.update(uniqueness_to_json(v));
    return v.forced_haar() ? 0 : 1;
}

int run_extension(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Expr e = parse_expression(o.expr, symbols);
    const ExtendedFunction f = lower(e, symbols);
    const Real t = parse_real(o.t, symbols);
    if (o.real.empty() == o.angles.empty()) throw InputError("give exactly one of --real and --angles");
    QPoint p;
    if (!o.real.empty()) {
        p = RealPoint{parse_real(o.real, symbols)};
    } else {
        std::vector<Turn> turns;
        for (const auto& a : split_list(o.angles)) turns.push_back(Turn::exact(parse_rational(a)));
        if (turns.size() != f.ap.module().rank()) {
            throw InputError("--angles needs one entry per generator of " + f.ap.module().describe());
        }
        p = BohrPart{BohrPoint(f.ap.module(), turns)};
    }
    if (!(o.tol >= 0.0)) throw InputError("--tol must be nonnegative");
    const AgreementReport r = extension_agreement_check(t, p, f, o.tol);
    report["expression"] = print_expression(e);
    report["module"] = module_to_json(f.ap.module());
    report["branch"] = is_real_point(p) ? "real" : "bohr";
    report["acted"] = Json::array({r.acted.real(), r.acted.imag()});
    report["pulled_back"] = Json::array({r.pulled.real(), r.pulled.imag()});
    report["residual"] = r.residual;
    report["tol"] = o.tol;
    report["agrees"] = r.agrees;
    return r.agrees ? 0 : 1;
}

int run_check_measure(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Json doc = read_json_file(o.file);
    const std::vector<Real> shifts = parse_real_list(o.shifts, symbols);
    const QMeasure mu = doc.is_object() && doc.contains("bohr_part") ? qmeasure_from_json(doc)
                                                                     : QMeasure(RealLineMeasure(), measure_from_json(doc));
    const QVerdict v = q_invariance_verdict(mu, shifts);
    report.update(q_verdict_to_json(v));
    return v.measure_invariant ? 0 : 1;
}

int run_kronecker(const Options& o, Json& report) {
    const SymbolTable symbols = symbols_from(o.defines);
    const Module module = Module::create(generators_from(o.generators, symbols));
    std::vector<Turn> turns;
    for (const auto& a : split_list(o.angles)) turns.push_back(Turn::exact(parse_rational(a)));
    if (turns.size() != module.rank()) throw InputError("--angles needs one entry per generator");
    if (!(o.tmax > 0.0) || !std::isfinite(o.tmax)) throw InputError("--tmax must be positive");
    const KroneckerResult r = kronecker_approx(BohrPoint(module, turns), o.eps, o.tmax, {o.max_candidates});
    report["module"] = module_to_json(module);
    report["status"] = r.found() ? "Found" : "NotFound";
    report["t"] = r.found() ? Json(r.t) : Json(nullptr);
    report["approximation_error"] = r.error;
    report["eps"] = o.eps;
    report["candidates_examined"] = r.candidates_examined;
    report["budget_exhausted"] = r.budget_exhausted;
    return r.found() ? 0 : 1;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult result;
    Options o;
    CLI::App app{"Almost-periodic functions, Bohr compactification measures and their invariance checks."};
    app.name("bohr");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--define", o.defines, "Named generator name=decimal (repeatable)");

    auto* mean = app.add_subcommand("mean", "Bohr mean of an expression");
    mean->add_option("expr", o.expr)->required();
    mean->add_option("--T", o.T, "Also report the finite-window mean over [-T, T]");

    auto* inner_cmd = app.add_subcommand("inner", "Inner product <f, g>");
    inner_cmd->add_option("f", o.expr)->required();
    inner_cmd->add_option("g", o.expr2)->required();

    auto* translate = app.add_subcommand("translate", "Pull an expression back along x -> x + t");
    translate->add_option("expr", o.expr)->required();
    translate->add_option("--t", o.t)->required();

    auto* haar = app.add_subcommand("verify-haar-uniqueness", "Does invariance force Haar measure on a box support?");
    haar->add_option("--generators", o.generators)->required();
    haar->add_option("--freqs", o.freqs, "Coordinate range -r..r")->required();
    haar->add_option("--shifts", o.shifts)->required();

    auto* extension = app.add_subcommand("verify-extension", "Check the extended action against the pullback");
    extension->add_option("expr", o.expr)->required();
    extension->add_option("--t", o.t)->required();
    extension->add_option("--real", o.real, "Real point x");
    extension->add_option("--angles", o.angles, "Bohr point, angles in turns");
    extension->add_option("--tol", o.tol);

    auto* check = app.add_subcommand("check-measure", "Invariance verdict for a measure file");
    check->add_option("file", o.file)->required();
    check->add_option("--shifts", o.shifts)->required();

    auto* kron = app.add_subcommand("kronecker", "Find t with iota(t) near a Bohr point");
    kron->add_option("--generators", o.generators)->required();
    kron->add_option("--angles", o.angles, "Target angles in turns")->required();
    kron->add_option("--eps", o.eps)->required();
    kron->add_option("--tmax", o.tmax)->required();
    kron->add_option("--max-candidates", o.max_candidates);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success&) {
        result.text = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.report = error_json("usage_error", e.what());
        result.exit_code = 2;
        return result;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    result.report = Json{{"command", chosen->get_name()}};
    try {
        if (chosen == mean) result.exit_code = run_mean(o, result.report);
        else if (chosen == inner_cmd) result.exit_code = run_inner(o, result.report);
        else if (chosen == translate) result.exit_code = run_translate(o, result.report);
        else if (chosen == haar) result.exit_code = run_haar(o, result.report);
        else if (chosen == extension) result.exit_code = run_extension(o, result.report);
        else if (chosen == check) result.exit_code = run_check_measure(o, result.report);
        else result.exit_code = run_kronecker(o, result.report);
    } catch (const ParseError& e) {
        result.report = error_json("parse_error", e.detail());
        result.report["error"]["line"] = e.line();
        result.report["error"]["column"] = e.column();
        result.exit_code = 2;
    } catch (const InputError& e) {
        result.report = error_json("input_error", e.what());
        result.exit_code = 2;
    } catch (const std::exception& e) {
        result.report = error_json("internal_error", e.what());
        result.exit_code = 2;
    }
    return result;
}

}  // namespace bohr
