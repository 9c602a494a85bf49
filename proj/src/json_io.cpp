#include "bohr/json_io.hpp"

#include "bohr/errors.hpp"

#include <cmath>
#include <limits>

namespace bohr {

namespace {

template <class F>
auto guarded(const char* what, F&& body) {
    try {
        return body();
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

struct Component {
    bool exact = true;
    Rational q;
    double d = 0.0;
};

Component component_from_json(const Json& j) {
    Component c;
    if (j.is_string()) {
        c.q = parse_rational(j.get<std::string>());
        c.d = to_double(c.q);
    } else if (j.is_number_integer()) {
        c.q = Rational(j.get<std::int64_t>());
        c.d = to_double(c.q);
    } else if (j.is_number_float()) {
        c.exact = false;
        c.d = j.get<double>();
        if (!std::isfinite(c.d)) throw InputError("non-finite number");
    } else if (j.is_null()) {
        c.q = 0;
    } else {
        throw InputError("expected a number or a rational string, got " + j.dump());
    }
    return c;
}

Scalar scalar_from_fields(const Json& entry) {
    const Component re = component_from_json(field(entry, "re"));
    const Component im = entry.contains("im") ? component_from_json(entry.at("im")) : Component{};
    if (re.exact && im.exact) return Scalar(re.q, im.q);
    return Scalar::inexact({re.d, im.d});
}

Coords coords_from_json(const Json& j, const Module& module) {
    if (!j.is_array()) throw InputError("coords must be an array of integers");
    Coords c;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InputError("coords must be integers");
        c.push_back(v.get<std::int64_t>());
    }
    if (c.size() != module.rank()) {
        throw InputError("coords have length " + std::to_string(c.size()) + " but the module has rank " +
                         std::to_string(module.rank()));
    }
    return c;
}

Json number_json(const Rational& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(to_double(q));
}

Json rational_pair(const Rational& q) {
    const auto part = [](const mpz_class& z) { return z.fits_slong_p() ? Json(z.get_si()) : Json(z.get_str()); };
    return Json::array({part(q.get_num()), part(q.get_den())});
}

Rational rational_from_pair(const Json& j) {
    if (j.is_array() && j.size() == 2) {
        const Component n = component_from_json(j[0]);
        const Component d = component_from_json(j[1]);
        if (!n.exact || !d.exact) throw InputError("rational_scale entries must be exact");
        if (sgn(d.q) == 0) throw InputError("rational_scale has zero denominator");
        Rational q = n.q / d.q;
        q.canonicalize();
        return q;
    }
    const Component c = component_from_json(j);
    if (!c.exact) throw InputError("rational_scale must be exact");
    return c.q;
}

std::map<Coords, Scalar> coefficient_map(const Json& list, const Module& module) {
    if (!list.is_array()) throw InputError("coefficient list must be an array");
    std::map<Coords, Scalar> out;
    for (const auto& entry : list) {
        Coords c = coords_from_json(field(entry, "coords"), module);
        if (!out.emplace(std::move(c), scalar_from_fields(entry)).second) {
            throw InputError("repeated coords in coefficient list");
        }
    }
    return out;
}

Json coefficient_list(const std::map<Coords, Scalar>& terms) {
    Json list = Json::array();
    for (const auto& [c, v] : terms) {
        Json entry;
        entry["coords"] = c;
        if (v.is_exact()) {
            entry["re"] = format_rational(v.exact().re);
            entry["im"] = format_rational(v.exact().im);
        } else {
            entry["re"] = v.value().real();
            entry["im"] = v.value().imag();
        }
        list.push_back(std::move(entry));
    }
    return list;
}

std::vector<double> doubles_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(component_from_json(v).d);
    return out;
}

}  // namespace

Json generator_to_json(const Generator& g) {
    Json j;
    j["symbol"] = g.symbol ? Json(*g.symbol) : Json(nullptr);
    j["decimal"] = g.decimal;
    j["rational_scale"] = rational_pair(g.rational_scale);
    return j;
}

Generator generator_from_json(const Json& j) {
    return guarded("generator", [&] {
        const Rational scale = j.contains("rational_scale") ? rational_from_pair(j.at("rational_scale")) : Rational(1);
        const Json& symbol = j.contains("symbol") ? j.at("symbol") : Json(nullptr);
        const std::string decimal = j.contains("decimal") ? j.at("decimal").get<std::string>() : std::string();
        if (symbol.is_null()) {
            return Generator::rational(scale * (decimal.empty() ? Rational(1) : parse_rational(decimal)));
        }
        return Generator::named(symbol.get<std::string>(), scale, decimal);
    });
}

Json module_to_json(const Module& m) {
    Json gens = Json::array();
    for (const auto& g : m.generators()) gens.push_back(generator_to_json(g));
    return Json{{"generators", gens}};
}

Module module_from_json(const Json& j) {
    return guarded("module", [&] {
        std::vector<Generator> gens;
        const Json& list = field(j, "generators");
        if (!list.is_array()) throw InputError("generators must be an array");
        for (const auto& g : list) gens.push_back(generator_from_json(g));
        return Module::create(gens);
    });
}

Json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return Json::array({number_json(s.exact().re), number_json(s.exact().im)});
    return Json::array({s.value().real(), s.value().imag()});
}

Json scalar_exact_json(const Scalar& s) {
    if (!s.is_exact()) return nullptr;
    return Json::array({format_rational(s.exact().re), format_rational(s.exact().im)});
}

Json ap_to_json(const APFunction& f) {
    return Json{{"module", module_to_json(f.module())}, {"terms", coefficient_list(f.terms())}};
}

APFunction ap_from_json(const Json& j) {
    return guarded("function", [&] {
        const Module m = module_from_json(field(j, "module"));
        std::vector<std::pair<Coords, Scalar>> terms;
        for (auto& kv : coefficient_map(field(j, "terms"), m)) terms.emplace_back(kv.first, kv.second);
        return APFunction::from_terms(m, terms);
    });
}

Json measure_to_json(const FSMeasure& mu) {
    return Json{{"module", module_to_json(mu.module())}, {"entries", coefficient_list(mu.moments())}};
}

FSMeasure measure_from_json(const Json& j) {
    return guarded("measure", [&] {
        const Module m = module_from_json(field(j, "module"));
        return FSMeasure::create(m, coefficient_map(field(j, "entries"), m));
    });
}

Json point_to_json(const BohrPoint& p) {
    Json angles = Json::array();
    for (const auto& a : p.angles()) {
        angles.push_back(a.is_exact() ? Json(format_rational(a.exact_value())) : Json(a.value()));
    }
    return Json{{"angles_over_2pi", angles}};
}

BohrPoint point_from_json(const Json& j, const Module& module) {
    return guarded("point", [&] {
        const Json& list = field(j, "angles_over_2pi");
        if (!list.is_array() || list.size() != module.rank()) {
            throw InputError("angles_over_2pi needs one entry per generator");
        }
        std::vector<Turn> angles;
        for (const auto& a : list) {
            const Component c = component_from_json(a);
            angles.push_back(c.exact ? Turn::exact(c.q) : Turn::approx(c.d));
        }
        return BohrPoint(module, angles);
    });
}

Json r_part_to_json(const RealLineMeasure& r) {
    Json atoms = Json::array();
    for (const auto& [x, m] : r.atoms()) atoms.push_back(Json::array({x, m}));
    return Json{{"breakpoints", r.breakpoints()}, {"values", r.values()}, {"atoms", atoms}};
}

RealLineMeasure r_part_from_json(const Json& j) {
    return guarded("r_part", [&] {
        std::vector<double> breakpoints, values;
        if (j.contains("breakpoints")) breakpoints = doubles_from_json(j.at("breakpoints"), "breakpoints");
        if (j.contains("values")) values = doubles_from_json(j.at("values"), "values");
        std::vector<std::pair<double, double>> atoms;
        if (j.contains("atoms")) {
            for (const auto& a : j.at("atoms")) {
                if (!a.is_array() || a.size() != 2) throw InputError("atoms must be [x, mass] pairs");
                atoms.emplace_back(component_from_json(a[0]).d, component_from_json(a[1]).d);
            }
        }
        return RealLineMeasure(breakpoints, values, atoms);
    });
}

Json qmeasure_to_json(const QMeasure& mu) {
    return Json{{"r_part", r_part_to_json(mu.r_part())}, {"bohr_part", measure_to_json(mu.bohr_part())}};
}

QMeasure qmeasure_from_json(const Json& j) {
    return guarded("QMeasure", [&] {
        RealLineMeasure r = j.contains("r_part") ? r_part_from_json(j.at("r_part")) : RealLineMeasure();
        return QMeasure(std::move(r), measure_from_json(field(j, "bohr_part")));
    });
}

Json matrix_to_json(const ScalarMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(scalar_to_json(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json frequency_to_json(const Frequency& f) {
    return Json{{"coords", f.coords()}, {"value", freq_value(f)}};
}

Json uniqueness_to_json(const UniquenessVerdict& v) {
    Json surviving = Json::array();
    for (const auto& f : v.surviving) surviving.push_back(frequency_to_json(f));
    Json witnesses = Json::array();
    for (const auto& [f, t] : v.witnesses) {
        witnesses.push_back(Json{{"frequency", frequency_to_json(f)}, {"shift", t.to_string()}});
    }
    return Json{{"verdict", v.forced_haar() ? "ForcedHaar" : "Undetermined"},
                {"surviving_frequencies", surviving},
                {"witness_shifts", witnesses},
                {"exact_decisions", v.exact_decisions}};
}

Json q_verdict_to_json(const QVerdict& v) {
    Json out = uniqueness_to_json(v.bohr_uniqueness);
    out["bohr_verdict"] = out["verdict"];
    out["verdict"] = v.forced_standard() ? "ForcedStandard" : "Undetermined";
    out["measure_invariant"] = v.measure_invariant;

    Json r_reports = Json::array();
    for (const auto& [t, r] : v.r_reports) {
        Json entry{{"shift", t.to_string()}, {"invariant", r.invariant}, {"r_mass", r.r_mass}};
        if (r.witness) {
            entry["witness_interval"] = Json::array({r.witness->first, r.witness->second});
            entry["mass"] = r.witness_mass;
            entry["shifted_mass"] = r.shifted_mass;
        } else {
            entry["witness_interval"] = nullptr;
        }
        r_reports.push_back(std::move(entry));
    }
    out["r_part"] = r_reports;

    Json bohr{{"invariant", v.bohr_invariance.invariant}, {"worst_violation", v.bohr_invariance.worst_violation}};
    bohr["violator"] = v.bohr_invariance.violator ? frequency_to_json(*v.bohr_invariance.violator) : Json(nullptr);
    bohr["violating_shift"] =
        v.bohr_invariance.violating_shift ? Json(v.bohr_invariance.violating_shift->to_string()) : Json(nullptr);
    out["bohr_part"] = bohr;

    Json basis = Json::array();
    for (const auto& f : v.gram.basis) basis.push_back(f.coords());
    out["gram"] = Json{{"basis", basis},
                       {"matrix", matrix_to_json(v.gram.matrix)},
                       {"is_identity", v.gram.is_identity(1e-10)}};
    return out;
}

}  // namespace bohr
