#include "bohr/errors.hpp"
#include "bohr/json_io.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace bohr;

namespace {

const Module& Z_sqrt2() {
    static const Module m = Module::create({Generator::rational(1), Generator::named("sqrt2")});
    return m;
}

}  // namespace

TEST_CASE("modules round trip") {
    const Module m = Module::create({Generator::rational(Rational(1, 6)), Generator::named("pi", 2),
                                     Generator::named("g", 1, "0.123456789")});
    const Json j = module_to_json(m);
    CHECK(j["generators"][0]["rational_scale"] == Json::array({1, 6}));
    CHECK(j["generators"][0]["symbol"].is_null());
    CHECK(j["generators"][1]["symbol"] == "pi");
    const Module back = module_from_json(Json::parse(j.dump()));
    CHECK(back == m);
    CHECK(back.generator_value(2) == doctest::Approx(0.123456789));

    CHECK(module_from_json(Json::parse(R"({"generators": [{"symbol": null, "rational_scale": "1/3"}]})")).generator(0).label() == "1/3");
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"generators": [{"symbol": null, "rational_scale": [1, 0]}]})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"generators": [{"rational_scale": 1}, {"rational_scale": 2}]})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"gens": []})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"generators": [{"symbol": 5}]})")), InputError);
}

TEST_CASE("scalars") {
    CHECK(scalar_to_json(Scalar(1)).dump() == "[1,0]");
    CHECK(scalar_to_json(Scalar(Rational(1, 2), Rational(-3))).dump() == "[0.5,-3]");
    CHECK(scalar_exact_json(Scalar(Rational(1, 3), Rational(0))) == Json::array({"1/3", "0"}));
    CHECK(scalar_exact_json(Scalar::inexact({0.5, 0})).is_null());
}

TEST_CASE("functions and measures round trip") {
    for (int k = 0; k < 100; ++k) {
        const APFunction f = oracle::random_ap(Z_sqrt2(), 4, 3, k % 2 == 0);
        const APFunction back = ap_from_json(Json::parse(ap_to_json(f).dump()));
        CHECK(back == f);
        CHECK(back.is_exact() == f.is_exact());
    }
    const auto F = symmetric_box(Z_sqrt2(), 1);
    const FSMeasure haar = haar_measure(Z_sqrt2(), F);
    const Json hj = measure_to_json(haar);
    CHECK(hj["entries"].size() == 9);
    CHECK(hj["entries"][0].contains("coords"));
    CHECK(measure_from_json(Json::parse(hj.dump())).moments() == haar.moments());

    const FSMeasure mix = FSMeasure::create(Z_sqrt2(), oracle::point_mixture_moments(F, {0.3, 0.7}, {{0.1, 0.2}, {0.6, 0.9}}));
    const FSMeasure back = measure_from_json(Json::parse(measure_to_json(mix).dump()));
    for (const auto& [c, v] : mix.moments()) CHECK(approx_equal(*back.moment(Frequency(Z_sqrt2(), c)), v, 0.0));

    const Json bad = Json::parse(R"({"module": {"generators": [{"rational_scale": 1}]},
        "entries": [{"coords": [0], "re": 1}, {"coords": [1], "re": 2}, {"coords": [-1], "re": 2}]})");
    CHECK_THROWS_WITH_AS(measure_from_json(bad), doctest::Contains("positive"), InputError);
    const Json repeated = Json::parse(R"({"module": {"generators": [{"rational_scale": 1}]},
        "entries": [{"coords": [0], "re": 1}, {"coords": [0], "re": 1}]})");
    CHECK_THROWS_WITH_AS(measure_from_json(repeated), doctest::Contains("repeated"), InputError);
    const Json rank = Json::parse(R"({"module": {"generators": [{"rational_scale": 1}]}, "entries": [{"coords": [0, 0], "re": 1}]})");
    CHECK_THROWS_WITH_AS(measure_from_json(rank), doctest::Contains("rank"), InputError);
    CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"module": {"generators": []}, "entries": [{"coords": [], "re": true}]})")), InputError);
    CHECK_THROWS_AS(measure_from_json(Json::parse("[1, 2]")), InputError);
}

TEST_CASE("points") {
    const BohrPoint p(Z_sqrt2(), {Turn::exact(Rational(1, 4)), Turn::approx(0.3)});
    const Json j = point_to_json(p);
    CHECK(j["angles_over_2pi"][0] == "0.25");
    const BohrPoint back = point_from_json(Json::parse(j.dump()), Z_sqrt2());
    CHECK(back == p);
    CHECK(back.angles()[0].is_exact());
    CHECK_THROWS_AS(point_from_json(Json::parse(R"({"angles_over_2pi": [0.1]})"), Z_sqrt2()), InputError);
}

TEST_CASE("Q measures") {
    const QMeasure mu(RealLineMeasure({0.0, 0.5, 1.0}, {0.0, 0.4, 0.0}, {{2.0, 0.1}}),
                      haar_measure(Z_sqrt2(), symmetric_box(Z_sqrt2(), 1)));
    const QMeasure back = qmeasure_from_json(Json::parse(qmeasure_to_json(mu).dump()));
    CHECK(back.r_part().breakpoints() == mu.r_part().breakpoints());
    CHECK(back.r_part().values() == mu.r_part().values());
    CHECK(back.r_part().atoms() == mu.r_part().atoms());
    CHECK(back.bohr_part().moments() == mu.bohr_part().moments());
    CHECK(back.r_mass() == doctest::Approx(0.3));

    const Json no_r = Json::parse(R"({"bohr_part": {"module": {"generators": []}, "entries": [{"coords": [], "re": 1}]}})");
    CHECK(qmeasure_from_json(no_r).r_mass() == 0.0);
    const Json infinite = Json::parse(R"({"r_part": {"breakpoints": [0, 1], "values": [1, 1]},
        "bohr_part": {"module": {"generators": []}, "entries": [{"coords": [], "re": 1}]}})");
    CHECK_THROWS_WITH_AS(qmeasure_from_json(infinite), doctest::Contains("infinite"), InputError);
    const Json atom = Json::parse(R"({"r_part": {"atoms": [[0, 1, 2]]},
        "bohr_part": {"module": {"generators": []}, "entries": [{"coords": [], "re": 1}]}})");
    CHECK_THROWS_AS(qmeasure_from_json(atom), InputError);
}

TEST_CASE("verdict reports") {
    const Module z = Module::create({Generator::rational(1)});
    const auto F = symmetric_box(z, 2);
    const Json u = uniqueness_to_json(uniqueness_verdict(z, F, {Real::pi_multiple(2)}));
    CHECK(u["verdict"] == "Undetermined");
    CHECK(u["surviving_frequencies"].size() == 4);
    CHECK(u["surviving_frequencies"][0].contains("coords"));
    CHECK(u["witness_shifts"].empty());

    const Json forced = uniqueness_to_json(uniqueness_verdict(z, F, {Real::rational(1)}));
    CHECK(forced["verdict"] == "ForcedHaar");
    CHECK(forced["witness_shifts"].size() == 4);
    CHECK(forced["exact_decisions"] == 4);

    const QVerdict q = q_invariance_verdict(QMeasure(RealLineMeasure({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}), haar_measure(z, F)),
                                            {Real::rational(1)});
    const Json j = q_verdict_to_json(q);
    CHECK(j["verdict"] == "ForcedStandard");
    CHECK(j["bohr_verdict"] == "ForcedHaar");
    CHECK(j["measure_invariant"] == false);
    CHECK(j["r_part"][0]["witness_interval"] == Json::array({0.0, 1.0}));
    CHECK(j["gram"]["is_identity"] == true);
    CHECK(j["gram"]["matrix"][0][0] == Json::array({1, 0}));
    CHECK(matrix_to_json({{Scalar(1), Scalar::inexact({0.5, -0.5})}}).dump() == "[[[1,0],[0.5,-0.5]]]");
}
