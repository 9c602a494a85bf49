#include "bohr/bohr_group.hpp"
#include "bohr/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bohr;

namespace {

const Module& Z() {
    static const Module m = Module::create({Generator::rational(1)});
    return m;
}

const Module& Z_sqrt2() {
    static const Module m = Module::create({Generator::rational(1), Generator::named("sqrt2")});
    return m;
}

BohrPoint random_point(const Module& m, bool exact) {
    std::vector<Turn> angles;
    for (std::size_t k = 0; k < m.rank(); ++k) {
        angles.push_back(exact ? Turn::exact(Rational(oracle::integer(0, 99), 100)) : Turn::approx(oracle::uniform(0, 1)));
    }
    return BohrPoint(m, angles);
}

}  // namespace

TEST_CASE("Turn arithmetic mod 1") {
    CHECK(Turn::exact(Rational(3, 4)) + Turn::exact(Rational(3, 4)) == Turn::exact(Rational(1, 2)));
    CHECK(Turn::exact(Rational(5, 4)).exact_value() == Rational(1, 4));
    CHECK((-Turn::exact(Rational(1, 4))).exact_value() == Rational(3, 4));
    CHECK(Turn::exact(Rational(1, 3)).scaled(-4).exact_value() == Rational(2, 3));
    CHECK(Turn::approx(1.25).value() == doctest::Approx(0.25));
    CHECK(circular_distance(Turn::approx(0.99), Turn::approx(0.01)) == doctest::Approx(0.02));
}

TEST_CASE("group structure") {
    const BohrPoint psi(Z(), {Turn::exact(Rational(3, 4))});
    CHECK(point_mul(point_identity(Z()), psi) == psi);
    CHECK(point_mul(psi, point_inv(psi)) == point_identity(Z()));
    // 3 pi / 2 + 3 pi / 2 = pi (mod 2 pi).
    CHECK(point_mul(psi, psi) == BohrPoint(Z(), {Turn::exact(Rational(1, 2))}));
    CHECK_THROWS_AS(point_mul(psi, point_identity(Z_sqrt2())), InputError);
    CHECK_THROWS_AS(BohrPoint(Z(), {}), InputError);

    for (int k = 0; k < 200; ++k) {
        const bool exact = k % 2 == 0;
        const BohrPoint a = random_point(Z_sqrt2(), exact), b = random_point(Z_sqrt2(), exact),
                        c = random_point(Z_sqrt2(), exact);
        const double tol = exact ? 0.0 : 1e-12;
        CHECK(approx_equal(point_mul(point_mul(a, b), c), point_mul(a, point_mul(b, c)), tol));
        CHECK(approx_equal(point_mul(a, b), point_mul(b, a), tol));
        CHECK(approx_equal(point_mul(a, point_inv(a)), point_identity(Z_sqrt2()), tol));
        if (exact) CHECK(point_mul(point_mul(a, b), c) == point_mul(a, point_mul(b, c)));
    }
}

TEST_CASE("characters of a point") {
    for (int k = 0; k < 200; ++k) {
        const BohrPoint psi = random_point(Z_sqrt2(), k % 2 == 0);
        const Frequency l(Z_sqrt2(), {oracle::integer(-20, 20), oracle::integer(-20, 20)});
        const Frequency m(Z_sqrt2(), {oracle::integer(-20, 20), oracle::integer(-20, 20)});
        CHECK(approx_equal(psi.character(l + m), psi.character(l) * psi.character(m), 1e-12));
        CHECK(psi.character(l).abs() == doctest::Approx(1.0).epsilon(1e-14));
        const APFunction f = APFunction::character(l) * APFunction::character(m);
        CHECK(approx_equal(point_eval(psi, f), point_eval(psi, APFunction::character(l)) *
                                                   point_eval(psi, APFunction::character(m)), 1e-12));
    }
    CHECK(point_eval(random_point(Z(), true), APFunction::constant(Z(), Scalar(1))) == Scalar(1));
    CHECK_THROWS_AS(point_eval(point_identity(Z()), APFunction::character(Frequency(Z_sqrt2(), {0, 1}))), InputError);
}

TEST_CASE("iota") {
    CHECK(iota(Real::rational(0), Z_sqrt2()) == point_identity(Z_sqrt2()));
    const BohrPoint quarter = iota(Real::pi_multiple(Rational(1, 2)), Z());
    CHECK(quarter == BohrPoint(Z(), {Turn::exact(Rational(1, 4))}));
    CHECK(quarter.character(Frequency(Z(), {1})) == Scalar::imaginary_unit());

    const Module pi = Module::create({Generator::named("pi")});
    CHECK(iota(Real::rational(Rational(1, 3)), pi) == BohrPoint(pi, {Turn::exact(Rational(1, 6))}));
    CHECK(iota(Real::rational(1), Z()).angles()[0].value() == doctest::Approx(1 / (2 * std::numbers::pi)));

    for (int k = 0; k < 200; ++k) {
        const double x = oracle::uniform(-1000, 1000), y = oracle::uniform(-1000, 1000);
        CHECK(approx_equal(point_mul(iota(Real(x), Z_sqrt2()), iota(Real(y), Z_sqrt2())), iota(Real(x) + Real(y), Z_sqrt2()),
                           1e-12));
        const APFunction f = oracle::random_ap(Z_sqrt2(), 5, 4, false);
        CHECK(std::abs(point_eval(iota(Real(x), Z_sqrt2()), f).value() - oracle::eval_direct(f, x)) < 1e-9);
    }
    for (int a = -6; a <= 6; ++a) {
        for (int b = -6; b <= 6; ++b) {
            const Real x = Real::pi_multiple(Rational(a, 3)), y = Real::pi_multiple(Rational(b, 4));
            CHECK(point_mul(iota(x, Z()), iota(y, Z())) == iota(x + y, Z()));
        }
    }
    const BohrPoint psi = random_point(Z_sqrt2(), false);
    const Frequency lambda(Z_sqrt2(), {2, -3});
    const double t = 0.77;
    CHECK(std::abs(point_mul(iota(Real(t), Z_sqrt2()), psi).character(lambda).value() -
                   std::polar(1.0, freq_value(lambda) * t) * psi.character(lambda).value()) < 1e-12);
}

TEST_CASE("kronecker_approx: exact cases") {
    CHECK_THROWS_AS(kronecker_approx(point_identity(Z()), 0.0, 10.0), InputError);
    CHECK_THROWS_AS(kronecker_approx(point_identity(Z()), -1.0, 10.0), InputError);

    const double theta = 2 * std::numbers::pi * 0.3;
    const KroneckerResult r = kronecker_approx(BohrPoint(Z(), {Turn::exact(Rational(3, 10))}), 1e-9, 10.0);
    REQUIRE(r.found());
    CHECK(r.t == doctest::Approx(theta).epsilon(1e-15));

    const BohrPoint five = iota(Real(5.0), Z_sqrt2());
    CHECK(approximation_error(five, 5.0) < 1e-12);
    const KroneckerResult s = kronecker_approx(five, 1e-6, 100.0);
    REQUIRE(s.found());
    CHECK(s.t == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("kronecker_approx agrees with a brute-force grid") {
    // Target (0, pi) on {1, sqrt2}: the grid oracle with step eps / (2 max g) finds a solution in [-1000, 1000].
    const double eps = 0.05;
    const std::vector<double> turns = {0.0, 0.5};
    const double step = eps / (2 * std::sqrt(2.0));
    double best_t = 0, best = 10;
    for (double t = -1000; t <= 1000; t += step) {
        const double e = oracle::kronecker_error(Z_sqrt2(), turns, t);
        if (e < best) {
            best = e;
            best_t = t;
        }
    }
    REQUIRE(best < eps);
    CHECK(std::abs(best_t) <= 1000);

    const BohrPoint target(Z_sqrt2(), {Turn::exact(0), Turn::exact(Rational(1, 2))});
    const KroneckerResult r = kronecker_approx(target, eps, 1000.0);
    REQUIRE(r.found());
    CHECK(std::abs(r.t) <= 1000.0);
    CHECK(oracle::kronecker_error(Z_sqrt2(), turns, r.t) < eps);
    CHECK(r.error == doctest::Approx(oracle::kronecker_error(Z_sqrt2(), turns, r.t)).epsilon(1e-6));
}

TEST_CASE("kronecker_approx on random targets in d = 3") {
    const Module m = Module::create({Generator::rational(1), Generator::named("sqrt2"), Generator::named("sqrt3")});
    int found = 0;
    for (int k = 0; k < 100; ++k) {
        const std::vector<double> turns = {oracle::uniform(0, 1), oracle::uniform(0, 1), oracle::uniform(0, 1)};
        const BohrPoint target(m, {Turn::approx(turns[0]), Turn::approx(turns[1]), Turn::approx(turns[2])});
        const KroneckerResult r = kronecker_approx(target, 0.1, 1e6);
        if (r.found()) {
            ++found;
            CHECK(oracle::kronecker_error(m, turns, r.t) < 0.1);
            CHECK(std::abs(r.t) <= 1e6);
        } else {
            CHECK(r.error >= 0.1);
        }
    }
    CHECK(found >= 95);
}

TEST_CASE("kronecker_approx budget and window") {
    const BohrPoint target(Z_sqrt2(), {Turn::approx(0.123), Turn::approx(0.771)});
    KroneckerOptions tiny;
    tiny.max_candidates = 1;
    const KroneckerResult r = kronecker_approx(target, 1e-6, 1e6, tiny);
    CHECK_FALSE(r.found());
    CHECK(r.budget_exhausted);
    CHECK(r.candidates_examined == 1);

    const KroneckerResult w = kronecker_approx(target, 1e-6, 1.0);
    CHECK_FALSE(w.found());
    CHECK_FALSE(w.budget_exhausted);

    // Every chord is at most 2, so eps above 2 is met at t = 0.
    CHECK(kronecker_approx(BohrPoint(Z(), {Turn::exact(Rational(1, 2))}), 3.0, 1.0).found());
}
