#include "bohr/errors.hpp"
#include "bohr/kinematical_hilbert.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

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

std::vector<Frequency> freqs(const Module& m, std::initializer_list<Coords> cs) {
    std::vector<Frequency> out;
    for (const auto& c : cs) out.emplace_back(m, c);
    return out;
}

FSMeasure random_mixture(const Module& m, const std::vector<Frequency>& support, int atoms) {
    std::vector<double> w;
    std::vector<std::vector<double>> angles;
    double total = 0;
    for (int k = 0; k < atoms; ++k) {
        w.push_back(oracle::uniform(0.01, 1));
        total += w.back();
        std::vector<double> a;
        for (std::size_t j = 0; j < m.rank(); ++j) a.push_back(oracle::uniform(0, 1));
        angles.push_back(a);
    }
    for (auto& x : w) x /= total;
    return FSMeasure::create(m, oracle::point_mixture_moments(support, w, angles));
}

std::vector<Frequency> random_basis(const Module& m, int size, int radius) {
    std::set<Coords> seen;
    std::vector<Frequency> out;
    while (static_cast<int>(out.size()) < size) {
        Coords c(m.rank());
        for (auto& x : c) x = oracle::integer(-radius, radius);
        if (seen.insert(c).second) out.emplace_back(m, c);
    }
    return out;
}

}  // namespace

TEST_CASE("gram_matrix") {
    const auto F = symmetric_box(Z(), 2);
    const GramOperator haar = gram_matrix(haar_measure(Z(), F), freqs(Z(), {{0}, {1}, {2}}));
    CHECK(haar.is_identity());
    CHECK(haar.numeric().isApprox(Eigen::MatrixXcd::Identity(3, 3)));

    const GramOperator ones = gram_matrix(point_mass(point_identity(Z()), F), freqs(Z(), {{0}, {1}, {2}}));
    for (const auto& row : ones.matrix) for (const auto& v : row) CHECK(v == Scalar(1));
    CHECK_FALSE(ones.is_identity(0.5));
    CHECK(ones.min_eigenvalue() == doctest::Approx(0).scale(1));

    const GramOperator one = gram_matrix(random_mixture(Z(), F, 3), freqs(Z(), {{1}}));
    REQUIRE(one.matrix.size() == 1);
    CHECK(one.matrix[0][0] == Scalar(1));

    CHECK_THROWS_WITH_AS(gram_matrix(haar_measure(Z(), F), freqs(Z(), {{0}, {3}})), doctest::Contains("3"), InputError);
}

TEST_CASE("gram matrices are Hermitian PSD with unit diagonal") {
    for (int k = 0; k < 100; ++k) {
        const Module& m = k % 2 ? Z_sqrt2() : Z();
        const auto basis = random_basis(m, 3, 1);
        const auto diffs = difference_set(basis);
        std::vector<Frequency> support;
        std::set<Coords> keys;
        for (const auto& d : diffs) {
            keys.insert(d.coords());
            keys.insert((-d).coords());
        }
        for (const auto& c : keys) support.emplace_back(m, c);
        const GramOperator g = gram_matrix(random_mixture(m, support, 3), basis);
        const Eigen::MatrixXcd G = g.numeric();
        CHECK((G - G.adjoint()).norm() < 1e-12);
        CHECK(g.min_eigenvalue() >= -1e-10);
        for (std::size_t i = 0; i < basis.size(); ++i) CHECK(g.matrix[i][i] == Scalar(1));
    }
}

TEST_CASE("translation_matrix") {
    const auto basis = freqs(Z_sqrt2(), {{0, 0}, {1, 0}, {0, 1}, {2, -1}});
    const TranslationMatrix id = translation_matrix(Real::rational(0), basis);
    for (const auto& d : id.diagonal) CHECK(d == Scalar(1));

    const TranslationMatrix flip = translation_matrix(Real::pi_multiple(1), freqs(Z(), {{1}}));
    CHECK(flip.diagonal[0] == Scalar(-1));
    CHECK(flip.diagonal[0].is_exact());

    for (int k = 0; k < 100; ++k) {
        const double t = oracle::uniform(-50, 50), s = oracle::uniform(-50, 50);
        const TranslationMatrix a = translation_matrix(Real(t), basis);
        const Eigen::MatrixXcd D = a.numeric();
        CHECK((D.adjoint() * D - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
        for (const auto& d : a.diagonal) CHECK(d.abs() == doctest::Approx(1.0).epsilon(1e-14));
        const TranslationMatrix ab = compose(a, translation_matrix(Real(s), basis));
        const TranslationMatrix direct = translation_matrix(Real(t + s), basis);
        for (std::size_t i = 0; i < basis.size(); ++i) CHECK(approx_equal(ab.diagonal[i], direct.diagonal[i], 1e-11));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const double lambda = static_cast<double>(oracle::lambda_of(Z_sqrt2(), basis[i].coords()));
            CHECK(std::abs(a.diagonal[i].value() - std::polar(1.0, lambda * t)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(compose(id, translation_matrix(Real(1.0), freqs(Z_sqrt2(), {{1, 1}}))), InputError);
}

TEST_CASE("unitarity_check") {
    const auto F = symmetric_box(Z(), 3);
    for (const Real& t : {Real(1.0), Real(-7.25), Real::pi_multiple(Rational(1, 3))}) {
        const UnitarityReport r = unitarity_check(haar_measure(Z(), F), freqs(Z(), {{0}, {1}, {3}}), t, 0.0);
        CHECK(r.unitary);
        CHECK(r.defect == 0.0);
    }

    const FSMeasure delta = point_mass(point_identity(Z()), F);
    const UnitarityReport r = unitarity_check(delta, freqs(Z(), {{0}, {1}}), Real(1.0), 1e-12);
    CHECK_FALSE(r.unitary);
    // Oracle: |e^{i} - 1| = 2 sin(1/2).
    CHECK(r.defect == doctest::Approx(2 * std::sin(0.5)).epsilon(1e-14));
    CHECK(r.defect == doctest::Approx(0.958851077208406));
    CHECK(r.worst_row != r.worst_col);

    for (int k = 0; k < 30; ++k) {
        const FSMeasure mu = random_mixture(Z(), F, 3);
        CHECK(unitarity_check(mu, freqs(Z(), {{-1}, {0}, {2}}), Real::rational(0), 0.0).unitary);
        CHECK(unitarity_check(mu, freqs(Z(), {{-1}, {0}, {2}}), Real::rational(0), 0.0).defect == 0.0);
    }
}

TEST_CASE("unitarity is invariance on the difference set") {
    for (int k = 0; k < 300; ++k) {
        const Module& m = k % 2 ? Z_sqrt2() : Z();
        const auto basis = random_basis(m, 1 + k % 3, 2);
        const auto diffs = difference_set(basis);
        const FSMeasure full = random_mixture(m, symmetric_box(m, 4), 2);
        // Half of the cases are invariant by construction.
        const FSMeasure mu = k % 4 < 2 ? invariant_part(full, {Real::rational(1)}) : full;
        const Real t = k % 3 ? Real(oracle::uniform(-5, 5)) : Real::rational(1);
        const double tol = 1e-12;
        const UnitarityReport u = unitarity_check(mu, basis, t, tol);
        const InvarianceReport inv = is_invariant(mu.restricted(diffs), {t}, tol);
        CHECK(u.unitary == inv.invariant);
        CHECK(u.defect == inv.worst_violation);
    }
}

TEST_CASE("unitary for forced shifts means identity Gram") {
    const auto basis = freqs(Z_sqrt2(), {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const auto F = symmetric_box(Z_sqrt2(), 2);
    const std::vector<Real> S = {Real::rational(1)};
    REQUIRE(uniqueness_verdict(Z_sqrt2(), F, S).forced_haar());
    for (int k = 0; k < 100; ++k) {
        const FSMeasure mu = invariant_part(random_mixture(Z_sqrt2(), F, 3), S);
        REQUIRE(unitarity_check(mu, basis, S[0], 1e-12).unitary);
        CHECK(gram_matrix(mu, basis).is_identity(1e-10));
    }
}

TEST_CASE("difference_set") {
    const auto d = difference_set(freqs(Z(), {{0}, {1}, {3}}));
    std::vector<Coords> cs;
    for (const auto& f : d) cs.push_back(f.coords());
    CHECK(cs == std::vector<Coords>{{-3}, {-2}, {-1}, {0}, {1}, {2}, {3}});
    CHECK(difference_set({}).empty());
}

TEST_CASE("l2_inner") {
    const auto F = symmetric_box(Z_sqrt2(), 2);
    const FSMeasure haar = haar_measure(Z_sqrt2(), F);
    for (int k = 0; k < 100; ++k) {
        const APFunction f = oracle::random_ap(Z_sqrt2(), 3, 1, k % 2 == 0);
        const APFunction g = oracle::random_ap(Z_sqrt2(), 3, 1, k % 2 == 0);
        CHECK(approx_equal(l2_inner(haar, f, g), inner(f, g), 1e-12));
        if (k % 2 == 0) CHECK(l2_inner(haar, f, g) == inner(f, g));

        const FSMeasure mu = random_mixture(Z_sqrt2(), F, 1 + k % 4);
        CHECK(l2_inner(mu, f, f).value().real() >= -1e-10);
        CHECK(std::abs(l2_inner(mu, f, f).value().imag()) < 1e-12);
        CHECK(approx_equal(l2_inner(mu, f, g), l2_inner(mu, g, f).conj(), 1e-12));
    }
    const Frequency one(Z(), {1}), two(Z(), {2});
    const FSMeasure rand = random_mixture(Z(), symmetric_box(Z(), 2), 3);
    CHECK(l2_inner(rand, APFunction::character(one), APFunction::character(one)) == Scalar(1));
    const FSMeasure delta = point_mass(point_identity(Z()), symmetric_box(Z(), 2));
    CHECK(l2_inner(delta, APFunction::character(one), APFunction::character(two)) == Scalar(1));
    CHECK_THROWS_AS(l2_inner(delta, APFunction::character(Frequency(Z(), {3})), APFunction::character(Frequency(Z(), {-1}))), InputError);
}

TEST_CASE("strong continuity of the translation group") {
    const auto basis = freqs(Z_sqrt2(), {{0, 0}, {1, 0}, {0, 1}, {-2, 1}, {3, -2}});
    for (int k = 0; k < 200; ++k) {
        Eigen::VectorXcd v(5);
        std::vector<std::pair<Coords, Scalar>> terms;
        for (int i = 0; i < 5; ++i) {
            v[i] = {oracle::uniform(-1, 1), oracle::uniform(-1, 1)};
            terms.emplace_back(basis[static_cast<std::size_t>(i)].coords(), Scalar::inexact(v[i]));
        }
        const APFunction f = APFunction::from_terms(Z_sqrt2(), terms);
        const double t = oracle::uniform(-10, 10);
        const double t_prime = t + std::pow(10.0, -oracle::uniform(1, 8));
        const Eigen::VectorXcd diff =
            (translation_matrix(Real(t), basis).numeric() - translation_matrix(Real(t_prime), basis).numeric()) * v;
        const double bound = continuity_modulus(f, Real(t), Real(t_prime));
        CHECK(diff.norm() <= bound + 1e-12);
        // Lipschitz in t with constant sum |v_k| |lambda_k|.
        double lip = 0;
        for (int i = 0; i < 5; ++i) {
            lip += std::abs(v[i]) * std::abs(static_cast<double>(oracle::lambda_of(Z_sqrt2(), basis[static_cast<std::size_t>(i)].coords())));
        }
        CHECK(bound <= lip * (t_prime - t) * (1 + 1e-9) + 1e-12);
    }
}
