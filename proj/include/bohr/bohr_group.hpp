#pragma once

#include "bohr/ap_algebra.hpp"
#include "bohr/frequency_module.hpp"
#include "bohr/real.hpp"
#include "bohr/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bohr {

/// An angle measured in turns (fractions of 2 pi), reduced to [0, 1).
/// Exact rational when it can be, a double otherwise.
class Turn {
public:
    Turn() = default;
    static Turn exact(const Rational& turns);
    static Turn approx(double turns);

    bool is_exact() const { return exact_; }
    const Rational& exact_value() const { return exact_value_; }
    double value() const { return value_; }
    double radians() const;

    Turn operator-() const;
    Turn scaled(std::int64_t n) const;
    friend Turn operator+(const Turn& a, const Turn& b);
    friend bool operator==(const Turn& a, const Turn& b);

private:
    bool exact_ = true;
    Rational exact_value_{0};
    double value_ = 0.0;
};

/// Distance on the circle, in turns, in [0, 1/2].
double circular_distance(const Turn& a, const Turn& b);

/// A point of the Bohr compactification seen through a frequency module:
/// the character lambda = (n_1..n_d) -> e^{2 pi i sum n_k angle_k}.
class BohrPoint {
public:
    /// The identity 1_B.
    explicit BohrPoint(Module module);
    BohrPoint(Module module, std::vector<Turn> angles);

    const Module& module() const { return module_; }
    const std::vector<Turn>& angles() const { return angles_; }

    /// psi(chi_lambda).
    Scalar character(const Frequency& lambda) const;

    friend bool operator==(const BohrPoint& a, const BohrPoint& b) {
        return a.module_ == b.module_ && a.angles_ == b.angles_;
    }

private:
    Module module_;
    std::vector<Turn> angles_;
};

BohrPoint point_identity(const Module& module);
/// (psi1 + psi2)(chi) = psi1(chi) psi2(chi): anglewise sum.
BohrPoint point_mul(const BohrPoint& a, const BohrPoint& b);
/// (-psi)(chi) = conj(psi(chi)): anglewise negation.
BohrPoint point_inv(const BohrPoint& a);

/// Angles within tol turns of each other on the circle.
bool approx_equal(const BohrPoint& a, const BohrPoint& b, double tol);

/// iota(x) = evaluation at x; angles g_k x / (2 pi) mod 1.
BohrPoint iota(const Real& x, const Module& module);

/// sum_lambda c_lambda psi(chi_lambda).
Scalar point_eval(const BohrPoint& psi, const APFunction& f);

/// max_k |e^{i g_k t} - e^{i theta_k}|: how well iota(t) matches psi on
/// the generators.
double approximation_error(const BohrPoint& target, double t);

struct KroneckerOptions {
    /// Upper bound on anchor candidates examined before giving up.
    std::size_t max_candidates = 10'000'000;
};

struct KroneckerResult {
    enum class Status { Found, NotFound };
    Status status = Status::NotFound;
    double t = 0.0;
    double error = 0.0;
    std::size_t candidates_examined = 0;
    /// NotFound because max_candidates ran out (as opposed to running out
    /// of the [-t_max, t_max] window). Neither case says no t exists.
    bool budget_exhausted = false;

    bool found() const { return status == Status::Found; }
};

/// Looks for t in [-t_max, t_max] with approximation_error(psi, t) < eps.
/// Candidates are the exact solutions of the first generator's equation,
/// t_k = (theta_1 + 2 pi k) / g_1 for k = 0, 1, -1, 2, ...; around each one
/// the remaining coordinates give linear constraints on a correction s,
/// and the midpoint of their intersection is taken.
KroneckerResult kronecker_approx(const BohrPoint& target, double eps, double t_max,
                                 const KroneckerOptions& options = {});

}  // namespace bohr
