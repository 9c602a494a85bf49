#include "bohr/scalar.hpp"

#include "bohr/high_precision.hpp"

#include <cmath>
#include <numbers>

namespace bohr {

std::complex<double> Scalar::value() const {
    if (const auto* z = std::get_if<ComplexRational>(&value_)) {
        return z->to_complex();
    }
    return std::get<std::complex<double>>(value_);
}

bool Scalar::is_zero() const {
    if (const auto* z = std::get_if<ComplexRational>(&value_)) {
        return z->is_zero();
    }
    return std::abs(std::get<std::complex<double>>(value_)) < kZeroThreshold;
}

Scalar Scalar::conj() const {
    if (const auto* z = std::get_if<ComplexRational>(&value_)) {
        return Scalar(z->conj());
    }
    return inexact(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::operator-() const {
    if (const auto* z = std::get_if<ComplexRational>(&value_)) {
        return Scalar(-*z);
    }
    return inexact(-std::get<std::complex<double>>(value_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar(a.exact() + b.exact());
    }
    return Scalar::inexact(a.value() + b.value());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar(a.exact() * b.exact());
    }
    // Exact zero annihilates, so e.g. phase * 0 stays exactly 0.
    if ((a.is_exact() && a.exact().is_zero()) || (b.is_exact() && b.exact().is_zero())) {
        return Scalar();
    }
    return Scalar::inexact(a.value() * b.value());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) return a.exact() == b.exact();
    return a.value() == b.value();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.is_exact() && b.is_exact()) {
        return a.exact() == b.exact() || std::abs(a.value() - b.value()) <= tol;
    }
    return std::abs(a.value() - b.value()) <= tol;
}

Scalar unit_from_turns(const Rational& turns) {
    Rational r = fractional_part(turns);
    if (sgn(r) == 0) return Scalar(1);
    if (r == Rational(1, 4)) return Scalar(0, 1);
    if (r == Rational(1, 2)) return Scalar(-1);
    if (r == Rational(3, 4)) return Scalar(0, -1);
    HighFloat angle = HighFloat::from_rational(r) * HighFloat::pi() * HighFloat::from_integer(2);
    double a = angle.to_double();
    return Scalar::inexact({std::cos(a), std::sin(a)});
}

Scalar unit_from_turns(double turns) {
    double r = turns - std::floor(turns);
    double a = 2.0 * std::numbers::pi * r;
    return Scalar::inexact({std::cos(a), std::sin(a)});
}

}  // namespace bohr
