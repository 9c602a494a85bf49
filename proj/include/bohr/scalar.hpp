#pragma once

#include "bohr/rational.hpp"

#include <complex>
#include <variant>

namespace bohr {

/// Complex coefficient that is either an exact complex rational or a
/// complex double. Arithmetic stays exact while both operands are exact.
class Scalar {
public:
    /// |z| below this counts as zero for inexact values.
    static constexpr double kZeroThreshold = 1e-15;

    Scalar() : value_(ComplexRational{}) {}
    Scalar(int v) : value_(ComplexRational{Rational(v), Rational(0)}) {}  // NOLINT
    Scalar(const Rational& re, const Rational& im = Rational(0))  // NOLINT
        : value_(ComplexRational{re, im}) {
        auto& z = std::get<ComplexRational>(value_);
        z.re.canonicalize();
        z.im.canonicalize();
    }
    Scalar(const ComplexRational& z) : value_(z) {}  // NOLINT

    static Scalar inexact(std::complex<double> z) {
        Scalar s;
        s.value_ = z;
        return s;
    }
    static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }

    bool is_exact() const { return std::holds_alternative<ComplexRational>(value_); }
    const ComplexRational& exact() const { return std::get<ComplexRational>(value_); }
    std::complex<double> value() const;

    bool is_zero() const;
    double abs() const { return std::abs(value()); }
    Scalar conj() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Same representation and same value.
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    std::variant<ComplexRational, std::complex<double>> value_;
};

bool approx_equal(const Scalar& a, const Scalar& b, double tol);

/// e^{2 pi i r}. Exact for quarter turns, a double otherwise.
Scalar unit_from_turns(const Rational& turns);
Scalar unit_from_turns(double turns);

}  // namespace bohr
