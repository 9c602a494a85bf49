#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace bohr {

using Rational = mpq_class;

/// Parses "3", "-2.5", "1/3", "1e-3", "2.5e2/7" into an exact rational.
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Terminating decimals print as decimals ("0.125"), everything else as
/// "n/d". parse_rational(format_rational(q)) == q.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational rational_from_double(double v);

bool is_integer(const Rational& q);

/// Fractional part in [0, 1).
Rational fractional_part(const Rational& q);

struct ComplexRational {
    Rational re;
    Rational im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    ComplexRational conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexRational operator-() const { return {-re, -im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace bohr
