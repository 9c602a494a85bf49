#pragma once

#include "bohr/high_precision.hpp"
#include "bohr/rational.hpp"

#include <string>

namespace bohr {

/// A real parameter (shift, evaluation point) that remembers an exact form
/// q or q*pi when it has one. Exactness survives addition of like forms;
/// anything else degrades to a double.
class Real {
public:
    Real() = default;
    Real(double v) : exact_(false), approx_(v) {}  // NOLINT: doubles are the common case

    static Real rational(const Rational& q);
    static Real pi_multiple(const Rational& q);

    bool is_exact() const { return exact_; }
    /// 0 for q, 1 for q*pi. Only meaningful when is_exact().
    int pi_power() const { return pi_power_; }
    const Rational& coefficient() const { return coefficient_; }

    double value() const { return approx_; }
    HighFloat high() const;
    bool is_zero() const;

    Real operator-() const;
    Real scaled(const Rational& k) const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b) { return a + (-b); }
    friend bool operator==(const Real& a, const Real& b);

    /// "1.5", "1/3*pi", "pi", or the shortest round-trip decimal for inexact values.
    std::string to_string() const;

private:
    Rational coefficient_{0};
    int pi_power_ = 0;
    bool exact_ = true;
    double approx_ = 0.0;
};

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

}  // namespace bohr
