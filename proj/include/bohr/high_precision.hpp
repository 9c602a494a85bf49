#pragma once

#include "bohr/rational.hpp"

#include <mpfr.h>

#include <string>
#include <string_view>

namespace bohr {

/// Decimal digits used for generator constants. Read once from
/// BOHR_PRECISION (default 50, clamped to [20, 1000]).
unsigned working_digits();

/// RAII wrapper over an MPFR value with an explicit precision; no global
/// MPFR state is touched, so values can be used from several threads.
class HighFloat {
public:
    explicit HighFloat(unsigned digits = working_digits());
    HighFloat(const HighFloat& other);
    HighFloat(HighFloat&& other) noexcept;
    HighFloat& operator=(const HighFloat& other);
    HighFloat& operator=(HighFloat&& other) noexcept;
    ~HighFloat();

    static HighFloat from_string(std::string_view decimal, unsigned digits = working_digits());
    static HighFloat from_double(double v, unsigned digits = working_digits());
    static HighFloat from_rational(const Rational& q, unsigned digits = working_digits());
    static HighFloat from_integer(long v, unsigned digits = working_digits());
    static HighFloat pi(unsigned digits = working_digits());
    static HighFloat euler(unsigned digits = working_digits());

    HighFloat sqrt() const;
    HighFloat abs() const;
    /// x - floor(x), in [0, 1).
    HighFloat fractional() const;

    double to_double() const;
    /// Scientific notation with `digits` significant digits.
    std::string to_string(unsigned digits) const;
    /// Positional notation with about `digits` significant digits.
    std::string to_plain_string(unsigned digits) const;
    bool is_zero() const;
    int sign() const;

    friend HighFloat operator+(const HighFloat& a, const HighFloat& b);
    friend HighFloat operator-(const HighFloat& a, const HighFloat& b);
    friend HighFloat operator*(const HighFloat& a, const HighFloat& b);
    friend HighFloat operator/(const HighFloat& a, const HighFloat& b);
    HighFloat operator-() const;

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

private:
    struct Uninit {};
    HighFloat(Uninit, mpfr_prec_t bits);
    static mpfr_prec_t bits_for(unsigned digits);

    mpfr_t value_;
};

/// 2*pi*x reduced to [0, 1) turns, i.e. x/(2*pi) - floor(x/(2*pi)).
double turns_of_radians(const HighFloat& radians);

}  // namespace bohr
