#include "bohr/high_precision.hpp"

#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace bohr {

unsigned working_digits() {
    static const unsigned digits = [] {
        unsigned d = 50;
        if (const char* env = std::getenv("BOHR_PRECISION")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0') {
                d = static_cast<unsigned>(std::clamp(v, 20L, 1000L));
            }
        }
        return d;
    }();
    return digits;
}

mpfr_prec_t HighFloat::bits_for(unsigned digits) {
    // log2(10) ~ 3.3219; a few guard bits on top.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

HighFloat::HighFloat(unsigned digits) {
    mpfr_init2(value_, bits_for(digits));
    mpfr_set_zero(value_, 1);
}

HighFloat::HighFloat(Uninit, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
}

HighFloat::HighFloat(const HighFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighFloat::HighFloat(HighFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

HighFloat& HighFloat::operator=(const HighFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

HighFloat& HighFloat::operator=(HighFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

HighFloat::~HighFloat() {
    mpfr_clear(value_);
}

HighFloat HighFloat::from_string(std::string_view decimal, unsigned digits) {
    HighFloat r(digits);
    std::string s(decimal);
    if (s.find('/') != std::string::npos) {
        return from_rational(parse_rational(s), digits);
    }
    (void)parse_rational(s);  // syntax check
    if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
        throw InputError("not a decimal number: '" + s + "'");
    }
    return r;
}

HighFloat HighFloat::from_double(double v, unsigned digits) {
    HighFloat r(digits);
    mpfr_set_d(r.value_, v, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::from_rational(const Rational& q, unsigned digits) {
    HighFloat r(digits);
    mpfr_set_q(r.value_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}

HighFloat HighFloat::from_integer(long v, unsigned digits) {
    HighFloat r(digits);
    mpfr_set_si(r.value_, v, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::pi(unsigned digits) {
    HighFloat r(digits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::euler(unsigned digits) {
    HighFloat r(digits);
    mpfr_set_ui(r.value_, 1, MPFR_RNDN);
    mpfr_exp(r.value_, r.value_, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::sqrt() const {
    HighFloat r(Uninit{}, precision());
    mpfr_sqrt(r.value_, value_, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::abs() const {
    HighFloat r(Uninit{}, precision());
    mpfr_abs(r.value_, value_, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::fractional() const {
    HighFloat floor_value(Uninit{}, precision());
    mpfr_floor(floor_value.value_, value_);
    HighFloat r(Uninit{}, precision());
    mpfr_sub(r.value_, value_, floor_value.value_, MPFR_RNDN);
    return r;
}

double HighFloat::to_double() const {
    return mpfr_get_d(value_, MPFR_RNDN);
}

std::string HighFloat::to_string(unsigned digits) const {
    std::vector<char> buffer(digits + 64);
    mpfr_snprintf(buffer.data(), buffer.size(), "%.*Re", static_cast<int>(digits - 1), value_);
    return std::string(buffer.data());
}

std::string HighFloat::to_plain_string(unsigned digits) const {
    long exponent = 0;
    if (!mpfr_zero_p(value_)) {
        exponent = mpfr_get_exp(value_);  // value = m * 2^exponent, 0.5 <= |m| < 1
    }
    long decimal_exponent = static_cast<long>(std::floor((exponent - 1) * 0.30102999566398120));
    long places = std::max(0L, static_cast<long>(digits) - 1 - decimal_exponent);
    std::vector<char> buffer(digits + static_cast<std::size_t>(places) + 64);
    mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rf", static_cast<int>(places), value_);
    std::string s(buffer.data());
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

bool HighFloat::is_zero() const {
    return mpfr_zero_p(value_) != 0;
}

int HighFloat::sign() const {
    return mpfr_sgn(value_);
}

namespace {
mpfr_prec_t max_prec(mpfr_srcptr a, mpfr_srcptr b) {
    return std::max(mpfr_get_prec(a), mpfr_get_prec(b));
}
}  // namespace

HighFloat operator+(const HighFloat& a, const HighFloat& b) {
    HighFloat r(HighFloat::Uninit{}, max_prec(a.value_, b.value_));
    mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

HighFloat operator-(const HighFloat& a, const HighFloat& b) {
    HighFloat r(HighFloat::Uninit{}, max_prec(a.value_, b.value_));
    mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

HighFloat operator*(const HighFloat& a, const HighFloat& b) {
    HighFloat r(HighFloat::Uninit{}, max_prec(a.value_, b.value_));
    mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

HighFloat operator/(const HighFloat& a, const HighFloat& b) {
    HighFloat r(HighFloat::Uninit{}, max_prec(a.value_, b.value_));
    mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

HighFloat HighFloat::operator-() const {
    HighFloat r(Uninit{}, precision());
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
}

double turns_of_radians(const HighFloat& radians) {
    HighFloat two_pi = HighFloat::pi() * HighFloat::from_integer(2);
    double t = (radians / two_pi).fractional().to_double();
    return t >= 1.0 ? 0.0 : t;
}

}  // namespace bohr
