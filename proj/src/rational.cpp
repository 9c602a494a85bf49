#include "bohr/rational.hpp"

#include "bohr/errors.hpp"

#include <cctype>
#include <cmath>

namespace bohr {
namespace {

Rational pow10(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r(p);
    if (exponent < 0) {
        r = 1 / r;
    }
    return r;
}

// Decimal with optional fraction and exponent, no sign.
Rational parse_unsigned_decimal(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    mpz_class digits = 0;
    long scale = 0;
    bool any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits = digits * 10 + (s[i] - '0');
        ++i;
        any = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = digits * 10 + (s[i] - '0');
            --scale;
            ++i;
            any = true;
        }
    }
    if (!any) {
        throw InputError("not a number: '" + std::string(whole) + "'");
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            negative = s[i] == '-';
            ++i;
        }
        long e = 0;
        bool exp_digits = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            e = e * 10 + (s[i] - '0');
            if (e > 100000) {
                throw InputError("exponent out of range: '" + std::string(whole) + "'");
            }
            ++i;
            exp_digits = true;
        }
        if (!exp_digits) {
            throw InputError("malformed exponent: '" + std::string(whole) + "'");
        }
        scale += negative ? -e : e;
    }
    if (i != s.size()) {
        throw InputError("not a number: '" + std::string(whole) + "'");
    }
    Rational r(digits);
    r *= pow10(scale);
    r.canonicalize();
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw InputError("empty number");
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_unsigned_decimal(s.substr(0, slash), text);
        Rational den = parse_unsigned_decimal(s.substr(slash + 1), text);
        if (sgn(den) == 0) {
            throw InputError("zero denominator: '" + std::string(text) + "'");
        }
        value = num / den;
    } else {
        value = parse_unsigned_decimal(s, text);
    }
    if (negative) value = -value;
    value.canonicalize();
    return value;
}

std::string format_rational(const Rational& q) {
    // Terminating iff the reduced denominator is 2^a 5^b.
    mpz_class den = q.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    unsigned long places = std::max(twos, fives);
    if (places == 0) {
        return q.get_num().get_str();
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = q.get_num() * (scale / q.get_den());
    bool negative = sgn(scaled) < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (digits.size() <= places) {
        digits.insert(0, places - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - places, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return negative ? "-" + digits : digits;
}

double to_double(const Rational& q) {
    return q.get_d();
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) {
        throw InputError("non-finite value");
    }
    Rational r(v);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& q) {
    return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0;
}

Rational fractional_part(const Rational& q) {
    mpz_class floor_value;
    mpz_fdiv_q(floor_value.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(floor_value);
    r.canonicalize();
    return r;
}

}  // namespace bohr
