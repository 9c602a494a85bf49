#include "bohr/real.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace bohr {

Real Real::rational(const Rational& q) {
    Real r;
    r.coefficient_ = q;
    r.coefficient_.canonicalize();
    r.pi_power_ = 0;
    r.approx_ = to_double(q);
    return r;
}

Real Real::pi_multiple(const Rational& q) {
    if (sgn(q) == 0) {
        return Real::rational(0);
    }
    Real r;
    r.coefficient_ = q;
    r.coefficient_.canonicalize();
    r.pi_power_ = 1;
    r.approx_ = (HighFloat::from_rational(q) * HighFloat::pi()).to_double();
    return r;
}

HighFloat Real::high() const {
    if (!exact_) {
        return HighFloat::from_double(approx_);
    }
    HighFloat v = HighFloat::from_rational(coefficient_);
    return pi_power_ == 1 ? v * HighFloat::pi() : v;
}

bool Real::is_zero() const {
    return exact_ ? sgn(coefficient_) == 0 : approx_ == 0.0;
}

Real Real::operator-() const {
    Real r = *this;
    r.coefficient_ = -coefficient_;
    r.approx_ = -approx_;
    return r;
}

Real Real::scaled(const Rational& k) const {
    if (!exact_) {
        return Real(approx_ * to_double(k));
    }
    return pi_power_ == 1 ? Real::pi_multiple(coefficient_ * k) : Real::rational(coefficient_ * k);
}

Real operator+(const Real& a, const Real& b) {
    if (a.exact_ && b.exact_) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.pi_power_ == b.pi_power_) {
            Rational sum = a.coefficient_ + b.coefficient_;
            return a.pi_power_ == 1 ? Real::pi_multiple(sum) : Real::rational(sum);
        }
        return Real((a.high() + b.high()).to_double());
    }
    return Real(a.approx_ + b.approx_);
}

bool operator==(const Real& a, const Real& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) {
        return a.coefficient_ == b.coefficient_ && (a.pi_power_ == b.pi_power_ || a.is_zero());
    }
    return a.approx_ == b.approx_;
}

std::string Real::to_string() const {
    if (!exact_) {
        return format_double(approx_);
    }
    if (pi_power_ == 0) {
        return format_rational(coefficient_);
    }
    if (coefficient_ == 1) return "pi";
    if (coefficient_ == -1) return "-pi";
    return format_rational(coefficient_) + "*pi";
}

std::string format_double(double v) {
    char buffer[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, v);
        if (std::strtod(buffer, nullptr) == v) break;
    }
    return buffer;
}

}  // namespace bohr
