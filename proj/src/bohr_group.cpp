#include "bohr/bohr_group.hpp"

#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bohr {

namespace {

double reduce_unit(double v) {
    double r = v - std::floor(v);
    return r >= 1.0 ? 0.0 : r;
}

// Wrap radians to (-pi, pi].
double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(a, two_pi);
    return r <= -std::numbers::pi ? r + two_pi : r;
}

}  // namespace

Turn Turn::exact(const Rational& turns) {
    Turn t;
    t.exact_ = true;
    t.exact_value_ = fractional_part(turns);
    t.value_ = to_double(t.exact_value_);
    return t;
}

Turn Turn::approx(double turns) {
    if (!std::isfinite(turns)) {
        throw InputError("angle must be finite");
    }
    Turn t;
    t.exact_ = false;
    t.value_ = reduce_unit(turns);
    return t;
}

double Turn::radians() const {
    return 2.0 * std::numbers::pi * value_;
}

Turn Turn::operator-() const {
    return exact_ ? Turn::exact(-exact_value_) : Turn::approx(-value_);
}

Turn Turn::scaled(std::int64_t n) const {
    return exact_ ? Turn::exact(exact_value_ * Rational(static_cast<long>(n)))
                  : Turn::approx(value_ * static_cast<double>(n));
}

Turn operator+(const Turn& a, const Turn& b) {
    if (a.exact_ && b.exact_) return Turn::exact(a.exact_value_ + b.exact_value_);
    return Turn::approx(a.value_ + b.value_);
}

bool operator==(const Turn& a, const Turn& b) {
    if (a.exact_ != b.exact_) return false;
    return a.exact_ ? a.exact_value_ == b.exact_value_ : a.value_ == b.value_;
}

double circular_distance(const Turn& a, const Turn& b) {
    if (a.is_exact() && b.is_exact()) {
        double d = to_double(fractional_part(a.exact_value() - b.exact_value()));
        return std::min(d, 1.0 - d);
    }
    double d = reduce_unit(a.value() - b.value());
    return std::min(d, 1.0 - d);
}

BohrPoint::BohrPoint(Module module) : module_(std::move(module)), angles_(module_.rank()) {}

BohrPoint::BohrPoint(Module module, std::vector<Turn> angles)
    : module_(std::move(module)), angles_(std::move(angles)) {
    if (angles_.size() != module_.rank()) {
        throw InputError("BohrPoint needs " + std::to_string(module_.rank()) + " angles, got " +
                         std::to_string(angles_.size()));
    }
}

Scalar BohrPoint::character(const Frequency& lambda) const {
    require_same_module(module_, lambda.module(), "point evaluation");
    Turn total;
    for (std::size_t k = 0; k < angles_.size(); ++k) {
        if (lambda.coords()[k] != 0) {
            total = total + angles_[k].scaled(lambda.coords()[k]);
        }
    }
    return total.is_exact() ? unit_from_turns(total.exact_value()) : unit_from_turns(total.value());
}

BohrPoint point_identity(const Module& module) {
    return BohrPoint(module);
}

BohrPoint point_mul(const BohrPoint& a, const BohrPoint& b) {
    require_same_module(a.module(), b.module(), "point_mul");
    std::vector<Turn> angles(a.angles().size());
    for (std::size_t k = 0; k < angles.size(); ++k) angles[k] = a.angles()[k] + b.angles()[k];
    return BohrPoint(a.module(), std::move(angles));
}

BohrPoint point_inv(const BohrPoint& a) {
    std::vector<Turn> angles(a.angles().size());
    for (std::size_t k = 0; k < angles.size(); ++k) angles[k] = -a.angles()[k];
    return BohrPoint(a.module(), std::move(angles));
}

bool approx_equal(const BohrPoint& a, const BohrPoint& b, double tol) {
    if (!(a.module() == b.module())) return false;
    for (std::size_t k = 0; k < a.angles().size(); ++k) {
        if (circular_distance(a.angles()[k], b.angles()[k]) > tol) return false;
    }
    return true;
}

BohrPoint iota(const Real& x, const Module& module) {
    std::vector<Turn> angles;
    angles.reserve(module.rank());
    for (std::size_t k = 0; k < module.rank(); ++k) {
        Frequency g = Frequency::unit(module, k);
        if (auto r = exact_pi_ratio(g, x)) {
            angles.push_back(Turn::exact(Rational(*r / 2)));
        } else {
            angles.push_back(Turn::approx(turns_of_radians(module.generator_high(k) * x.high())));
        }
    }
    return BohrPoint(module, std::move(angles));
}

Scalar point_eval(const BohrPoint& psi, const APFunction& f) {
    require_same_module(psi.module(), f.module(), "point_eval");
    Scalar sum;
    for (const auto& [coords, c] : f.terms()) {
        sum += c * psi.character(Frequency(f.module(), coords));
    }
    return sum;
}

double approximation_error(const BohrPoint& target, double t) {
    double worst = 0.0;
    for (std::size_t k = 0; k < target.angles().size(); ++k) {
        double diff = target.module().generator_value(k) * t - target.angles()[k].radians();
        worst = std::max(worst, 2.0 * std::fabs(std::sin(diff / 2.0)));
    }
    return worst;
}

KroneckerResult kronecker_approx(const BohrPoint& target, double eps, double t_max,
                                 const KroneckerOptions& options) {
    if (!(eps > 0.0)) {
        throw InputError("kronecker_approx: eps must be positive");
    }
    if (!(t_max >= 0.0)) {
        throw InputError("kronecker_approx: t_max must be nonnegative");
    }
    KroneckerResult result;
    const Module& module = target.module();
    const std::size_t d = module.rank();
    if (d == 0 || eps > 2.0) {
        result.status = KroneckerResult::Status::Found;
        result.t = 0.0;
        result.error = approximation_error(target, 0.0);
        return result;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    // Angular tolerance equivalent to chord eps, kept a hair inside.
    const double delta = 2.0 * std::asin(eps / 2.0) * (1.0 - 1e-9);
    std::vector<double> g(d), theta(d);
    for (std::size_t k = 0; k < d; ++k) {
        g[k] = module.generator_value(k);
        theta[k] = target.angles()[k].radians();
    }

    auto try_candidate = [&](double t0) -> bool {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < d; ++k) {
            double e = wrap_angle(g[k] * t0 - theta[k]);
            double a = (-delta - e) / g[k];
            double b = (delta - e) / g[k];
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
            if (lo >= hi) return false;
        }
        double t = t0 + 0.5 * (lo + hi);
        if (std::fabs(t) > t_max) return false;
        double err = approximation_error(target, t);
        if (err < eps) {
            result.status = KroneckerResult::Status::Found;
            result.t = t;
            result.error = err;
            return true;
        }
        return false;
    };

    const double step = two_pi / std::fabs(g[0]);
    const double base = theta[0] / g[0];
    for (long k = 0;; ++k) {
        bool in_range = false;
        for (int sign : {1, -1}) {
            if (k == 0 && sign == -1) continue;
            double t0 = base + sign * static_cast<double>(k) * step;
            if (std::fabs(t0) > t_max + step) continue;
            in_range = true;
            if (result.candidates_examined >= options.max_candidates) {
                result.budget_exhausted = true;
                return result;
            }
            ++result.candidates_examined;
            if (try_candidate(t0)) return result;
        }
        if (!in_range) break;
    }
    return result;
}

}  // namespace bohr
