#include "bohr/ap_algebra.hpp"

#include "bohr/errors.hpp"

#include <cmath>

namespace bohr {

void APFunction::accumulate(const Coords& coords, const Scalar& c) {
    auto [it, inserted] = terms_.try_emplace(coords, c);
    if (!inserted) {
        it->second += c;
    }
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

APFunction APFunction::character(const Frequency& lambda, const Scalar& coefficient) {
    APFunction f(lambda.module());
    f.accumulate(lambda.coords(), coefficient);
    return f;
}

APFunction APFunction::constant(const Module& module, const Scalar& value) {
    return character(Frequency::zero(module), value);
}

APFunction APFunction::from_terms(const Module& module, const std::vector<std::pair<Coords, Scalar>>& terms) {
    APFunction f(module);
    for (const auto& [coords, c] : terms) {
        (void)Frequency(module, coords);  // rank check
        f.accumulate(coords, c);
    }
    return f;
}

bool APFunction::is_exact() const {
    for (const auto& [coords, c] : terms_) {
        if (!c.is_exact()) return false;
    }
    return true;
}

Scalar APFunction::coefficient(const Frequency& lambda) const {
    require_same_module(module_, lambda.module(), "coefficient lookup");
    auto it = terms_.find(lambda.coords());
    return it == terms_.end() ? Scalar() : it->second;
}

std::vector<Frequency> APFunction::frequencies() const {
    std::vector<Frequency> out;
    out.reserve(terms_.size());
    for (const auto& [coords, c] : terms_) {
        out.emplace_back(module_, coords);
    }
    return out;
}

double APFunction::coefficient_l1() const {
    double s = 0.0;
    for (const auto& [coords, c] : terms_) s += c.abs();
    return s;
}

APFunction operator+(const APFunction& f, const APFunction& g) {
    require_same_module(f.module_, g.module_, "ap_add");
    APFunction h = f;
    for (const auto& [coords, c] : g.terms_) h.accumulate(coords, c);
    return h;
}

APFunction operator-(const APFunction& f, const APFunction& g) {
    return f + Scalar(-1) * g;
}

APFunction operator*(const APFunction& f, const APFunction& g) {
    require_same_module(f.module_, g.module_, "ap_mul");
    APFunction h(f.module_);
    for (const auto& [a, c] : f.terms_) {
        for (const auto& [b, d] : g.terms_) {
            Coords sum = a;
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
            h.accumulate(sum, c * d);
        }
    }
    return h;
}

APFunction operator*(const Scalar& s, const APFunction& f) {
    APFunction h(f.module_);
    for (const auto& [coords, c] : f.terms_) h.accumulate(coords, s * c);
    return h;
}

APFunction star(const APFunction& f) {
    APFunction h(f.module_);
    for (const auto& [coords, c] : f.terms_) {
        Coords neg = coords;
        for (auto& v : neg) v = -v;
        h.accumulate(neg, c.conj());
    }
    return h;
}

Scalar evaluate(const APFunction& f, const Real& t) {
    Scalar sum;
    for (const auto& [coords, c] : f.terms()) {
        sum += c * phase(Frequency(f.module(), coords), t);
    }
    return sum;
}

std::complex<double> evaluate_fast(const APFunction& f, double t) {
    std::complex<double> sum = 0.0;
    for (const auto& [coords, c] : f.terms()) {
        double lambda = freq_value_fast(Frequency(f.module(), coords));
        sum += c.value() * std::polar(1.0, lambda * t);
    }
    return sum;
}

Scalar bohr_mean(const APFunction& f) {
    return f.coefficient(Frequency::zero(f.module()));
}

std::complex<double> bohr_mean_numeric(const APFunction& f, double T) {
    if (!(T > 0.0)) {
        throw InputError("bohr_mean_numeric: T must be positive");
    }
    std::complex<double> sum = 0.0;
    for (const auto& [coords, c] : f.terms()) {
        Frequency lambda(f.module(), coords);
        if (lambda.is_zero()) {
            sum += c.value();
            continue;
        }
        double x = freq_value(lambda) * T;
        sum += c.value() * (std::sin(x) / x);
    }
    return sum;
}

double bohr_mean_error_bound(const APFunction& f, double T) {
    double s = 0.0;
    for (const auto& [coords, c] : f.terms()) {
        Frequency lambda(f.module(), coords);
        if (!lambda.is_zero()) {
            s += c.abs() / std::fabs(freq_value(lambda));
        }
    }
    return s / T;
}

Scalar inner(const APFunction& f, const APFunction& g) {
    require_same_module(f.module(), g.module(), "ap_inner");
    Scalar sum;
    for (const auto& [coords, c] : f.terms()) {
        auto it = g.terms().find(coords);
        if (it != g.terms().end()) {
            sum += c * it->second.conj();
        }
    }
    return sum;
}

APFunction translate_pullback(const APFunction& f, const Real& t) {
    APFunction h(f.module_);
    for (const auto& [coords, c] : f.terms_) {
        h.accumulate(coords, c * phase(Frequency(f.module_, coords), t));
    }
    return h;
}

double continuity_modulus(const APFunction& f, const Real& t, const Real& t_prime) {
    // |e^{ia} - e^{ib}| = 2 |sin((a - b)/2)|
    const double delta = (t - t_prime).value();
    double s = 0.0;
    for (const auto& [coords, c] : f.terms()) {
        double lambda = freq_value(Frequency(f.module(), coords));
        s += c.abs() * 2.0 * std::fabs(std::sin(lambda * delta / 2.0));
    }
    return s;
}

bool approx_equal(const APFunction& f, const APFunction& g, double tol) {
    if (!(f.module() == g.module())) return false;
    APFunction d = f - g;
    for (const auto& [coords, c] : d.terms()) {
        if (c.abs() > tol) return false;
    }
    return true;
}

}  // namespace bohr
