#pragma once

#include "bohr/frequency_module.hpp"
#include "bohr/real.hpp"
#include "bohr/scalar.hpp"

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace bohr {

/// Trigonometric polynomial sum_lambda c_lambda e^{i lambda t} over a
/// frequency module. Canonical: no stored coefficient is zero.
class APFunction {
public:
    explicit APFunction(Module module = Module()) : module_(std::move(module)) {}

    static APFunction character(const Frequency& lambda, const Scalar& coefficient = Scalar(1));
    static APFunction constant(const Module& module, const Scalar& value);
    /// Repeated coordinates accumulate.
    static APFunction from_terms(const Module& module, const std::vector<std::pair<Coords, Scalar>>& terms);

    const Module& module() const { return module_; }
    const std::map<Coords, Scalar>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const;

    Scalar coefficient(const Frequency& lambda) const;
    std::vector<Frequency> frequencies() const;
    /// sum |c_lambda|, an upper bound for the sup norm.
    double coefficient_l1() const;

    friend bool operator==(const APFunction& a, const APFunction& b) {
        return a.module_ == b.module_ && a.terms_ == b.terms_;
    }

private:
    void accumulate(const Coords& coords, const Scalar& c);

    Module module_;
    std::map<Coords, Scalar> terms_;

    friend APFunction operator+(const APFunction& f, const APFunction& g);
    friend APFunction operator*(const APFunction& f, const APFunction& g);
    friend APFunction operator*(const Scalar& s, const APFunction& f);
    friend APFunction star(const APFunction& f);
    friend APFunction translate_pullback(const APFunction& f, const Real& t);
};

APFunction operator+(const APFunction& f, const APFunction& g);
APFunction operator-(const APFunction& f, const APFunction& g);
APFunction operator*(const APFunction& f, const APFunction& g);
APFunction operator*(const Scalar& s, const APFunction& f);

/// Involution c_lambda -> conj(c_{-lambda}), i.e. the pointwise conjugate.
APFunction star(const APFunction& f);

/// f(t), exact where every phase is.
Scalar evaluate(const APFunction& f, const Real& t);
/// f(t) in double precision.
std::complex<double> evaluate_fast(const APFunction& f, double t);

/// Bohr mean: the zero-frequency coefficient.
Scalar bohr_mean(const APFunction& f);

/// (1/2T) integral_{-T}^{T} f(t) dt in closed form (sinc factors).
std::complex<double> bohr_mean_numeric(const APFunction& f, double T);
/// (sum_{lambda != 0} |c_lambda| / |lambda|) / T.
double bohr_mean_error_bound(const APFunction& f, double T);

/// <f, g> = mean(f * star(g)) = sum_lambda c_lambda conj(d_lambda).
Scalar inner(const APFunction& f, const APFunction& g);

/// (theta_t^* f)(x) = f(x + t): c_lambda -> e^{i lambda t} c_lambda.
APFunction translate_pullback(const APFunction& f, const Real& t);

/// sum |c_lambda| |e^{i lambda t} - e^{i lambda t'}|, an upper bound for
/// the sup distance between the two translates (exact for one character).
double continuity_modulus(const APFunction& f, const Real& t, const Real& t_prime);

bool approx_equal(const APFunction& f, const APFunction& g, double tol);

}  // namespace bohr
