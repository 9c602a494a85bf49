#pragma once

#include "bohr/bohr_group.hpp"
#include "bohr/frequency_module.hpp"
#include "bohr/real.hpp"
#include "bohr/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bohr {

/// Tolerances used when validating moment data.
inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

struct MeasureDiagnostics {
    bool symmetric_support = false;
    bool contains_zero = false;
    bool normalized = false;
    bool hermitian = false;
    bool psd = false;
    /// Smallest eigenvalue over all maximal difference-closed subsets.
    double min_eigenvalue = 0.0;
    /// PSD was decided in exact arithmetic (all moments rational).
    bool exact_psd_check = false;
    std::string problem;

    bool ok() const { return symmetric_support && contains_zero && normalized && hermitian && psd; }
};

/// A normalized measure on the Bohr compactification, seen through its
/// Fourier-Stieltjes coefficients mu^(lambda) = integral chi_lambda dmu on a
/// finite symmetric support F containing 0.
class FSMeasure {
public:
    /// Throws InputError unless the data is normalized, Hermitian and
    /// positive-definite.
    static FSMeasure create(const Module& module, std::map<Coords, Scalar> moments);
    static std::optional<FSMeasure> try_create(const Module& module, std::map<Coords, Scalar> moments);
    static MeasureDiagnostics diagnose(const Module& module, const std::map<Coords, Scalar>& moments);

    const Module& module() const { return module_; }
    const std::map<Coords, Scalar>& moments() const { return moments_; }
    std::vector<Frequency> support() const;
    bool contains(const Frequency& lambda) const;
    std::optional<Scalar> moment(const Frequency& lambda) const;
    bool is_exact() const;

    /// Restriction to a symmetric sub-support containing 0.
    FSMeasure restricted(const std::vector<Frequency>& subset) const;

private:
    FSMeasure(Module module, std::map<Coords, Scalar> moments)
        : module_(std::move(module)), moments_(std::move(moments)) {}

    Module module_;
    std::map<Coords, Scalar> moments_;

    friend FSMeasure pushforward(const FSMeasure& mu, const Real& t);
    friend FSMeasure invariant_part(const FSMeasure& mu, const std::vector<Real>& shifts);
    friend FSMeasure unchecked_measure(const Module& module, std::map<Coords, Scalar> moments);
};

/// Skips validation; for callers that construct moments of an actual
/// measure (mixtures of point masses, densities).
FSMeasure unchecked_measure(const Module& module, std::map<Coords, Scalar> moments);

/// All coordinate vectors in [-radius, radius]^d.
std::vector<Frequency> symmetric_box(const Module& module, int radius);

/// Maximal subsets S of F such that every difference of two members of S
/// lies in F (the index sets of full Gram matrices).
std::vector<std::vector<Frequency>> difference_closed_subsets(const std::vector<Frequency>& support);

FSMeasure haar_measure(const Module& module, const std::vector<Frequency>& support);

/// Dirac measure at psi: mu^(lambda) = psi(chi_lambda).
FSMeasure point_mass(const BohrPoint& psi, const std::vector<Frequency>& support);

/// Image under psi -> iota(t) + psi: mu^(lambda) -> e^{i lambda t} mu^(lambda).
FSMeasure pushforward(const FSMeasure& mu, const Real& t);

struct InvarianceReport {
    bool invariant = true;
    double worst_violation = 0.0;
    std::optional<Frequency> violator;
    std::optional<Real> violating_shift;
};

/// max over lambda in F, t in shifts of |mu^(lambda)| |e^{i lambda t} - 1|.
InvarianceReport is_invariant(const FSMeasure& mu, const std::vector<Real>& shifts, double tol);

struct UniquenessVerdict {
    enum class Kind { ForcedHaar, Undetermined };
    Kind kind = Kind::Undetermined;
    /// Nonzero frequencies that no shift kills (lambda t in 2 pi Z for all t).
    std::vector<Frequency> surviving;
    /// For each killed frequency, the first shift with lambda t not in 2 pi Z.
    std::vector<std::pair<Frequency, Real>> witnesses;
    /// How many of the kill decisions were made by exact reasoning.
    std::size_t exact_decisions = 0;

    bool forced_haar() const { return kind == Kind::ForcedHaar; }
};

/// Whether invariance under every shift in `shifts` forces all nonzero
/// moments on F to vanish. Quantified over all measures, not sampled.
UniquenessVerdict uniqueness_verdict(const Module& module, const std::vector<Frequency>& support,
                                     const std::vector<Real>& shifts);

/// Average over the closed subgroup generated by the shifts: moments of
/// frequencies killed by some shift are set to 0.
FSMeasure invariant_part(const FSMeasure& mu, const std::vector<Real>& shifts);

/// Nonnegative trigonometric-polynomial density on the torus T^d (d <= 2)
/// with respect to normalized Haar measure: rho(theta) = sum a_n e^{i n.theta}.
class TorusDensity {
public:
    static constexpr std::size_t kMaxRank = 2;

    /// Throws unless a_0 = 1, the coefficients are Hermitian and the density
    /// is >= -1e-10 on a 10^4-point grid.
    static TorusDensity create(const Module& module, std::map<Coords, Scalar> coefficients);
    static TorusDensity uniform(const Module& module);
    /// |sum_n b_n e^{i n.theta}|^2 / sum |b_n|^2.
    static TorusDensity from_amplitude(const Module& module, const std::map<Coords, std::complex<double>>& b);

    const Module& module() const { return module_; }
    const std::map<Coords, Scalar>& coefficients() const { return coefficients_; }
    double operator()(const std::vector<double>& theta) const;
    double min_on_grid() const;

private:
    TorusDensity(Module module, std::map<Coords, Scalar> coefficients)
        : module_(std::move(module)), coefficients_(std::move(coefficients)) {}

    Module module_;
    std::map<Coords, Scalar> coefficients_;
};

/// mu^(lambda) = a_{-lambda}, restricted to F.
FSMeasure moments_from_density(const TorusDensity& rho, const std::vector<Frequency>& support);

/// Product of closed angle intervals [lo_k, hi_k] in radians, hi_k - lo_k in [0, 2 pi].
struct AngleBox {
    std::vector<std::pair<double, double>> intervals;
};

/// integral over the box of rho, normalized so the whole torus has mass 1.
double density_set_measure(const TorusDensity& rho, const AngleBox& box);

/// (mu(B), mu(B - t g)) where B - t g shifts angle k by -t g_k; the second
/// entry is the pushforward measure of B.
std::pair<double, double> set_invariance_check(const TorusDensity& rho, const AngleBox& box, const Real& t);

}  // namespace bohr
