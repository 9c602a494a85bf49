#pragma once

#include "bohr/ap_algebra.hpp"
#include "bohr/bohr_group.hpp"
#include "bohr/kinematical_hilbert.hpp"
#include "bohr/measure_lab.hpp"
#include "bohr/real.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace bohr {

/// Compactly supported piecewise-linear function on R, zero outside the
/// hull of its breakpoints. Translation only moves an exact offset, so
/// theta_t^* f evaluated at x reads the base function at x + offset.
class C0Function {
public:
    C0Function() = default;
    /// Breakpoints strictly increasing, first and last value 0.
    C0Function(std::vector<double> breakpoints, std::vector<std::complex<double>> values);
    /// Triangle on [a, c] with peak 1 at b.
    static C0Function hat(double a, double b, double c);

    /// Breakpoints of the base function; the effective ones are these minus offset().
    const std::vector<double>& base_breakpoints() const { return breakpoints_; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    const Real& offset() const { return offset_; }
    std::vector<double> breakpoints() const;
    bool is_zero() const { return breakpoints_.empty(); }

    std::complex<double> operator()(const Real& x) const;
    /// theta_t^* f = f(. + t).
    C0Function translated(const Real& t) const;
    C0Function scaled(std::complex<double> s) const;
    /// Largest |slope| over all segments.
    double max_slope() const;

private:
    std::complex<double> base_at(double y) const;

    std::vector<double> breakpoints_;
    std::vector<std::complex<double>> values_;
    Real offset_;
};

/// Pointwise sum, piecewise linear on the merged breakpoints.
C0Function operator+(const C0Function& f, const C0Function& g);

/// sup_x |f(x) - g(x)|, exact up to rounding: the difference is piecewise
/// linear between the merged breakpoints, so the max sits on one of them.
double sup_distance(const C0Function& f, const C0Function& g);

/// f0 (+) f_AP, an element of C0(R) (+) CAP.
struct ExtendedFunction {
    C0Function c0;
    APFunction ap;
};

/// theta_t^* on both summands.
ExtendedFunction pullback(const ExtendedFunction& f, const Real& t);

struct RealPoint {
    Real x;
};

struct BohrPart {
    BohrPoint psi;
};

using QPoint = std::variant<RealPoint, BohrPart>;

bool is_real_point(const QPoint& p);

/// The point as a functional on C0(R) (+) CAP: f0(x) + f_AP(x) at real x,
/// psi(f_AP) on the Bohr part (which annihilates C0).
std::complex<double> xi_eval(const QPoint& p, const ExtendedFunction& f);

/// Extended action: t + x on R, iota(t) + psi on the Bohr part.
QPoint theta_tilde(const Real& t, const QPoint& p);

struct AgreementReport {
    bool agrees = true;
    double residual = 0.0;
    std::complex<double> acted;     // xi(Theta~_t p)(f)
    std::complex<double> pulled;    // xi(p)(theta_t^* f)
};

AgreementReport extension_agreement_check(const Real& t, const QPoint& p, const ExtendedFunction& f,
                                          double tol);

struct OpenReal {
    std::vector<std::pair<double, double>> intervals;
};

struct CompactComplement {
    std::vector<std::pair<double, double>> intervals;
};

struct Disk {
    std::complex<double> center;
    double radius = 0.0;
};

struct FunctionPreimage {
    ExtendedFunction f;
    std::vector<Disk> disks;
};

using BasisSet = std::variant<OpenReal, CompactComplement, FunctionPreimage>;

bool topology_membership(const QPoint& p, const BasisSet& b);

/// Finite measure on R: a nonnegative piecewise-linear density vanishing at
/// both ends of its breakpoint list, plus point masses.
class RealLineMeasure {
public:
    RealLineMeasure() = default;
    /// Throws InputError on a nonzero end value (the density would carry
    /// infinite mass), negative values or masses, or unsorted breakpoints.
    RealLineMeasure(std::vector<double> breakpoints, std::vector<double> values,
                    std::vector<std::pair<double, double>> atoms = {});

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

    double density(double x) const;
    double total_mass() const;
    /// mu([a, b]).
    double closed_mass(double a, double b) const;
    /// mu([a, b)).
    double half_open_mass(double a, double b) const;
    bool is_zero() const { return total_mass() == 0.0; }
    /// Leftmost point carrying mass, if any.
    std::optional<double> support_start() const;

private:
    double cumulative(double x) const;

    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<double> prefix_;
    std::vector<std::pair<double, double>> atoms_;
};

/// mu_R (+) mu_B with mu_B weighted so the total mass is 1.
class QMeasure {
public:
    /// Throws when the R-part mass exceeds 1.
    QMeasure(RealLineMeasure r_part, FSMeasure bohr_part);

    const RealLineMeasure& r_part() const { return r_part_; }
    const FSMeasure& bohr_part() const { return bohr_part_; }
    double r_mass() const { return r_part_.total_mass(); }
    double bohr_weight() const { return 1.0 - r_mass(); }

private:
    RealLineMeasure r_part_;
    FSMeasure bohr_part_;
};

/// Masses are compared at this absolute tolerance.
inline constexpr double kMassTol = 1e-12;

struct RVerdict {
    bool invariant = true;
    double r_mass = 0.0;
    /// Closed interval K with |mu(K) - mu(K + t)| > kMassTol.
    std::optional<std::pair<double, double>> witness;
    double witness_mass = 0.0;
    double shifted_mass = 0.0;
    std::size_t intervals_checked = 0;
};

/// Compares mu(K) with mu(K + t) over every closed interval whose ends lie
/// in the breakpoints, atoms and their shifts by +-t; piecewise-linear
/// masses are pinned down by that family. The witness is the interval of
/// largest difference, preferring mass leaving K, then the shortest, then
/// the leftmost. Throws on t = 0.
RVerdict r_part_invariance_verdict(const RealLineMeasure& mu, const Real& t);

/// The divergence argument: if mu were t-invariant then the translates of
/// the window [a, a + t) would all carry the same mass, so
/// mu([a, a + k t)) = k mu([a, a + t)) grows without bound.
struct DivergenceChain {
    /// The only finite invariant mass.
    double max_invariant_mass = 0.0;
    double anchor = 0.0;
    double window_mass = 0.0;
    /// chain[k-1] = mass of [anchor, anchor + k t) under the t-periodization
    /// of mu restricted to the window, evaluated interval by interval.
    std::vector<double> chain;
    /// First k with chain[k-1] above the actual total mass, 0 if none.
    std::size_t exceeds_total_at = 0;
};

/// Anchors the window at the leftmost point carrying mass (0 for the zero measure).
DivergenceChain max_invariant_r_mass(const RealLineMeasure& mu, const Real& t, std::size_t steps);

struct QVerdict {
    enum class Kind { ForcedStandard, Undetermined };
    Kind kind = Kind::Undetermined;
    /// mu itself is invariant under every shift.
    bool measure_invariant = true;
    std::vector<std::pair<Real, RVerdict>> r_reports;
    UniquenessVerdict bohr_uniqueness;
    InvarianceReport bohr_invariance;
    /// Gram matrix of the Bohr part over its largest difference-closed basis.
    GramOperator gram;

    bool forced_standard() const { return kind == Kind::ForcedStandard; }
};

/// ForcedStandard when invariance under the shifts forces mu_R = 0 and the
/// Bohr part to be Haar. Zero shifts are ignored for the R part; at least one
/// nonzero shift is required.
QVerdict q_invariance_verdict(const QMeasure& mu, const std::vector<Real>& shifts);

}  // namespace bohr
