#include "bohr/fleischhack_space.hpp"

#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bohr {

C0Function::C0Function(std::vector<double> breakpoints, std::vector<std::complex<double>> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size()) {
        throw InputError("C0 function: breakpoints and values differ in length");
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k]) || !std::isfinite(values_[k].real()) ||
            !std::isfinite(values_[k].imag())) {
            throw InputError("C0 function: non-finite breakpoint or value");
        }
        if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
            throw InputError("C0 function: breakpoints must be strictly increasing");
        }
    }
    if (!values_.empty() && (values_.front() != 0.0 || values_.back() != 0.0)) {
        throw InputError("C0 function: first and last values must be 0");
    }
    if (breakpoints_.size() < 2) {
        breakpoints_.clear();
        values_.clear();
    }
}

C0Function C0Function::hat(double a, double b, double c) {
    if (!(a < b && b < c)) throw InputError("hat(a,b,c) needs a < b < c");
    return C0Function({a, b, c}, {0.0, 1.0, 0.0});
}

std::vector<double> C0Function::breakpoints() const {
    std::vector<double> out = breakpoints_;
    for (auto& b : out) b -= offset_.value();
    return out;
}

std::complex<double> C0Function::base_at(double y) const {
    if (breakpoints_.empty() || y <= breakpoints_.front() || y >= breakpoints_.back()) return 0.0;
    const auto hi = static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y) -
                                             breakpoints_.begin());
    const std::size_t lo = hi - 1;
    const double w = (y - breakpoints_[lo]) / (breakpoints_[hi] - breakpoints_[lo]);
    return values_[lo] + (values_[hi] - values_[lo]) * w;
}

std::complex<double> C0Function::operator()(const Real& x) const { return base_at((x + offset_).value()); }

C0Function C0Function::translated(const Real& t) const {
    C0Function out = *this;
    out.offset_ = offset_ + t;
    return out;
}

C0Function C0Function::scaled(std::complex<double> s) const {
    C0Function out = *this;
    for (auto& v : out.values_) v *= s;
    return out;
}

double C0Function::max_slope() const {
    double slope = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
        slope = std::max(slope, std::abs(values_[k + 1] - values_[k]) / (breakpoints_[k + 1] - breakpoints_[k]));
    }
    return slope;
}

C0Function operator+(const C0Function& f, const C0Function& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    std::vector<double> points = f.breakpoints();
    const std::vector<double> more = g.breakpoints();
    points.insert(points.end(), more.begin(), more.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<std::complex<double>> values;
    for (double y : points) values.push_back(f(Real(y)) + g(Real(y)));
    values.front() = 0.0;
    values.back() = 0.0;
    return C0Function(points, values);
}

double sup_distance(const C0Function& f, const C0Function& g) {
    std::vector<double> points = f.breakpoints();
    const std::vector<double> more = g.breakpoints();
    points.insert(points.end(), more.begin(), more.end());
    double best = 0.0;
    for (double y : points) best = std::max(best, std::abs(f(Real(y)) - g(Real(y))));
    return best;
}

ExtendedFunction pullback(const ExtendedFunction& f, const Real& t) {
    return {f.c0.translated(t), f.ap.is_zero() ? f.ap : translate_pullback(f.ap, t)};
}

bool is_real_point(const QPoint& p) { return std::holds_alternative<RealPoint>(p); }

std::complex<double> xi_eval(const QPoint& p, const ExtendedFunction& f) {
    if (const auto* r = std::get_if<RealPoint>(&p)) {
        return f.c0(r->x) + evaluate(f.ap, r->x).value();
    }
    const BohrPoint& psi = std::get<BohrPart>(p).psi;
    if (f.ap.is_zero()) return 0.0;
    require_same_module(psi.module(), f.ap.module(), "xi_eval");
    return point_eval(psi, f.ap).value();
}

QPoint theta_tilde(const Real& t, const QPoint& p) {
    if (const auto* r = std::get_if<RealPoint>(&p)) return RealPoint{t + r->x};
    const BohrPoint& psi = std::get<BohrPart>(p).psi;
    return BohrPart{point_mul(iota(t, psi.module()), psi)};
}

AgreementReport extension_agreement_check(const Real& t, const QPoint& p, const ExtendedFunction& f,
                                          double tol) {
    AgreementReport report;
    report.acted = xi_eval(theta_tilde(t, p), f);
    report.pulled = xi_eval(p, pullback(f, t));
    report.residual = std::abs(report.acted - report.pulled);
    report.agrees = report.residual <= tol;
    return report;
}

bool topology_membership(const QPoint& p, const BasisSet& b) {
    const auto* real = std::get_if<RealPoint>(&p);
    if (const auto* open = std::get_if<OpenReal>(&b)) {
        if (!real) return false;
        const double x = real->x.value();
        return std::any_of(open->intervals.begin(), open->intervals.end(),
                           [x](const auto& iv) { return iv.first < x && x < iv.second; });
    }
    if (const auto* complement = std::get_if<CompactComplement>(&b)) {
        if (!real) return true;
        const double x = real->x.value();
        return std::none_of(complement->intervals.begin(), complement->intervals.end(),
                            [x](const auto& iv) { return iv.first <= x && x <= iv.second; });
    }
    const auto& preimage = std::get<FunctionPreimage>(b);
    const std::complex<double> z = xi_eval(p, preimage.f);
    return std::any_of(preimage.disks.begin(), preimage.disks.end(),
                       [z](const Disk& d) { return std::abs(z - d.center) < d.radius; });
}

RealLineMeasure::RealLineMeasure(std::vector<double> breakpoints, std::vector<double> values,
                                 std::vector<std::pair<double, double>> atoms)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), atoms_(std::move(atoms)) {
    if (breakpoints_.size() != values_.size()) {
        throw InputError("r_part: breakpoints and values differ in length");
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k]) || !std::isfinite(values_[k])) {
            throw InputError("r_part: non-finite breakpoint or value");
        }
        if (values_[k] < 0.0) throw InputError("r_part: density must be nonnegative");
        if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
            throw InputError("r_part: breakpoints must be strictly increasing");
        }
    }
    if (!values_.empty() && (values_.front() != 0.0 || values_.back() != 0.0)) {
        throw InputError("r_part: density must vanish at both ends, otherwise its mass is infinite");
    }
    for (const auto& [x, m] : atoms_) {
        if (!std::isfinite(x) || !std::isfinite(m) || m < 0.0) {
            throw InputError("r_part: atoms need a finite position and a nonnegative mass");
        }
    }
    prefix_.assign(breakpoints_.size(), 0.0);
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        prefix_[k] = prefix_[k - 1] + 0.5 * (breakpoints_[k] - breakpoints_[k - 1]) * (values_[k] + values_[k - 1]);
    }
}

double RealLineMeasure::density(double x) const {
    if (breakpoints_.empty() || x <= breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    const auto hi = static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                             breakpoints_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - breakpoints_[lo]) / (breakpoints_[hi] - breakpoints_[lo]);
    return values_[lo] + (values_[hi] - values_[lo]) * w;
}

double RealLineMeasure::cumulative(double x) const {
    if (breakpoints_.empty() || x <= breakpoints_.front()) return 0.0;
    if (x >= breakpoints_.back()) return prefix_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                             breakpoints_.begin());
    const std::size_t lo = hi - 1;
    return prefix_[lo] + 0.5 * (x - breakpoints_[lo]) * (values_[lo] + density(x));
}

double RealLineMeasure::total_mass() const {
    double m = prefix_.empty() ? 0.0 : prefix_.back();
    for (const auto& atom : atoms_) m += atom.second;
    return m;
}

double RealLineMeasure::closed_mass(double a, double b) const {
    if (b < a) return 0.0;
    double m = cumulative(b) - cumulative(a);
    for (const auto& [x, w] : atoms_) {
        if (a <= x && x <= b) m += w;
    }
    return m;
}

double RealLineMeasure::half_open_mass(double a, double b) const {
    if (b <= a) return 0.0;
    double m = cumulative(b) - cumulative(a);
    for (const auto& [x, w] : atoms_) {
        if (a <= x && x < b) m += w;
    }
    return m;
}

std::optional<double> RealLineMeasure::support_start() const {
    std::optional<double> start;
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
        if (values_[k] > 0.0 || values_[k + 1] > 0.0) {
            start = breakpoints_[k];
            break;
        }
    }
    for (const auto& [x, w] : atoms_) {
        if (w > 0.0 && (!start || x < *start)) start = x;
    }
    return start;
}

QMeasure::QMeasure(RealLineMeasure r_part, FSMeasure bohr_part)
    : r_part_(std::move(r_part)), bohr_part_(std::move(bohr_part)) {
    if (r_part_.total_mass() > 1.0 + kMassTol) {
        throw InputError("QMeasure: r_part mass exceeds 1");
    }
}

RVerdict r_part_invariance_verdict(const RealLineMeasure& mu, const Real& t) {
    if (t.is_zero()) throw InputError("r_part_invariance_verdict: t = 0 is vacuous");
    const double s = t.value();
    std::set<double> base(mu.breakpoints().begin(), mu.breakpoints().end());
    for (const auto& atom : mu.atoms()) base.insert(atom.first);
    std::set<double> points;
    for (double p : base) {
        points.insert(p);
        points.insert(p + s);
        points.insert(p - s);
    }
    const std::vector<double> ends(points.begin(), points.end());

    RVerdict v;
    v.r_mass = mu.total_mass();
    double best = -1.0;
    constexpr double tie = 1e-14;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        for (std::size_t j = i; j < ends.size(); ++j) {
            const double a = ends[i];
            const double b = ends[j];
            const double m = mu.closed_mass(a, b);
            const double shifted = mu.closed_mass(a + s, b + s);
            const double diff = std::abs(m - shifted);
            ++v.intervals_checked;
            bool better = diff > best + tie;
            if (!better && std::abs(diff - best) <= tie && v.witness) {
                const double len = b - a;
                const double best_len = v.witness->second - v.witness->first;
                if (m > v.witness_mass + tie) {
                    better = true;
                } else if (std::abs(m - v.witness_mass) <= tie) {
                    better = len < best_len || (len == best_len && a < v.witness->first);
                }
            }
            if (better) {
                best = diff;
                v.witness = std::make_pair(a, b);
                v.witness_mass = m;
                v.shifted_mass = shifted;
            }
        }
    }
    v.invariant = best <= kMassTol;
    if (v.invariant) {
        v.witness.reset();
        v.witness_mass = 0.0;
        v.shifted_mass = 0.0;
    }
    return v;
}

DivergenceChain max_invariant_r_mass(const RealLineMeasure& mu, const Real& t, std::size_t steps) {
    if (t.is_zero()) throw InputError("max_invariant_r_mass: t = 0 is vacuous");
    const double s = std::abs(t.value());
    DivergenceChain d;
    d.anchor = mu.support_start().value_or(0.0);
    const double a = d.anchor;
    d.window_mass = mu.half_open_mass(a, a + s);
    const double total = mu.total_mass();
    for (std::size_t k = 1; k <= steps; ++k) {
        // The periodized measure puts the window's mass on every [a + j s, a + (j+1) s);
        // pull [a, a + k s) back by each j and intersect with the window.
        const double hi = a + static_cast<double>(k) * s;
        double mass = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double shift = static_cast<double>(j) * s;
            mass += mu.half_open_mass(std::max(a, a - shift), std::min(a + s, hi - shift));
        }
        d.chain.push_back(mass);
        if (d.exceeds_total_at == 0 && mass > total + kMassTol) d.exceeds_total_at = k;
    }
    return d;
}

QVerdict q_invariance_verdict(const QMeasure& mu, const std::vector<Real>& shifts) {
    if (shifts.empty()) throw InputError("q_invariance_verdict: shifts must be nonempty");
    QVerdict v;
    for (const Real& t : shifts) {
        if (t.is_zero()) continue;
        RVerdict r = r_part_invariance_verdict(mu.r_part(), t);
        if (!r.invariant) v.measure_invariant = false;
        v.r_reports.emplace_back(t, std::move(r));
    }
    if (v.r_reports.empty()) throw InputError("q_invariance_verdict: needs a nonzero shift");

    const FSMeasure& bohr = mu.bohr_part();
    const std::vector<Frequency> support = bohr.support();
    v.bohr_uniqueness = uniqueness_verdict(bohr.module(), support, shifts);
    v.bohr_invariance = is_invariant(bohr, shifts, kMassTol);
    if (!v.bohr_invariance.invariant) v.measure_invariant = false;
    v.gram = gram_matrix(bohr, difference_closed_subsets(support).front());
    v.kind = v.bohr_uniqueness.forced_haar() ? QVerdict::Kind::ForcedStandard : QVerdict::Kind::Undetermined;
    return v;
}

}  // namespace bohr
