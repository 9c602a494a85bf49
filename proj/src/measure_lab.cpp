#include "bohr/measure_lab.hpp"

#include "bohr/errors.hpp"
#include "bohr/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace bohr {

namespace {

Coords negated(const Coords& c) {
    Coords n = c;
    for (auto& v : n) v = -v;
    return n;
}

Coords difference(const Coords& a, const Coords& b) {
    Coords d = a;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
    return d;
}

void check_support(const std::vector<Frequency>& support, const Module& module) {
    std::set<Coords> keys;
    for (const auto& f : support) {
        require_same_module(module, f.module(), "measure support");
        keys.insert(f.coords());
    }
    if (!keys.count(Coords(module.rank(), 0))) {
        throw InputError("support must contain the zero frequency");
    }
    for (const auto& k : keys) {
        if (!keys.count(negated(k))) {
            throw InputError("support must be symmetric; missing -" + Frequency(module, k).to_string());
        }
    }
}

// Bron-Kerbosch with pivoting over the "difference lies in F" graph.
void bron_kerbosch(std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x,
                   const std::vector<std::vector<bool>>& adj, std::vector<std::vector<std::size_t>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
        for (std::size_t u : *set) {
            std::size_t n = 0;
            for (std::size_t v : p) n += adj[u][v];
            if (n >= best) {
                best = n;
                pivot = u;
            }
        }
    }
    std::vector<std::size_t> candidates;
    for (std::size_t v : p) {
        if (!adj[pivot][v]) candidates.push_back(v);
    }
    for (std::size_t v : candidates) {
        std::vector<std::size_t> p2, x2;
        for (std::size_t u : p) if (adj[v][u]) p2.push_back(u);
        for (std::size_t u : x) if (adj[v][u]) x2.push_back(u);
        r.push_back(v);
        bron_kerbosch(r, std::move(p2), std::move(x2), adj, out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<Frequency>> difference_closed_subsets(const std::vector<Frequency>& support) {
    std::set<Coords> keys;
    for (const auto& f : support) keys.insert(f.coords());
    const std::size_t n = support.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            adj[i][j] = i != j && keys.count(difference(support[i].coords(), support[j].coords()));
        }
    }
    std::vector<std::vector<std::size_t>> cliques;
    std::vector<std::size_t> r, p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    if (n > 0) bron_kerbosch(r, p, {}, adj, cliques);

    std::vector<std::vector<Frequency>> out;
    for (auto& clique : cliques) {
        std::sort(clique.begin(), clique.end(),
                  [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
        std::vector<Frequency> subset;
        for (std::size_t i : clique) subset.push_back(support[i]);
        out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return out;
}

MeasureDiagnostics FSMeasure::diagnose(const Module& module, const std::map<Coords, Scalar>& moments) {
    MeasureDiagnostics d;
    const Coords zero(module.rank(), 0);
    d.contains_zero = moments.count(zero) > 0;
    d.symmetric_support = true;
    for (const auto& [k, v] : moments) {
        if (k.size() != module.rank()) {
            d.symmetric_support = false;
            d.problem = "coordinate vector of wrong length";
            return d;
        }
        if (!moments.count(negated(k))) d.symmetric_support = false;
    }
    if (!d.contains_zero || !d.symmetric_support) {
        d.problem = !d.contains_zero ? "support must contain the zero frequency" : "support must be symmetric";
        return d;
    }

    const Scalar& m0 = moments.at(zero);
    d.normalized = m0.is_exact() ? m0.exact() == ComplexRational{1, 0}
                                 : std::abs(m0.value() - 1.0) <= kNormalizationTol;
    if (!d.normalized) {
        d.problem = "not normalized: mu^(0) must be 1";
        return d;
    }

    d.hermitian = true;
    bool all_exact = true;
    for (const auto& [k, v] : moments) {
        const Scalar& w = moments.at(negated(k));
        all_exact = all_exact && v.is_exact();
        if (!approx_equal(v, w.conj(), kHermitianTol)) d.hermitian = false;
    }
    if (!d.hermitian) {
        d.problem = "not Hermitian: mu^(-lambda) must equal conj(mu^(lambda))";
        return d;
    }

    std::vector<Frequency> support;
    for (const auto& [k, v] : moments) support.emplace_back(module, k);
    d.psd = true;
    d.exact_psd_check = all_exact;
    d.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& subset : difference_closed_subsets(support)) {
        const std::size_t m = subset.size();
        Eigen::MatrixXcd g(m, m);
        ExactMatrix exact(all_exact ? m : 0, std::vector<ComplexRational>(all_exact ? m : 0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const Scalar& v = moments.at(difference(subset[i].coords(), subset[j].coords()));
                g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v.value();
                if (all_exact) exact[i][j] = v.exact();
            }
        }
        d.min_eigenvalue = std::min(d.min_eigenvalue, min_eigenvalue(g));
        bool ok = all_exact ? exact_psd(std::move(exact)) : true;
        if (!ok) d.psd = false;
    }
    if (!all_exact && d.min_eigenvalue < -kPsdTol) d.psd = false;
    if (!d.psd) d.problem = "not positive-definite: a Gram matrix has a negative eigenvalue";
    return d;
}

FSMeasure FSMeasure::create(const Module& module, std::map<Coords, Scalar> moments) {
    MeasureDiagnostics d = diagnose(module, moments);
    if (!d.ok()) throw InputError("invalid FSMeasure: " + d.problem);
    return FSMeasure(module, std::move(moments));
}

std::optional<FSMeasure> FSMeasure::try_create(const Module& module, std::map<Coords, Scalar> moments) {
    if (!diagnose(module, moments).ok()) return std::nullopt;
    return FSMeasure(module, std::move(moments));
}

FSMeasure unchecked_measure(const Module& module, std::map<Coords, Scalar> moments) {
    return FSMeasure(module, std::move(moments));
}

std::vector<Frequency> FSMeasure::support() const {
    std::vector<Frequency> out;
    for (const auto& [k, v] : moments_) out.emplace_back(module_, k);
    return out;
}

bool FSMeasure::contains(const Frequency& lambda) const {
    return lambda.module() == module_ && moments_.count(lambda.coords()) > 0;
}

std::optional<Scalar> FSMeasure::moment(const Frequency& lambda) const {
    require_same_module(module_, lambda.module(), "moment lookup");
    auto it = moments_.find(lambda.coords());
    if (it == moments_.end()) return std::nullopt;
    return it->second;
}

bool FSMeasure::is_exact() const {
    return std::all_of(moments_.begin(), moments_.end(), [](const auto& kv) { return kv.second.is_exact(); });
}

FSMeasure FSMeasure::restricted(const std::vector<Frequency>& subset) const {
    check_support(subset, module_);
    std::map<Coords, Scalar> m;
    for (const auto& f : subset) {
        auto it = moments_.find(f.coords());
        if (it == moments_.end()) {
            throw InputError("restriction outside the support: " + f.to_string());
        }
        m.emplace(f.coords(), it->second);
    }
    return FSMeasure(module_, std::move(m));
}

std::vector<Frequency> symmetric_box(const Module& module, int radius) {
    if (radius < 0) throw InputError("box radius must be nonnegative");
    std::vector<Frequency> out;
    const std::size_t d = module.rank();
    Coords c(d, -radius);
    while (true) {
        out.emplace_back(module, c);
        std::size_t i = 0;
        while (i < d && c[i] == radius) {
            c[i] = -radius;
            ++i;
        }
        if (i == d) break;
        ++c[i];
    }
    return out;
}

FSMeasure haar_measure(const Module& module, const std::vector<Frequency>& support) {
    check_support(support, module);
    std::map<Coords, Scalar> m;
    for (const auto& f : support) m.emplace(f.coords(), f.is_zero() ? Scalar(1) : Scalar(0));
    return unchecked_measure(module, std::move(m));
}

FSMeasure point_mass(const BohrPoint& psi, const std::vector<Frequency>& support) {
    check_support(support, psi.module());
    std::map<Coords, Scalar> m;
    for (const auto& f : support) m.emplace(f.coords(), psi.character(f));
    return unchecked_measure(psi.module(), std::move(m));
}

FSMeasure pushforward(const FSMeasure& mu, const Real& t) {
    std::map<Coords, Scalar> m;
    for (const auto& [k, v] : mu.moments_) {
        m.emplace(k, v * phase(Frequency(mu.module_, k), t));
    }
    return FSMeasure(mu.module_, std::move(m));
}

InvarianceReport is_invariant(const FSMeasure& mu, const std::vector<Real>& shifts, double tol) {
    if (!(tol >= 0.0)) throw InputError("is_invariant: tol must be nonnegative");
    InvarianceReport report;
    // Descending order, so ties between lambda and -lambda report the positive one.
    for (auto it = mu.moments().rbegin(); it != mu.moments().rend(); ++it) {
        const auto& [k, v] = *it;
        if (v.is_zero()) continue;
        Frequency lambda(mu.module(), k);
        for (const Real& t : shifts) {
            double violation = (v * (phase(lambda, t) - Scalar(1))).abs();
            // Rounding must not let -lambda displace an equally bad lambda.
            if (violation > report.worst_violation * (1 + 1e-12)) {
                report.violator = lambda;
                report.violating_shift = t;
            }
            report.worst_violation = std::max(report.worst_violation, violation);
        }
    }
    report.invariant = report.worst_violation <= tol;
    if (report.invariant) {
        report.violator.reset();
        report.violating_shift.reset();
    }
    return report;
}

UniquenessVerdict uniqueness_verdict(const Module& module, const std::vector<Frequency>& support,
                                     const std::vector<Real>& shifts) {
    check_support(support, module);
    UniquenessVerdict verdict;
    std::set<Coords> seen;
    for (const auto& lambda : support) {
        if (lambda.is_zero() || !seen.insert(lambda.coords()).second) continue;
        bool killed = false;
        for (const Real& t : shifts) {
            auto exact = exactly_in_two_pi_z(lambda, t);
            bool periodic = exact ? *exact : in_two_pi_z(lambda, t);
            if (!periodic) {
                killed = true;
                if (exact) ++verdict.exact_decisions;
                verdict.witnesses.emplace_back(lambda, t);
                break;
            }
        }
        if (!killed) verdict.surviving.push_back(lambda);
    }
    std::sort(verdict.surviving.begin(), verdict.surviving.end());
    verdict.kind = verdict.surviving.empty() ? UniquenessVerdict::Kind::ForcedHaar
                                             : UniquenessVerdict::Kind::Undetermined;
    return verdict;
}

FSMeasure invariant_part(const FSMeasure& mu, const std::vector<Real>& shifts) {
    std::map<Coords, Scalar> m;
    for (const auto& [k, v] : mu.moments_) {
        Frequency lambda(mu.module_, k);
        bool killed = std::any_of(shifts.begin(), shifts.end(),
                                  [&](const Real& t) { return !in_two_pi_z(lambda, t); });
        m.emplace(k, killed ? Scalar(0) : v);
    }
    return FSMeasure(mu.module_, std::move(m));
}

namespace {

void require_torus_rank(const Module& module) {
    if (module.rank() == 0 || module.rank() > TorusDensity::kMaxRank) {
        throw InputError("torus densities need a module of rank 1 or 2");
    }
}

}  // namespace

TorusDensity TorusDensity::create(const Module& module, std::map<Coords, Scalar> coefficients) {
    require_torus_rank(module);
    const Coords zero(module.rank(), 0);
    auto it = coefficients.find(zero);
    bool normalized = it != coefficients.end() &&
                      (it->second.is_exact() ? it->second.exact() == ComplexRational{1, 0}
                                             : std::abs(it->second.value() - 1.0) <= kNormalizationTol);
    if (!normalized) {
        throw InputError("density is not normalized: zero-mode coefficient must be 1");
    }
    for (const auto& [k, v] : coefficients) {
        if (k.size() != module.rank()) throw InputError("density coefficient of wrong rank");
        auto jt = coefficients.find(negated(k));
        Scalar partner = jt == coefficients.end() ? Scalar() : jt->second;
        if (!approx_equal(v, partner.conj(), kHermitianTol)) {
            throw InputError("density is not real-valued (coefficients not Hermitian)");
        }
    }
    TorusDensity rho(module, std::move(coefficients));
    if (rho.min_on_grid() < -kPsdTol) {
        throw InputError("density is negative somewhere on the grid");
    }
    return rho;
}

TorusDensity TorusDensity::uniform(const Module& module) {
    require_torus_rank(module);
    return TorusDensity(module, {{Coords(module.rank(), 0), Scalar(1)}});
}

TorusDensity TorusDensity::from_amplitude(const Module& module, const std::map<Coords, std::complex<double>>& b) {
    require_torus_rank(module);
    double norm = 0.0;
    for (const auto& [k, v] : b) norm += std::norm(v);
    if (!(norm > 0.0)) throw InputError("amplitude must be nonzero");
    std::map<Coords, std::complex<double>> a;
    for (const auto& [m1, v1] : b) {
        for (const auto& [m2, v2] : b) {
            a[difference(m1, m2)] += v1 * std::conj(v2) / norm;
        }
    }
    std::map<Coords, Scalar> coefficients;
    for (const auto& [k, v] : a) {
        bool zero = std::all_of(k.begin(), k.end(), [](std::int64_t c) { return c == 0; });
        if (zero) {
            coefficients.emplace(k, Scalar(1));
        } else if (std::abs(v) >= Scalar::kZeroThreshold) {
            coefficients.emplace(k, Scalar::inexact(v));
        }
    }
    // Enforce exact Hermitian pairs.
    for (auto& [k, v] : coefficients) {
        auto jt = coefficients.find(negated(k));
        if (k < jt->first) {
            std::complex<double> avg = 0.5 * (v.value() + std::conj(jt->second.value()));
            v = Scalar::inexact(avg);
            jt->second = Scalar::inexact(std::conj(avg));
        }
    }
    return TorusDensity(module, std::move(coefficients));
}

double TorusDensity::operator()(const std::vector<double>& theta) const {
    std::complex<double> sum = 0.0;
    for (const auto& [k, v] : coefficients_) {
        double phase_angle = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) phase_angle += static_cast<double>(k[i]) * theta.at(i);
        sum += v.value() * std::polar(1.0, phase_angle);
    }
    return sum.real();
}

double TorusDensity::min_on_grid() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double lowest = std::numeric_limits<double>::infinity();
    if (module_.rank() == 1) {
        constexpr int n = 10000;
        for (int i = 0; i < n; ++i) lowest = std::min(lowest, (*this)({two_pi * i / n}));
    } else {
        constexpr int n = 100;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                lowest = std::min(lowest, (*this)({two_pi * i / n, two_pi * j / n}));
            }
        }
    }
    return lowest;
}

FSMeasure moments_from_density(const TorusDensity& rho, const std::vector<Frequency>& support) {
    check_support(support, rho.module());
    std::map<Coords, Scalar> m;
    for (const auto& f : support) {
        auto it = rho.coefficients().find(negated(f.coords()));
        m.emplace(f.coords(), it == rho.coefficients().end() ? Scalar(0) : it->second);
    }
    return FSMeasure::create(rho.module(), std::move(m));
}

double density_set_measure(const TorusDensity& rho, const AngleBox& box) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (box.intervals.size() != rho.module().rank()) {
        throw InputError("box rank does not match the density");
    }
    for (const auto& [lo, hi] : box.intervals) {
        if (!(hi >= lo) || hi - lo > two_pi + 1e-12) {
            throw InputError("box intervals need 0 <= hi - lo <= 2 pi");
        }
    }
    std::complex<double> total = 0.0;
    for (const auto& [k, v] : rho.coefficients()) {
        std::complex<double> term = v.value();
        for (std::size_t i = 0; i < k.size(); ++i) {
            const auto [lo, hi] = box.intervals[i];
            if (k[i] == 0) {
                term *= (hi - lo) / two_pi;
            } else {
                const double n = static_cast<double>(k[i]);
                term *= (std::polar(1.0, n * hi) - std::polar(1.0, n * lo)) /
                        std::complex<double>(0.0, two_pi * n);
            }
        }
        total += term;
    }
    return total.real();
}

std::pair<double, double> set_invariance_check(const TorusDensity& rho, const AngleBox& box, const Real& t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    AngleBox shifted = box;
    for (std::size_t k = 0; k < shifted.intervals.size() && k < rho.module().rank(); ++k) {
        double offset = two_pi * turns_of_radians(rho.module().generator_high(k) * t.high());
        shifted.intervals[k].first -= offset;
        shifted.intervals[k].second -= offset;
    }
    return {density_set_measure(rho, box), density_set_measure(rho, shifted)};
}

}  // namespace bohr
