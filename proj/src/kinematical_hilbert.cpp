#include "bohr/kinematical_hilbert.hpp"

#include "bohr/errors.hpp"
#include "bohr/hermitian.hpp"

#include <algorithm>
#include <set>

namespace bohr {

namespace {

Scalar required_moment(const FSMeasure& mu, const Frequency& lambda) {
    auto m = mu.moment(lambda);
    if (!m) throw InputError("moment missing for frequency " + lambda.to_string());
    return *m;
}

Eigen::MatrixXcd to_eigen(const ScalarMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j].value();
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd GramOperator::numeric() const { return to_eigen(matrix); }

bool GramOperator::is_identity(double tol) const {
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            if (!approx_equal(matrix[i][j], Scalar(i == j ? 1 : 0), tol)) return false;
        }
    }
    return true;
}

double GramOperator::min_eigenvalue() const { return bohr::min_eigenvalue(numeric()); }

std::vector<Frequency> difference_set(const std::vector<Frequency>& basis) {
    std::set<Frequency> out;
    for (const auto& a : basis) {
        for (const auto& b : basis) out.insert(a - b);
    }
    return {out.begin(), out.end()};
}

GramOperator gram_matrix(const FSMeasure& mu, const std::vector<Frequency>& basis) {
    for (const auto& f : basis) require_same_module(mu.module(), f.module(), "gram_matrix");
    std::vector<std::string> missing;
    for (const auto& delta : difference_set(basis)) {
        if (!mu.contains(delta)) missing.push_back(delta.to_string());
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw InputError("gram_matrix: support lacks the differences " + list);
    }
    GramOperator g{basis, ScalarMatrix(basis.size(), std::vector<Scalar>(basis.size()))};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            g.matrix[i][j] = *mu.moment(basis[i] - basis[j]);
        }
    }
    return g;
}

Eigen::MatrixXcd TranslationMatrix::numeric() const {
    const auto n = static_cast<Eigen::Index>(diagonal.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diagonal[static_cast<std::size_t>(i)].value();
    return out;
}

TranslationMatrix translation_matrix(const Real& t, const std::vector<Frequency>& basis) {
    TranslationMatrix d{basis, {}};
    d.diagonal.reserve(basis.size());
    for (const auto& lambda : basis) d.diagonal.push_back(phase(lambda, t));
    return d;
}

TranslationMatrix compose(const TranslationMatrix& a, const TranslationMatrix& b) {
    if (a.basis != b.basis) throw InputError("compose: translation matrices over different bases");
    TranslationMatrix out{a.basis, {}};
    for (std::size_t k = 0; k < a.diagonal.size(); ++k) out.diagonal.push_back(a.diagonal[k] * b.diagonal[k]);
    return out;
}

UnitarityReport unitarity_check(const FSMeasure& mu, const std::vector<Frequency>& basis, const Real& t,
                                double tol) {
    const GramOperator g = gram_matrix(mu, basis);
    UnitarityReport report;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            // (D^dagger G D)[i][j] = G[i][j] e^{-i(lambda_i - lambda_j)t}; taking the modulus with the
            // conjugate phase gives the same number as the moment-wise invariance test, bit for bit.
            const Scalar factor = phase(basis[i] - basis[j], t) - Scalar(1);
            const double defect = (g.matrix[i][j] * factor).abs();
            if (defect > report.defect) {
                report.defect = defect;
                report.worst_row = i;
                report.worst_col = j;
            }
        }
    }
    report.unitary = report.defect <= tol;
    return report;
}

Scalar l2_inner(const FSMeasure& mu, const APFunction& f, const APFunction& g) {
    require_same_module(mu.module(), f.module(), "l2_inner");
    require_same_module(mu.module(), g.module(), "l2_inner");
    Scalar total;
    for (const auto& [lambda, c] : f.terms()) {
        for (const auto& [nu, d] : g.terms()) {
            const Frequency delta = Frequency(mu.module(), lambda) - Frequency(mu.module(), nu);
            total += c * d.conj() * required_moment(mu, delta);
        }
    }
    return total;
}

}  // namespace bohr
