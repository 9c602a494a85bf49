#include "bohr/hermitian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace bohr {

double min_eigenvalue(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double hermitian_defect(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool exact_psd(ExactMatrix m) {
    std::vector<std::size_t> active(m.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

    while (!active.empty()) {
        for (std::size_t i : active) {
            for (std::size_t j : active) {
                if (m[i][j] != m[j][i].conj()) return false;
            }
        }
        std::size_t pivot = active.front();
        for (std::size_t i : active) {
            if (sgn(m[i][i].re) < 0) return false;
            if (m[i][i].re > m[pivot][pivot].re) pivot = i;
        }
        const Rational p = m[pivot][pivot].re;
        if (sgn(p) == 0) {
            // Zero diagonal forces the whole remaining block to vanish.
            for (std::size_t i : active) {
                for (std::size_t j : active) {
                    if (!m[i][j].is_zero()) return false;
                }
            }
            return true;
        }
        active.erase(std::find(active.begin(), active.end(), pivot));
        // Schur complement: A - a a^* / p
        for (std::size_t i : active) {
            for (std::size_t j : active) {
                ComplexRational update = m[i][pivot] * m[pivot][j];
                m[i][j].re -= update.re / p;
                m[i][j].im -= update.im / p;
            }
        }
    }
    return true;
}

}  // namespace bohr
