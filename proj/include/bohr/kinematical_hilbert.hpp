#pragma once

#include "bohr/ap_algebra.hpp"
#include "bohr/frequency_module.hpp"
#include "bohr/measure_lab.hpp"
#include "bohr/real.hpp"
#include "bohr/scalar.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bohr {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Gram matrix of characters under mu: G[i][j] = <chi_i, chi_j>_mu = mu^(lambda_i - lambda_j).
struct GramOperator {
    std::vector<Frequency> basis;
    ScalarMatrix matrix;

    Eigen::MatrixXcd numeric() const;
    bool is_identity(double tol = 0.0) const;
    double min_eigenvalue() const;
};

/// Throws InputError naming every difference lambda_i - lambda_j missing from the support.
GramOperator gram_matrix(const FSMeasure& mu, const std::vector<Frequency>& basis);

/// diag(e^{i lambda_k t}): the translation t acting on the character basis.
struct TranslationMatrix {
    std::vector<Frequency> basis;
    std::vector<Scalar> diagonal;

    Eigen::MatrixXcd numeric() const;
};

TranslationMatrix translation_matrix(const Real& t, const std::vector<Frequency>& basis);
/// D_a D_b; the bases must match.
TranslationMatrix compose(const TranslationMatrix& a, const TranslationMatrix& b);

struct UnitarityReport {
    bool unitary = true;
    /// max_{i,j} |(D^dagger G D - G)[i][j]|.
    double defect = 0.0;
    std::size_t worst_row = 0;
    std::size_t worst_col = 0;
};

UnitarityReport unitarity_check(const FSMeasure& mu, const std::vector<Frequency>& basis, const Real& t,
                                double tol);

/// All lambda_i - lambda_j for the basis, sorted and deduplicated.
std::vector<Frequency> difference_set(const std::vector<Frequency>& basis);

/// sum c_lambda conj(d_nu) mu^(lambda - nu).
Scalar l2_inner(const FSMeasure& mu, const APFunction& f, const APFunction& g);

}  // namespace bohr
