#pragma once

#include "bohr/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace bohr {

using ExactMatrix = std::vector<std::vector<ComplexRational>>;

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const Eigen::MatrixXcd& m);

double hermitian_defect(const Eigen::MatrixXcd& m);

/// Exact positive-semidefiniteness of a Hermitian complex-rational matrix,
/// by symmetric elimination with largest-diagonal pivoting.
bool exact_psd(ExactMatrix m);

}  // namespace bohr
