#pragma once

#include <Eigen/Dense>

namespace magnonspec {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // empty when only values were requested
};

/// Dense Hermitian eigensolver (LAPACK divide and conquer).  Matrices with
/// zero imaginary part take the real symmetric path.
Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& a, bool with_vectors);

}  // namespace magnonspec
