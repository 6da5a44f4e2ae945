#include "magnonspec/linalg.hpp"

#include <complex>
#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace magnonspec {

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& a, bool with_vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
  const auto n = static_cast<lapack_int>(a.rows());
  Eigensystem out;
  out.values.resize(n);
  if (n == 0) return out;
  const char job = with_vectors ? 'V' : 'N';

  if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::MatrixXd work = a.real();
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, job, 'L', n, work.data(), n, out.values.data());
    if (info != 0) throw std::runtime_error("dsyevd failed with info " + std::to_string(info));
    if (with_vectors) out.vectors = work.cast<std::complex<double>>();
    return out;
  }
  Eigen::MatrixXcd work = a;
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, job, 'L', n, work.data(), n, out.values.data());
  if (info != 0) throw std::runtime_error("zheevd failed with info " + std::to_string(info));
  if (with_vectors) out.vectors = std::move(work);
  return out;
}

}  // namespace magnonspec
