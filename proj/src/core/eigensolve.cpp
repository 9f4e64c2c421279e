#include "core/eigensolve.hpp"

#include <complex>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qcpd {

void sym_eig(Eigen::MatrixXd &a, Eigen::VectorXd &w) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("sym_eig: matrix not square");
  w.resize(n);
  lapack_int info;
  if (n <= 10000) {
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  } else {
    // dsyevr: separate eigenvector array but only O(n) scratch
    Eigen::MatrixXd z(n, n);
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(n));
    lapack_int m = 0;
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n, 0, 0,
                          0, 0, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    a = std::move(z);
  }
  if (info != 0) throw std::runtime_error("sym_eig: LAPACK failure");
}

void herm_eig(Eigen::MatrixXcd &a, Eigen::VectorXd &w) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("herm_eig: matrix not square");
  w.resize(n);
  lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0) throw std::runtime_error("herm_eig: LAPACK failure");
}

} // namespace qcpd
