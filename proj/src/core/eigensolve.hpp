#pragma once

#include <Eigen/Dense>

namespace qcpd {

// Full eigendecomposition of a real symmetric matrix. On return `a`
// holds the eigenvectors (columns) and `w` the ascending eigenvalues.
// Large problems route to the RRR driver to cap workspace memory.
void sym_eig(Eigen::MatrixXd &a, Eigen::VectorXd &w);

// Same for complex Hermitian.
void herm_eig(Eigen::MatrixXcd &a, Eigen::VectorXd &w);

} // namespace qcpd
