#ifndef FLOQ_LINALG_HPP
#define FLOQ_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace floq::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Dense complex nonsymmetric eigendecomposition (LAPACK zgeev). A is
// destroyed. Right eigenvectors are returned when V != nullptr.
void eig(MatrixXcd& A, VectorXcd& w, MatrixXcd* V);

// Singular values in descending order (LAPACK zgesdd, values only). A is
// destroyed.
VectorXd singular_values(MatrixXcd& A);

// Minimum-cost perfect matching on a square cost matrix; returns the column
// assigned to each row.
std::vector<int> assignment(const MatrixXd& cost);

} // namespace floq::linalg

#endif
