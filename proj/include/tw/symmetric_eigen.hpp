#pragma once

#include <Eigen/Dense>

namespace tw {

/// Diagonal d and off-diagonal e of an orthogonally similar tridiagonal matrix.
struct Tridiagonal {
    Eigen::VectorXd diagonal;
    Eigen::VectorXd off_diagonal;  // size n - 1
};

/// Householder reduction of a symmetric matrix (only the lower triangle is read).
Tridiagonal householder_tridiagonalize(Eigen::MatrixXd a);

/// Number of eigenvalues of the tridiagonal matrix strictly less than x.
int sturm_count_below(const Tridiagonal& t, double x);

/// Largest eigenvalue by Sturm bisection.
double largest_tridiagonal_eigenvalue(const Tridiagonal& t);

/// Largest eigenvalue of a symmetric matrix. Throws parameter_error if the
/// input is empty, non-finite or asymmetric beyond 1e-12 (relative to max |a_ij|).
double largest_symmetric_eigenvalue(const Eigen::MatrixXd& a);

}  // namespace tw
