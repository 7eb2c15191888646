#include "tw/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tw/errors.hpp"

namespace tw {

Tridiagonal householder_tridiagonalize(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    Tridiagonal t{Eigen::VectorXd(n), Eigen::VectorXd(std::max<Eigen::Index>(n - 1, 0))};
    a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        const Eigen::Index m = n - k - 1;
        Eigen::VectorXd v = a.col(k).tail(m);
        const double norm = v.norm();
        if (norm == 0.0) {
            t.off_diagonal[k] = 0.0;
            continue;
        }
        const double alpha = v[0] > 0 ? -norm : norm;
        v[0] -= alpha;
        v.normalize();
        auto block = a.bottomRightCorner(m, m);
        Eigen::VectorXd p = 2.0 * (block.selfadjointView<Eigen::Lower>() * v);
        p -= v.dot(p) * v;
        block.noalias() -= v * p.transpose() + p * v.transpose();
        t.off_diagonal[k] = alpha;
    }
    if (n >= 2) t.off_diagonal[n - 2] = a(n - 1, n - 2);
    t.diagonal = a.diagonal();
    return t;
}

int sturm_count_below(const Tridiagonal& t, double x) {
    const Eigen::Index n = t.diagonal.size();
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e2 = i == 0 ? 0.0 : t.off_diagonal[i - 1] * t.off_diagonal[i - 1];
        q = t.diagonal[i] - x - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

double largest_tridiagonal_eigenvalue(const Tridiagonal& t) {
    const Eigen::Index n = t.diagonal.size();
    if (n == 0) throw parameter_error("largest_tridiagonal_eigenvalue: empty matrix");
    // Gershgorin interval.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(t.off_diagonal[i - 1]);
        if (i + 1 < n) r += std::fabs(t.off_diagonal[i]);
        lo = std::min(lo, t.diagonal[i] - r);
        hi = std::max(hi, t.diagonal[i] + r);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi));
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (sturm_count_below(t, mid) == n)
            hi = mid;
        else
            lo = mid;
    }
    if (!std::isfinite(hi)) throw numerical_error("bisection produced a non-finite eigenvalue");
    return 0.5 * (lo + hi);
}

double largest_symmetric_eigenvalue(const Eigen::MatrixXd& a) {
    if (a.rows() == 0 || a.rows() != a.cols())
        throw parameter_error("largest_symmetric_eigenvalue: need a non-empty square matrix");
    if (!a.allFinite()) throw parameter_error("largest_symmetric_eigenvalue: non-finite entry");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw parameter_error("largest_symmetric_eigenvalue: matrix is not symmetric");
    return largest_tridiagonal_eigenvalue(householder_tridiagonalize(a));
}

}  // namespace tw
