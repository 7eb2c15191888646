#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "tw/quadrature.hpp"

namespace tw {

/// An integral kernel k(x, y) on [0, inf)^2 together with the distribution
/// argument s it was built for.
struct KernelSpec {
    std::function<double(double, double)> evaluator;
    double shift = 0.0;
    bool symmetric = true;
};

/// Kernel Ai(x + y + s) + perturbation * exp(-x - y). The perturbation term is a
/// fault-injection hook and is zero in normal use.
KernelSpec airy_kernel(double s, double perturbation = 0.0);

/// Kernel Ai'(x + y + s), i.e. the x-derivative of the Airy kernel (D B).
KernelSpec airy_derivative_kernel(double s);

/// Identically zero kernel.
KernelSpec zero_kernel();

/// Truncation length of [0, inf) used for shift s: 12 + max(0, -s).
double truncation_length(double s);

/// Rule used by assemble(spec, n): Gauss-Legendre on (0, truncation_length(s)).
QuadratureRule operator_rule(double s, int n);

/// Nystrom matrix sqrt(w_i) k(x_i, x_j) sqrt(w_j) on a fixed rule.
struct DiscretizedOperator {
    Eigen::MatrixXd matrix;
    QuadratureRule rule;
    KernelSpec spec;

    Eigen::Index size() const { return matrix.rows(); }
};

/// Kernel row k(0, x_j) at the nodes of a rule; the discrete stand-in for B delta.
struct DeltaVector {
    std::vector<double> values;
};

DiscretizedOperator assemble(const KernelSpec& spec, int n);
DiscretizedOperator assemble(const KernelSpec& spec, const QuadratureRule& rule);

/// Same kernel with plain weighting w_j k(x_i, x_j). Only used to check that the
/// symmetrized form has the same determinant.
Eigen::MatrixXd assemble_unsymmetrized(const KernelSpec& spec, const QuadratureRule& rule);

/// det(I - sign * T). sign must be +1 or -1.
double det_id_minus(const DiscretizedOperator& op, int sign);

/// Matrix product a * b. The result's evaluator is the quadrature composition
/// sum_k w_k a(x, x_k) b(x_k, y), so δ-rows of composed operators stay available.
DiscretizedOperator compose(const DiscretizedOperator& a, const DiscretizedOperator& b);

/// op^k for k >= 1, keeping the symmetry flag.
DiscretizedOperator power(const DiscretizedOperator& op, int k);

/// Solves (I + T) u = rhs in the weighted basis.
Eigen::VectorXd solve_id_plus(const DiscretizedOperator& op, const Eigen::VectorXd& rhs);

/// Solves (I - T) u = rhs in the weighted basis.
Eigen::VectorXd solve_id_minus(const DiscretizedOperator& op, const Eigen::VectorXd& rhs);

/// Node values f(x_i) -> weighted coefficients sqrt(w_i) f(x_i), and back.
Eigen::VectorXd to_weighted(const QuadratureRule& rule, std::span<const double> values);
Eigen::VectorXd to_weighted(const QuadratureRule& rule, const Eigen::VectorXd& values);
Eigen::VectorXd from_weighted(const QuadratureRule& rule, const Eigen::VectorXd& weighted);

DeltaVector delta_row(const KernelSpec& spec, const QuadratureRule& rule);

/// Value at x = 0 of the Nystrom extension of u, where u solves u + sign*K u = r:
/// r(0) - sign * sum_j w_j k(0, x_j) u(x_j). With the defaults and u = (1 + B)^{-1} 1
/// this is <δ, (1 + B)^{-1} 1>. u holds plain node values.
double delta_bracket(const DeltaVector& row, const QuadratureRule& rule, std::span<const double> u,
                     double rhs_at_zero = 1.0, int sign = 1);
double delta_bracket(const KernelSpec& spec, const QuadratureRule& rule, std::span<const double> u,
                     double rhs_at_zero = 1.0, int sign = 1);

/// <δ, K δ> = k(0, 0).
double delta_kernel_delta(const KernelSpec& spec);

double trace(const DiscretizedOperator& op);

/// Largest |eigenvalue| of a symmetric operator by power iteration on T^2.
double spectral_norm(const DiscretizedOperator& op, double tolerance = 1e-10, int max_iterations = 10000);

}  // namespace tw
