#include "tw/distributions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tw/errors.hpp"
#include "tw/operator.hpp"
#include "tw/specfun.hpp"

namespace tw {
namespace {

void check_s(double s, const char* who) {
    if (!std::isfinite(s) || s < -10.0 || s > 10.0)
        throw parameter_error(std::string(who) + ": s must lie in [-10, 10]");
}

}  // namespace

double f1(double s, int n) {
    check_s(s, "f1");
    return det_id_minus(assemble(airy_kernel(s), n), 1);
}

double f2(double s, int n) {
    check_s(s, "f2");
    return det_id_minus(power(assemble(airy_kernel(s), n), 2), 1);
}

ForresterParts forrester_parts(const QuadratureRule& rule, double s) {
    ForresterParts parts;
    parts.g.reserve(rule.size());
    parts.f.reserve(rule.size());
    for (double x : rule.nodes) {
        parts.g.push_back(airy_ai(x + s));
        parts.f.push_back(1.0 - airy_tail_integral(x + s));
    }
    return parts;
}

double f1_forrester(double s, int n) {
    check_s(s, "f1_forrester");
    const DiscretizedOperator b = assemble(airy_kernel(s), n);
    const ForresterParts parts = forrester_parts(b.rule, s);
    const Eigen::VectorXd g = to_weighted(b.rule, parts.g);
    const Eigen::VectorXd f = to_weighted(b.rule, parts.f);
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(b.size(), b.size()) - b.matrix * b.matrix - g * f.transpose();
    const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
    if (!(det >= 0.0)) throw numerical_error("f1_forrester: negative determinant " + std::to_string(det));
    return std::sqrt(det);
}

double f_sa_direct(double s, int n) {
    check_s(s, "f_sa_direct");
    KernelSpec spec{[s](double x, double y) { return 0.5 * airy_ai(0.5 * (x + y) + s); }, s, true};
    const QuadratureRule rule = map_to_interval(gauss_legendre(n), 0.0, 2.0 * truncation_length(s));
    return det_id_minus(assemble(spec, rule), 1);
}

double f4(double u, int n) {
    if (!std::isfinite(u) || std::fabs(u) > 10.0) throw parameter_error("f4: u must lie in [-10, 10]");
    const DiscretizedOperator b = assemble(airy_kernel(u * std::numbers::sqrt2), n);
    // Both determinants sit within O(tr B) of 1 in the right tail, and adding
    // them after LU rounds F4 to 1 +- an ulp. Accumulating log(1 -+ lambda)
    // over the eigenvalues keeps the small deficit F4 - 1 to relative accuracy.
    // An eigenvalue that rounds to +-1 deep in the left tail makes that
    // determinant zero at double precision.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numerical_error("f4: eigenvalue computation failed");
    const double inf = std::numeric_limits<double>::infinity();
    double log_minus = 0.0, log_plus = 0.0;
    for (double lambda : es.eigenvalues()) {
        log_minus += lambda < 1.0 ? std::log1p(-lambda) : -inf;
        log_plus += lambda > -1.0 ? std::log1p(lambda) : -inf;
    }
    const double value = 0.5 * (std::exp(log_minus) + std::exp(log_plus));
    if (value < 0.5) return value;
    return 1.0 + 0.5 * (std::expm1(log_minus) + std::expm1(log_plus));
}

double det_id_minus_power(double s, int k, int n) {
    check_s(s, "det_id_minus_power");
    return det_id_minus(power(assemble(airy_kernel(s), n), k), 1);
}

}  // namespace tw
