#include "tw/quadrature.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <numbers>
#include <string>

#include "tw/errors.hpp"

namespace tw {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
}

namespace {

void check_order(int n) {
    if (n < 1 || n > 512) throw parameter_error("gauss_legendre: n must lie in [1, 512], got " + std::to_string(n));
}

// Legendre P_n and P_n' at x by the three-term recurrence.
template <class Real>
std::pair<Real, Real> legendre(int n, Real x) {
    Real p0 = 1;
    Real p1 = x;
    for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

template <class Real>
void fill_rule(int n, std::vector<Real>& nodes, std::vector<Real>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const Real eps = 4 * std::numeric_limits<Real>::epsilon();
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th largest root.
        Real x = std::cos(std::numbers::pi_v<Real> * (i + Real(0.75)) / (n + Real(0.5)));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(n, x);
            const Real dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < eps) break;
        }
        const Real dp = legendre(n, x).second;
        const Real w = 2 / ((1 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
    check_order(n);
    QuadratureRule rule;
    fill_rule(n, rule.nodes, rule.weights);
    return rule;
}

ExtendedRule gauss_legendre_extended(int n, long double a, long double b) {
    check_order(n);
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw parameter_error("gauss_legendre_extended: need finite a < b");
    ExtendedRule rule;
    fill_rule(n, rule.nodes, rule.weights);
    const long double half = (b - a) / 2;
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = a + (rule.nodes[i] + 1) * half;
        rule.weights[i] *= half;
    }
    return rule;
}

QuadratureRule map_to_interval(const QuadratureRule& rule, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw parameter_error("map_to_interval: need finite a < b");
    const double scale = (b - a) / (rule.b - rule.a);
    QuadratureRule out;
    out.a = a;
    out.b = b;
    out.nodes.resize(rule.size());
    out.weights.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        out.nodes[i] = a + (rule.nodes[i] - rule.a) * scale;
        out.weights[i] = rule.weights[i] * scale;
    }
    return out;
}

}  // namespace tw
