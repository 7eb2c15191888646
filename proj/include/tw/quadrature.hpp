#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tw {

/// Nodes and positive weights on an interval (a, b).
struct QuadratureRule {
    std::vector<double> nodes;    // ascending, strictly inside (a, b)
    std::vector<double> weights;  // positive, summing to b - a
    double a = -1.0;
    double b = 1.0;

    std::size_t size() const noexcept { return nodes.size(); }

    double integrate(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule on (-1, 1), 1 <= n <= 512.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre nodes and weights computed and stored in long double,
/// already mapped to (a, b).
struct ExtendedRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

ExtendedRule gauss_legendre_extended(int n, long double a, long double b);

/// Affine image of `rule` on (a, b).
QuadratureRule map_to_interval(const QuadratureRule& rule, double a, double b);

}  // namespace tw
