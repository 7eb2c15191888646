#pragma once

#include <vector>

#include "tw/distributions.hpp"

namespace tw {

/// Hastings-McLeod solution q'' = s q + 2 q^3, q ~ Ai at +inf, tabulated on a
/// decreasing grid together with U(s) = 1/2 int_s^inf q(x) dx.
struct PainleveSolution {
    std::vector<double> s;  // s[0] = s0 > s[1] > ... > s.back() = s_min
    std::vector<double> q;
    std::vector<double> q_prime;
    std::vector<double> U;

    double s_max() const { return s.front(); }
    double s_min() const { return s.back(); }
    bool contains(double x) const { return x <= s_max() && x >= s_min(); }

    /// Cubic Hermite interpolation from (q, q').
    double q_at(double x) const;
    /// Cubic Hermite interpolation from (U, U' = -q/2).
    double u_at(double x) const;
};

/// Integrates from s0 down to s_min with a Taylor-series method in extended
/// precision, seeded with q(s0) = Ai(s0), q'(s0) = Ai'(s0), U(s0) = 1/2 int_{s0}^inf Ai.
/// Requires s_min >= -10 and s0 >= 8. Throws instability_error if |q| exceeds 1e3.
PainleveSolution painleve_solve(double s_min = -10.0, double s0 = 8.0, double step_tolerance = 1e-18);

/// F1(s) = exp(-U(s)) sqrt(F2(s)), F2 from the Fredholm route.
double f1_painleve(const PainleveSolution& sol, double s, int n = kDefaultNodes);

/// F4(u) = cosh(U(s)) sqrt(F2(s)) with s = u sqrt(2).
double f4_painleve(const PainleveSolution& sol, double u, int n = kDefaultNodes);

}  // namespace tw
