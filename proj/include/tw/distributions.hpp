#pragma once

#include <vector>

#include "tw/quadrature.hpp"

namespace tw {

/// Node count used by all distribution routines unless overridden.
inline constexpr int kDefaultNodes = 80;

/// GOE Tracy-Widom F1(s) = det(1 - B(s)), s in [-10, 10].
double f1(double s, int n = kDefaultNodes);

/// GUE Tracy-Widom F2(s) = det(1 - B(s)^2), s in [-10, 10].
double f2(double s, int n = kDefaultNodes);

/// F1 via the rank-one bordered determinant
/// F1(s)^2 = det(1 - B(s)^2 - |g><f|), g(x) = Ai(x + s), f(y) = 1 - int_0^inf Ai(y + l + s) dl.
/// Throws numerical_error if the discretized determinant comes out negative.
double f1_forrester(double s, int n = kDefaultNodes);

/// det(1 - A_s) with the unscaled exclusion-process kernel 1/2 Ai((x + y)/2 + s),
/// discretized on (0, 2 L(s)).
double f_sa_direct(double s, int n = kDefaultNodes);

/// GSE Tracy-Widom F4 at the physical argument u, |u| <= 10:
/// F4(u) = (det(1 - B(s)) + det(1 + B(s))) / 2 with s = u sqrt(2).
double f4(double u, int n = kDefaultNodes);

/// det(1 - B(s)^k). k = 4 is the tempting but wrong guess for F4.
double det_id_minus_power(double s, int k, int n = kDefaultNodes);

/// The two vectors of the rank-one term, as plain node values on `rule`.
struct ForresterParts {
    std::vector<double> g;
    std::vector<double> f;
};

ForresterParts forrester_parts(const QuadratureRule& rule, double s);

}  // namespace tw
