#pragma once

namespace tw {

/// Value and derivative of the Airy function at one point.
struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double ai_prime = 0.0;
};

/// Ai(x) for real |x| <= 1000.
///
/// Power series in binary128 arithmetic for |x| <= 9, the standard
/// asymptotic expansions beyond. Relative error below 1e-12 on |x| <= 12
/// (measured against the envelope for x < 0, where Ai has zeros).
/// Throws tw::domain_error for non-finite or out-of-range arguments.
double airy_ai(double x);

/// Ai'(x); same method and accuracy as airy_ai.
double airy_ai_prime(double x);

/// Both values in one evaluation.
AiryValue airy(double x);

struct AiryValueExtended {
    long double ai = 0.0L;
    long double ai_prime = 0.0L;
};

/// Long double evaluation, about 1e-18 relative on |x| <= 9. Outside that range
/// the double-precision asymptotics are returned, which are far below 1e-16 in
/// absolute terms for x > 9.
AiryValueExtended airy_extended(long double x);

/// Integral of Ai over [a, inf), absolute error below 1e-11.
double airy_tail_integral(double a);

}  // namespace tw
