#include "tw/specfun.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <cmath>
#include <numbers>

#include "tw/errors.hpp"
#include "tw/quadrature.hpp"

namespace tw {
namespace {

using quad = __float128;

// Ai(0) and -Ai'(0) split into double-double pairs.
constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0Hi = 0.2588194037928068;
constexpr double kAip0Lo = -2.522243111610832e-17;

constexpr double kSeriesLimit = 9.0;
constexpr double kMaxArgument = 1000.0;

void check_argument(double x) {
    if (!std::isfinite(x)) throw domain_error("airy: non-finite argument");
    if (std::fabs(x) > kMaxArgument) throw domain_error("airy: |x| > 1000");
}

quad abs_q(quad v) { return v < 0 ? -v : v; }

// Maclaurin series Ai = c1 f - c2 g. Cancellation between f and g costs up to
// exp(2 zeta) relative accuracy for x > 0, which binary128 absorbs for |x| <= 9.
struct CenterValue {
    long double x;
    long double ai;
    long double ai_prime;
};

CenterValue series(double xd) {
    const quad x = xd;
    const quad x3 = x * x * x;
    const quad eps = 1e-36;

    quad f = 1, tf = 1;         // f
    quad g = x, tg = x;         // g
    quad tfp = x * x / 2, fp = tfp;  // f'
    quad gp = 1, tgp = 1;            // g'
    for (int k = 1; k < 200; ++k) {
        const quad k3 = 3 * k;
        tf *= x3 / ((k3 - 1) * k3);
        tg *= x3 / (k3 * (k3 + 1));
        tgp *= x3 / ((k3 - 2) * k3);
        f += tf;
        g += tg;
        gp += tgp;
        if (k >= 2) {
            tfp *= x3 / ((k3 - 3) * (k3 - 1));
            fp += tfp;
        }
        const quad scale = abs_q(f) + abs_q(g) + abs_q(fp) + abs_q(gp);
        if (abs_q(tf) + abs_q(tg) + abs_q(tfp) + abs_q(tgp) < eps * scale) break;
    }
    const quad c1 = static_cast<quad>(kAi0Hi) + static_cast<quad>(kAi0Lo);
    const quad c2 = static_cast<quad>(kAip0Hi) + static_cast<quad>(kAip0Lo);
    return {xd, static_cast<long double>(c1 * f - c2 * g), static_cast<long double>(c1 * fp - c2 * gp)};
}

constexpr int kAsymptoticTerms = 80;

struct AsymptoticCoefficients {
    std::array<double, kAsymptoticTerms> u{};
    std::array<double, kAsymptoticTerms> v{};
};

const AsymptoticCoefficients& coefficients() {
    static const AsymptoticCoefficients c = [] {
        AsymptoticCoefficients out;
        out.u[0] = 1.0;
        out.v[0] = 1.0;
        for (int k = 1; k < kAsymptoticTerms; ++k) {
            const double kk = k;
            out.u[k] = out.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
                       ((2 * kk - 1) * 216 * kk);
            out.v[k] = -(6 * kk + 1) / (6 * kk - 1) * out.u[k];
        }
        return out;
    }();
    return c;
}

// Sum of (-1)^k c[k] zeta^-k over k = first, first + stride, ..., truncated at
// the smallest term. Index k is the coefficient index; the sign uses k / stride.
double asymptotic_sum(const std::array<double, kAsymptoticTerms>& c, double inv_zeta, int first,
                      int stride) {
    double sum = 0.0;
    double last = INFINITY;
    double power = std::pow(inv_zeta, first);
    const double step = std::pow(inv_zeta, stride);
    for (int k = first, j = 0; k < kAsymptoticTerms; k += stride, ++j) {
        const double term = c[k] * power;
        if (std::fabs(term) > last) break;
        sum += (j % 2 == 0) ? term : -term;
        last = std::fabs(term);
        if (last < 1e-18 * std::fabs(sum)) break;
        power *= step;
    }
    return sum;
}

AiryValue asymptotic_positive(double x) {
    const auto& c = coefficients();
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double inv = 1.0 / zeta;
    const double quarter = std::pow(x, 0.25);
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    const double su = asymptotic_sum(c.u, inv, 0, 1);
    const double sv = asymptotic_sum(c.v, inv, 0, 1);
    return {x, pre / quarter * su, -pre * quarter * sv};
}

AiryValue asymptotic_negative(double x) {
    const auto& c = coefficients();
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double inv = 1.0 / zeta;
    const double quarter = std::pow(z, 0.25);
    const double phase = zeta - std::numbers::pi / 4.0;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    const double rsp = 1.0 / std::sqrt(std::numbers::pi);
    const double ai = rsp / quarter *
                      (cs * asymptotic_sum(c.u, inv, 0, 2) + sn * asymptotic_sum(c.u, inv, 1, 2));
    const double aip = rsp * quarter *
                       (sn * asymptotic_sum(c.v, inv, 0, 2) - cs * asymptotic_sum(c.v, inv, 1, 2));
    return {x, ai, aip};
}

// Exact series values at centers -9, -9 + h, ..., 9, re-expanded locally with the
// Taylor recurrence (k+2)(k+1) a_{k+2} = c a_k + a_{k-1} that follows from y'' = x y.
// |x - c| <= h/2 = 1/16 keeps the expansion well conditioned in double precision.
constexpr double kTableStep = 0.125;
constexpr int kTableSize = static_cast<int>(2 * kSeriesLimit / kTableStep) + 1;
constexpr int kTaylorTerms = 18;

const std::array<CenterValue, kTableSize>& center_table() {
    static const std::array<CenterValue, kTableSize> table = [] {
        std::array<CenterValue, kTableSize> t;
        for (int m = 0; m < kTableSize; ++m) t[m] = series(-kSeriesLimit + m * kTableStep);
        return t;
    }();
    return table;
}

template <typename Real>
std::pair<Real, Real> local_taylor(Real x) {
    const auto& table = center_table();
    const int m = static_cast<int>(std::lround(static_cast<double>((x + kSeriesLimit) / kTableStep)));
    const CenterValue& center = table[std::clamp(m, 0, kTableSize - 1)];
    const Real c = static_cast<Real>(center.x);
    const Real t = x - c;

    // Coefficients a_{k-1}, a_k, a_{k+1} of the expansion about c.
    Real a_prev = 0;
    Real a0 = static_cast<Real>(center.ai);
    Real a1 = static_cast<Real>(center.ai_prime);
    Real value = a0 + a1 * t;
    Real slope = a1;
    Real tk = t;  // t^(k+1)
    for (int k = 0; k + 2 < kTaylorTerms; ++k) {
        const Real a2 = (c * a0 + a_prev) / static_cast<Real>((k + 2) * (k + 1));
        slope += static_cast<Real>(k + 2) * a2 * tk;
        tk *= t;
        value += a2 * tk;
        a_prev = a0;
        a0 = a1;
        a1 = a2;
    }
    return {value, slope};
}

}  // namespace

AiryValue airy(double x) {
    check_argument(x);
    if (x > kSeriesLimit) return asymptotic_positive(x);
    if (x < -kSeriesLimit) return asymptotic_negative(x);
    const auto [ai, aip] = local_taylor(x);
    return {x, ai, aip};
}

AiryValueExtended airy_extended(long double x) {
    check_argument(static_cast<double>(x));
    if (x > kSeriesLimit || x < -kSeriesLimit) {
        const AiryValue v = airy(static_cast<double>(x));
        return {v.ai, v.ai_prime};
    }
    const auto [ai, aip] = local_taylor(x);
    return {ai, aip};
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).ai_prime; }

double airy_tail_integral(double a) {
    if (!std::isfinite(a)) throw domain_error("airy_tail_integral: non-finite argument");
    if (a >= 100.0) return 0.0;  // Ai(100) ~ 1e-291
    static const QuadratureRule panel = gauss_legendre(20);

    auto integrate = [](double lo, double hi) {
        const QuadratureRule r = map_to_interval(panel, lo, hi);
        double sum = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) sum += r.weights[i] * airy_ai(r.nodes[i]);
        return sum;
    };

    if (a < 0.0) {
        if (a < -kMaxArgument) throw domain_error("airy_tail_integral: a < -1000");
        // Integral over [0, inf) is exactly 1/3; the oscillatory part uses unit panels.
        const int panels = static_cast<int>(std::ceil(-a));
        const double width = -a / panels;
        double sum = 1.0 / 3.0;
        for (int p = 0; p < panels; ++p) sum += integrate(a + p * width, a + (p + 1) * width);
        return sum;
    }

    double sum = 0.0;
    for (int p = 0; p < 20; ++p) {
        const double contribution = integrate(a + 2.0 * p, a + 2.0 * (p + 1));
        sum += contribution;
        if (contribution < 1e-18 * sum || contribution == 0.0) break;
    }
    return sum;
}

}  // namespace tw
