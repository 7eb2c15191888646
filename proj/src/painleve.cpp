#include "tw/painleve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tw/errors.hpp"
#include "tw/specfun.hpp"

namespace tw {
namespace {

constexpr int kOrder = 24;
constexpr long double kMaxStep = 1.0L / 64.0L;
constexpr double kBlowUp = 1e3;

// Index of the grid interval [s[i+1], s[i]] containing x (grid is decreasing).
std::size_t locate(const std::vector<double>& grid, double x) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), x, std::greater<double>());
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == 0) return 0;
    return std::min(i - 1, grid.size() - 2);
}

double hermite(double x, double x0, double x1, double y0, double y1, double d0, double d1) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

double PainleveSolution::q_at(double x) const {
    if (!contains(x)) throw parameter_error("PainleveSolution: s outside the solved grid");
    const std::size_t i = locate(s, x);
    return hermite(x, s[i], s[i + 1], q[i], q[i + 1], q_prime[i], q_prime[i + 1]);
}

double PainleveSolution::u_at(double x) const {
    if (!contains(x)) throw parameter_error("PainleveSolution: s outside the solved grid");
    const std::size_t i = locate(s, x);
    return hermite(x, s[i], s[i + 1], U[i], U[i + 1], -0.5 * q[i], -0.5 * q[i + 1]);
}

PainleveSolution painleve_solve(double s_min, double s0, double step_tolerance) {
    if (!(s_min >= -10.0)) throw parameter_error("painleve_solve: s_min must be >= -10");
    if (!(s0 >= 8.0)) throw parameter_error("painleve_solve: s0 must be >= 8");
    if (!(s_min < s0)) throw parameter_error("painleve_solve: need s_min < s0");
    if (!(step_tolerance > 0.0)) throw parameter_error("painleve_solve: step_tolerance must be positive");

    using real = long double;
    real s = s0;
    real q = airy_ai(s0);
    real p = airy_ai_prime(s0);
    real u = 0.5L * airy_tail_integral(s0);

    PainleveSolution sol;
    auto record = [&] {
        sol.s.push_back(static_cast<double>(s));
        sol.q.push_back(static_cast<double>(q));
        sol.q_prime.push_back(static_cast<double>(p));
        sol.U.push_back(static_cast<double>(u));
    };
    record();

    // Taylor coefficients in h = x - s of q, q^2 and q^3.
    std::array<real, kOrder + 1> a{}, sq{}, cube{};
    while (s > s_min) {
        a[0] = q;
        a[1] = p;
        for (int k = 0; k + 2 <= kOrder; ++k) {
            real acc2 = 0, acc3 = 0;
            for (int i = 0; i <= k; ++i) acc2 += a[i] * a[k - i];
            sq[k] = acc2;
            for (int i = 0; i <= k; ++i) acc3 += sq[i] * a[k - i];
            cube[k] = acc3;
            const real prev = k >= 1 ? a[k - 1] : 0;
            a[k + 2] = (s * a[k] + prev + 2 * cube[k]) / ((k + 2) * (k + 1));
        }

        real h = kMaxStep;
        for (int j = kOrder - 1; j <= kOrder; ++j) {
            if (a[j] != 0) h = std::min(h, std::pow(static_cast<real>(step_tolerance) / std::fabs(a[j]), 1.0L / j));
        }
        h = std::min(h, s - static_cast<real>(s_min));
        const real step = -h;

        // Horner for q, q' and the integral of q (for U).
        real qn = 0, pn = 0, integral = 0;
        for (int k = kOrder; k >= 0; --k) {
            qn = qn * step + a[k];
            if (k >= 1) pn = pn * step + k * a[k];
            integral = integral * step + a[k] / (k + 1);
        }
        integral *= step;
        q = qn;
        p = pn;
        u -= 0.5L * integral;  // U' = -q / 2
        s = (h == s - static_cast<real>(s_min)) ? static_cast<real>(s_min) : s + step;
        if (!std::isfinite(static_cast<double>(q)) || std::fabs(static_cast<double>(q)) > kBlowUp)
            throw instability_error("painleve_solve: blow-up at s = " + std::to_string(static_cast<double>(s)),
                                    static_cast<double>(s));
        record();
    }
    return sol;
}

double f1_painleve(const PainleveSolution& sol, double s, int n) {
    if (!sol.contains(s)) throw parameter_error("f1_painleve: s outside the solved grid");
    return std::exp(-sol.u_at(s)) * std::sqrt(f2(s, n));
}

double f4_painleve(const PainleveSolution& sol, double u, int n) {
    const double s = u * std::numbers::sqrt2;
    if (!sol.contains(s)) throw parameter_error("f4_painleve: s outside the solved grid");
    return std::cosh(sol.u_at(s)) * std::sqrt(f2(s, n));
}

}  // namespace tw
