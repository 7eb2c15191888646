#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "tw/errors.hpp"
#include "tw/specfun.hpp"

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Compensated (Neumaier) running sum.
struct Neumaier {
    Big sum = 0, c = 0;
    void add(const Big& v) {
        const Big t = sum + v;
        if (abs(sum) >= abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    Big value() const { return sum + c; }
};

// Maclaurin series of Ai and Ai' in 50-digit arithmetic, 250 terms.
std::pair<double, double> series_oracle(double xd) {
    const Big x = xd;
    const Big x3 = x * x * x;
    const Big c1 = 1 / (pow(Big(3), Big(2) / 3) * boost::math::tgamma(Big(2) / 3));
    const Big c2 = 1 / (pow(Big(3), Big(1) / 3) * boost::math::tgamma(Big(1) / 3));
    Neumaier f, g, fp, gp;
    Big a = 1, b = x, dp = x * x / 2, e = 1;
    for (int k = 0; k < 250; ++k) {
        f.add(a);
        g.add(b);
        fp.add(dp);
        gp.add(e);
        a *= x3 / ((3 * k + 2) * (3 * k + 3));
        b *= x3 / ((3 * k + 3) * (3 * k + 4));
        dp *= x3 / ((3 * k + 3) * (3 * k + 5));
        e *= x3 / ((3 * k + 1) * (3 * k + 3));
    }
    const Big ai = c1 * f.value() - c2 * g.value();
    const Big aip = c1 * fp.value() - c2 * gp.value();
    return {static_cast<double>(ai), static_cast<double>(aip)};
}

struct Reference {
    double x, ai, ai_prime;
};

// 40-digit reference values (mpmath), rounded to 20 digits.
const Reference kReference[] = {
    {-15, 0.27821749087082892953, 0.27237420430864202083},
    {-12.5, -0.27627456138116024823, -0.41933133041950516441},
    {-9.7, 0.28023750191629778381, 0.48628629123926627751},
    {-7.3, 0.33577037051514727697, -0.18009580448329365985},
    {-5, 0.35076100902411431979, 0.32719281855444313679},
    {-2.5, -0.11232506769296608919, 0.67885273426479436337},
    {-1, 0.5355608832923521188, -0.010160567116645209395},
    {-0.3, 0.4309030952855808556, -0.24054512725815461017},
    {0.4, 0.25474235429567634084, -0.23583203441920821501},
    {1, 0.13529241631288141552, -0.15914744129679321279},
    {2.2, 0.025610404421773212354, -0.040497263244453125251},
    {4.5, 0.00033025032351430898366, -0.00071786656755750888869},
    {4.6, 0.00026543212392445045001, -0.00058291417781033360493},
    {8.9, 3.3420610425186999076e-9, -1.0062109921836912133e-8},
    {9.1, 1.8242282535640280405e-9, -5.5520373443859194353e-9},
    {12, 1.393184688875360839e-13, -4.854736554985308463e-13},
    {15, 2.164962520737992299e-18, -8.4205679540177727661e-18},
};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("Ai and Ai' at the origin") {
    CHECK(tw::airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-15));
    CHECK(tw::airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-15));
    const tw::AiryValue v = tw::airy(0.0);
    CHECK(v.x == 0.0);
    CHECK(v.ai == tw::airy_ai(0.0));
    CHECK(v.ai_prime == tw::airy_ai_prime(0.0));
}

TEST_CASE("reference table") {
    for (const auto& r : kReference) {
        CAPTURE(r.x);
        if (std::fabs(r.x) <= 12) {
            CHECK(rel(tw::airy_ai(r.x), r.ai) < 1e-12);
            CHECK(rel(tw::airy_ai_prime(r.x), r.ai_prime) < 1e-12);
        } else if (r.x > 12) {
            CHECK(std::fabs(tw::airy_ai(r.x) - r.ai) < 1e-14);
            CHECK(std::fabs(tw::airy_ai_prime(r.x) - r.ai_prime) < 1e-14);
        } else {
            CHECK(std::fabs(tw::airy_ai(r.x) - r.ai) < 1e-12);
            CHECK(std::fabs(tw::airy_ai_prime(r.x) - r.ai_prime) < 1e-12);
        }
    }
}

TEST_CASE("extended-precision evaluation tracks the reference closer than double") {
    for (const auto& r : kReference) {
        if (std::fabs(r.x) > 9) continue;
        CAPTURE(r.x);
        const tw::AiryValueExtended v = tw::airy_extended(r.x);
        CHECK(rel(static_cast<double>(v.ai), r.ai) < 1e-15);
        CHECK(rel(static_cast<double>(v.ai_prime), r.ai_prime) < 1e-15);
    }
}

TEST_CASE("50-digit Maclaurin oracle") {
    SUBCASE("x = 1 and x = -1") {
        for (double x : {1.0, -1.0}) {
            const auto [ai, aip] = series_oracle(x);
            CHECK(rel(tw::airy_ai(x), ai) < 1e-12);
            CHECK(rel(tw::airy_ai_prime(x), aip) < 1e-12);
        }
    }
    SUBCASE("random points in [-9, 9]") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-9.0, 9.0);
        for (int i = 0; i < 60; ++i) {
            const double x = u(rng);
            const auto [ai, aip] = series_oracle(x);
            CAPTURE(x);
            // Relative to the local oscillation envelope on the left, plain relative on the right.
            const double scale_ai = x < 0 ? std::max(std::fabs(ai), 0.1) : std::fabs(ai);
            const double scale_aip = x < 0 ? std::max(std::fabs(aip), 0.1) : std::fabs(aip);
            CHECK(std::fabs(tw::airy_ai(x) - ai) < 1e-12 * scale_ai);
            CHECK(std::fabs(tw::airy_ai_prime(x) - aip) < 1e-12 * scale_aip);
        }
    }
}

TEST_CASE("branch seams are continuous") {
    for (double seam : {-9.0, 9.0}) {
        const double below = std::nextafter(seam, -20.0);
        const double above = std::nextafter(seam, 20.0);
        CHECK(rel(tw::airy_ai(below), tw::airy_ai(above)) < 1e-12);
        CHECK(rel(tw::airy_ai_prime(below), tw::airy_ai_prime(above)) < 1e-12);
    }
}

TEST_CASE("derivative consistency by central differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-15.0, 15.0);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        const double fd = (tw::airy_ai(x + h) - tw::airy_ai(x - h)) / (2 * h);
        CAPTURE(x);
        CHECK(std::fabs(fd - tw::airy_ai_prime(x)) < 1e-7);
    }
}

TEST_CASE("Airy equation residual from a second evaluation path") {
    // Ai'' by a five-point difference of Ai', compared with x Ai.
    const double h = 1e-3;
    for (double x = -15.0; x <= 15.0; x += 0.37) {
        auto d = [](double y) { return tw::airy_ai_prime(y); };
        const double second =
            (-d(x + 2 * h) + 8 * d(x + h) - 8 * d(x - h) + d(x - 2 * h)) / (12 * h);
        CAPTURE(x);
        CHECK(std::fabs(second - x * tw::airy_ai(x)) < 1e-10);
    }
}

TEST_CASE("positivity and monotone decay on the right") {
    double previous = tw::airy_ai(1.0);
    for (double x = 0.0; x <= 100.0; x += 0.05) CHECK(tw::airy_ai(x) > 0.0);
    for (double x = 1.05; x <= 100.0; x += 0.05) {
        const double v = tw::airy_ai(x);
        CHECK(v < previous);
        previous = v;
    }
    CHECK(tw::airy_ai(200.0) < 1e-300);
    CHECK(std::fabs(tw::airy_ai_prime(200.0)) < 1e-300);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(tw::airy_ai(std::nan("")), tw::domain_error);
    CHECK_THROWS_AS(tw::airy_ai_prime(std::numeric_limits<double>::infinity()), tw::domain_error);
    CHECK_THROWS_AS(tw::airy(1001.0), tw::domain_error);
    CHECK_THROWS_AS(tw::airy(-1001.0), tw::domain_error);
    CHECK_NOTHROW(tw::airy(1000.0));
    CHECK_NOTHROW(tw::airy(-1000.0));
    CHECK_THROWS_AS(tw::airy_tail_integral(std::nan("")), tw::domain_error);
    CHECK_THROWS_AS(tw::airy_tail_integral(-std::numeric_limits<double>::infinity()), tw::domain_error);
}

TEST_CASE("tail integral closed forms and references") {
    CHECK(std::fabs(tw::airy_tail_integral(0.0) - 1.0 / 3.0) < 1e-14);
    CHECK(std::fabs(tw::airy_tail_integral(30.0)) < 1e-14);
    CHECK(tw::airy_tail_integral(150.0) == 0.0);
    // The total integral over the line is 1, but the oscillatory left tail
    // decays only like |a|^{-3/4}; at a = -40 the value is still 0.9653.
    CHECK(std::fabs(tw::airy_tail_integral(-40.0) - 0.96530251812241207264) < 1e-11);
    CHECK(std::fabs(tw::airy_tail_integral(-10.0) - 1.0990317364675462508) < 1e-11);
    CHECK(std::fabs(tw::airy_tail_integral(-2.0) - 1.2351061593719397112) < 1e-11);
    CHECK(std::fabs(tw::airy_tail_integral(1.5) - 0.046546583424635772106) < 1e-11);
    CHECK(std::fabs(tw::airy_tail_integral(5.0) - 4.5743027415453846677e-5) < 1e-11);
}

TEST_CASE("tail integral differences match adaptive quadrature") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 40; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [](double x) { return tw::airy_ai(x); }, a, b, 15, 1e-14);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::fabs((tw::airy_tail_integral(a) - tw::airy_tail_integral(b)) - q) < 1e-10);
    }
}
