#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tw/distributions.hpp"
#include "json.hpp"

namespace tw {

/// Probe function on [0, inf) with its analytic derivative.
struct TestFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

TestFunction exp_decay();     // e^{-x}
TestFunction gaussian();      // e^{-x^2}
TestFunction zero_function();

/// One numerically checked identity: lhs vs rhs at shift s.
/// For vector-valued identities lhs/rhs hold sup-norms over the nodes and
/// abs_diff the sup-norm of the difference. passed <=> abs_diff <= tolerance.
struct IdentityReport {
    std::string name;
    double s = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

void to_json(nlohmann::json& j, const IdentityReport& r);

struct CheckOptions {
    int nodes = kDefaultNodes;
    /// Fault injection: adds perturbation * exp(-x-y) to the Airy kernel.
    double kernel_perturbation = 0.0;
};

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kDefaultStep = 1e-4;

/// Finite-difference tolerance max(1e-6, 10 h^2).
double fd_tolerance(double h);

/// det(1 - B) = det(1 + B) <δ, (1 + B)^{-1} 1>.
IdentityReport check_eq3(double s, const CheckOptions& opts = {});

/// 2 Tr(D B) = -<δ, B δ> = -Ai(s), left side by quadrature of 2 Ai'(2x + s).
IdentityReport check_lemma1(double s, const CheckOptions& opts = {});

/// 2 Tr(D B^2) = -<δ, B^2 δ>, both sides by quadrature; tolerance 1e-8.
IdentityReport check_lemma1_squared(double s, const CheckOptions& opts = {});

/// D B phi = -B D phi - Ai(x + s) phi(0), compared at the nodes.
IdentityReport check_eq10(double s, const TestFunction& phi, const CheckOptions& opts = {});

/// Central difference in s of (1 + B)^{-1} phi against
/// (1 - B^2)^{-1} B D phi + (1 - B^2)^{-1} B δ <δ, (1 + B)^{-1} phi>.
IdentityReport check_lemma2(double s, const TestFunction& phi, double h = kDefaultStep,
                            const CheckOptions& opts = {});

/// Three reports, in order:
///  eq6:   -2 Tr((1 - B^2)^{-1} D B) = <δ, (1 - B^2)^{-1} B δ>                      (1e-8)
///  eq7:   d/ds <δ, (1 + B)^{-1} 1> = <δ, (1 - B^2)^{-1} B δ> <δ, (1 + B)^{-1} 1>   (FD)
///  eqFin: -2 Tr((1 - B^2)^{-1} D B) = d/ds ln <δ, (1 + B)^{-1} 1>                  (FD)
std::array<IdentityReport, 3> check_eqfin(double s, double h = kDefaultStep, const CheckOptions& opts = {});

/// ||B(s)|| < 1. lhs is the norm, rhs is 1, abs_diff is the excess max(0, lhs - 1).
IdentityReport check_norm_bound(double s, const CheckOptions& opts = {});

/// Names accepted in SuiteConfig::checks.
inline const std::vector<std::string> kAllChecks = {"eq3",   "lemma1", "lemma1_squared", "eq10",
                                                     "lemma2", "eqfin",  "norm_bound"};

/// Identities that need no check of their own, with the check that implies them.
struct CoveredIdentity {
    std::string identity;
    std::string covered_by;
};
inline const std::vector<CoveredIdentity> kCoveredIdentities = {{"eq4", "eq3"}};

struct SuiteConfig {
    std::vector<double> grid = {-8, -6, -4, -2, 0, 2, 4, 6};
    std::vector<std::string> checks = kAllChecks;
    std::vector<TestFunction> functions = {exp_decay(), gaussian()};
    double h = kDefaultStep;
    CheckOptions options;
};

/// Runs every selected check at every grid point (and test function, where the
/// check takes one). Unknown check names throw parameter_error.
std::vector<IdentityReport> run_suite(const SuiteConfig& config);

}  // namespace tw
