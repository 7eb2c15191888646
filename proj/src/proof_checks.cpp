#include "tw/proof_checks.hpp"

#include <algorithm>
#include <cmath>

#include "tw/errors.hpp"
#include "tw/operator.hpp"
#include "tw/quadrature.hpp"
#include "tw/specfun.hpp"

namespace tw {

TestFunction exp_decay() {
    return {"exp(-x)", [](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); }};
}

TestFunction gaussian() {
    return {"exp(-x^2)", [](double x) { return std::exp(-x * x); },
            [](double x) { return -2.0 * x * std::exp(-x * x); }};
}

TestFunction zero_function() {
    return {"0", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

void to_json(nlohmann::json& j, const IdentityReport& r) {
    j = nlohmann::json{{"name", r.name},         {"s", r.s},
                       {"lhs", r.lhs},           {"rhs", r.rhs},
                       {"abs_diff", r.abs_diff}, {"tolerance", r.tolerance},
                       {"passed", r.passed}};
}

double fd_tolerance(double h) { return std::max(1e-6, 10.0 * h * h); }

namespace {

// The identities are evaluated in long double through the eigendecomposition of
// the symmetric Nystrom matrix. Near s = -8 the top eigenvalues of B sit within
// 1e-8 of +-1, so (1 - B^2)^{-1} amplifies LU rounding far beyond the
// tolerances; applying 1/(1 - lambda^2) mode by mode does not.
using Real = long double;
using MatrixL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

IdentityReport make_report(std::string name, double s, Real lhs, Real rhs, double tolerance) {
    const double diff = static_cast<double>(std::fabs(lhs - rhs));
    return {std::move(name), s, static_cast<double>(lhs), static_cast<double>(rhs), diff, tolerance,
            diff <= tolerance};
}

IdentityReport make_vector_report(std::string name, double s, const VectorL& lhs, const VectorL& rhs,
                                  double tolerance) {
    const double diff = static_cast<double>((lhs - rhs).cwiseAbs().maxCoeff());
    return {std::move(name),
            s,
            static_cast<double>(lhs.cwiseAbs().maxCoeff()),
            static_cast<double>(rhs.cwiseAbs().maxCoeff()),
            diff,
            tolerance,
            diff <= tolerance};
}

void check_finite_step(double h) {
    if (!(h >= 1e-6 && h <= 1e-3)) throw parameter_error("finite-difference step must lie in [1e-6, 1e-3]");
}

// Rule on (0, L(s)) plus square-root weights; fixed for s - h, s, s + h.
struct Grid {
    ExtendedRule rule;
    VectorL sw;
    Real perturbation;

    Eigen::Index size() const { return sw.size(); }
};

Grid make_grid(double s, const CheckOptions& opts) {
    if (opts.nodes < 8) throw parameter_error("proof checks need at least 8 nodes");
    Grid g{gauss_legendre_extended(opts.nodes, 0.0L, truncation_length(s)), {}, opts.kernel_perturbation};
    g.sw.resize(opts.nodes);
    for (int i = 0; i < opts.nodes; ++i) g.sw[i] = std::sqrt(g.rule.weights[i]);
    return g;
}

// Weighted Nystrom matrix of Ai(x + y + s) (+ perturbation), or of Ai'(x + y + s).
MatrixL kernel_matrix(const Grid& g, Real s, bool derivative) {
    const Eigen::Index n = g.size();
    MatrixL m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const Real x = g.rule.nodes[i];
            const Real y = g.rule.nodes[j];
            const AiryValueExtended a = airy_extended(x + y + s);
            Real k = derivative ? a.ai_prime : a.ai;
            if (!derivative) k += g.perturbation * std::exp(-x - y);
            m(i, j) = m(j, i) = g.sw[i] * k * g.sw[j];
        }
    return m;
}

// Kernel row k(0, x_j) in the weighted basis: the discrete B delta.
VectorL delta_row(const Grid& g, Real s) {
    VectorL r(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) {
        const Real x = g.rule.nodes[j];
        r[j] = g.sw[j] * (airy_extended(x + s).ai + g.perturbation * std::exp(-x));
    }
    return r;
}

Real kernel_at_origin(const Grid& g, Real s) { return airy_extended(s).ai + g.perturbation; }

VectorL weighted_values(const Grid& g, const std::function<double(double)>& f) {
    VectorL v(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i)
        v[i] = g.sw[i] * f(static_cast<double>(g.rule.nodes[i]));
    return v;
}

VectorL unweighted(const Grid& g, const VectorL& v) { return v.cwiseQuotient(g.sw); }

struct Spectrum {
    VectorL lambda;
    MatrixL vectors;

    // f(B) x for a scalar function f of the eigenvalue.
    template <class F>
    VectorL apply(F f, const VectorL& x) const {
        VectorL c = vectors.transpose() * x;
        for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= f(lambda[k]);
        return vectors * c;
    }
};

Spectrum spectrum(const MatrixL& m) {
    const Eigen::SelfAdjointEigenSolver<MatrixL> es(m);
    if (es.info() != Eigen::Success) throw numerical_error("eigendecomposition of the Airy operator failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Real inv_plus(Real l) { return 1 / (1 + l); }
Real inv_one_minus_sq(Real l) { return 1 / (1 - l * l); }
Real b_over_one_minus_sq(Real l) { return l / (1 - l * l); }

// <δ, (1 + B(s))^{-1} 1> on the grid.
Real delta_resolvent_one(const Grid& g, Real s) {
    const Spectrum sp = spectrum(kernel_matrix(g, s, false));
    return 1 - delta_row(g, s).dot(sp.apply(inv_plus, g.sw));
}

// Node values of (1 + B(s))^{-1} phi on the grid.
VectorL resolvent_apply(const Grid& g, Real s, const VectorL& phi_w) {
    return unweighted(g, spectrum(kernel_matrix(g, s, false)).apply(inv_plus, phi_w));
}

}  // namespace

IdentityReport check_eq3(double s, const CheckOptions& opts) {
    const Grid g = make_grid(s, opts);
    const Spectrum sp = spectrum(kernel_matrix(g, s, false));
    Real det_minus = 1;
    Real det_plus = 1;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        det_minus *= 1 - sp.lambda[k];
        det_plus *= 1 + sp.lambda[k];
    }
    const Real bracket = 1 - delta_row(g, s).dot(sp.apply(inv_plus, g.sw));
    return make_report("eq3", s, det_minus, det_plus * bracket, kExactTolerance);
}

IdentityReport check_lemma1(double s, const CheckOptions& opts) {
    const Grid g = make_grid(s, opts);
    Real lhs = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i)
        lhs += 2 * g.rule.weights[i] * airy_extended(2 * g.rule.nodes[i] + s).ai_prime;
    return make_report("lemma1", s, lhs, -kernel_at_origin(g, s), kExactTolerance);
}

IdentityReport check_lemma1_squared(double s, const CheckOptions& opts) {
    const Grid g = make_grid(s, opts);
    const Real lhs = 2 * (kernel_matrix(g, s, true) * kernel_matrix(g, s, false)).trace();
    const Real rhs = -delta_row(g, s).squaredNorm();
    return make_report("lemma1_B2", s, lhs, rhs, 1e-8);
}

IdentityReport check_eq10(double s, const TestFunction& phi, const CheckOptions& opts) {
    const Grid g = make_grid(s, opts);
    const VectorL f = weighted_values(g, phi.value);
    const VectorL df = weighted_values(g, phi.derivative);
    const VectorL lhs = unweighted(g, kernel_matrix(g, s, true) * f);
    const VectorL rhs = -unweighted(g, kernel_matrix(g, s, false) * df + delta_row(g, s) * Real(phi.value(0.0)));
    return make_vector_report("eq10[" + phi.name + "]", s, lhs, rhs, kExactTolerance);
}

IdentityReport check_lemma2(double s, const TestFunction& phi, double h, const CheckOptions& opts) {
    check_finite_step(h);
    const Grid g = make_grid(s, opts);
    const VectorL f = weighted_values(g, phi.value);
    const Real hl = h;
    const VectorL lhs = (resolvent_apply(g, s + hl, f) - resolvent_apply(g, s - hl, f)) / (2 * hl);

    const Spectrum sp = spectrum(kernel_matrix(g, s, false));
    const VectorL b_delta = delta_row(g, s);
    const VectorL term1 = sp.apply(b_over_one_minus_sq, weighted_values(g, phi.derivative));
    const Real u0 = phi.value(0.0) - b_delta.dot(sp.apply(inv_plus, f));
    const VectorL term2 = sp.apply(inv_one_minus_sq, b_delta);
    const VectorL rhs = unweighted(g, term1 + u0 * term2);
    return make_vector_report("lemma2[" + phi.name + "]", s, lhs, rhs, fd_tolerance(h));
}

std::array<IdentityReport, 3> check_eqfin(double s, double h, const CheckOptions& opts) {
    check_finite_step(h);
    const Grid g = make_grid(s, opts);
    const Spectrum sp = spectrum(kernel_matrix(g, s, false));
    const MatrixL db = kernel_matrix(g, s, true);
    const VectorL b_delta = delta_row(g, s);

    // -2 Tr((1 - B^2)^{-1} D B) and <δ, Bδ> + <Bδ, B (1 - B^2)^{-1} Bδ>, mode by mode.
    Real trace_term = 0;
    Real delta_term = kernel_at_origin(g, s);
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const auto v = sp.vectors.col(k);
        const Real l = sp.lambda[k];
        trace_term -= 2 * v.dot(db * v) / (1 - l * l);
        const Real c = v.dot(b_delta);
        delta_term += c * c * l / (1 - l * l);
    }

    const Real g0 = 1 - b_delta.dot(sp.apply(inv_plus, g.sw));
    const Real hl = h;
    const Real derivative = (delta_resolvent_one(g, s + hl) - delta_resolvent_one(g, s - hl)) / (2 * hl);
    const double tol = fd_tolerance(h);
    return {make_report("eq6", s, trace_term, delta_term, 1e-8),
            make_report("eq7", s, derivative, delta_term * g0, tol),
            make_report("eqFin", s, trace_term, derivative / g0, tol)};
}

IdentityReport check_norm_bound(double s, const CheckOptions& opts) {
    const double norm = spectral_norm(assemble(airy_kernel(s, opts.kernel_perturbation), opts.nodes));
    const double excess = std::max(0.0, norm - 1.0);
    return {"norm_bound", s, norm, 1.0, excess, 0.0, norm < 1.0};
}

std::vector<IdentityReport> run_suite(const SuiteConfig& config) {
    for (const auto& name : config.checks)
        if (std::find(kAllChecks.begin(), kAllChecks.end(), name) == kAllChecks.end())
            throw parameter_error("run_suite: unknown check '" + name + "'");
    auto selected = [&](const char* name) {
        return std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
    };

    std::vector<IdentityReport> out;
    for (double s : config.grid) {
        if (selected("eq3")) out.push_back(check_eq3(s, config.options));
        if (selected("lemma1")) out.push_back(check_lemma1(s, config.options));
        if (selected("lemma1_squared")) out.push_back(check_lemma1_squared(s, config.options));
        for (const auto& phi : config.functions) {
            if (selected("eq10")) out.push_back(check_eq10(s, phi, config.options));
            if (selected("lemma2")) out.push_back(check_lemma2(s, phi, config.h, config.options));
        }
        if (selected("eqfin"))
            for (auto& r : check_eqfin(s, config.h, config.options)) out.push_back(std::move(r));
        if (selected("norm_bound")) out.push_back(check_norm_bound(s, config.options));
    }
    return out;
}

}  // namespace tw
