#include "tw/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tw/distributions.hpp"
#include "tw/errors.hpp"

namespace tw {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
    for (double x : samples_)
        if (!std::isfinite(x)) throw parameter_error("EmpiricalCdf: non-finite sample");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
    if (samples_.empty()) return 0.0;
    const auto k = std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
    return static_cast<double>(k) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::left_limit(double x) const {
    if (samples_.empty()) return 0.0;
    const auto k = std::lower_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
    return static_cast<double>(k) / static_cast<double>(samples_.size());
}

double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& F,
                   std::span<const double> grid) {
    if (ecdf.empty()) throw parameter_error("ks_distance: empty sample");
    double d = 0.0;
    double previous = -std::numeric_limits<double>::infinity();
    for (double x : grid) {
        const double f = F(x);
        if (f < previous - 1e-12) throw parameter_error("ks_distance: reference CDF decreases on the grid");
        previous = std::max(previous, f);
        d = std::max(d, std::fabs(ecdf(x) - f));
    }
    const auto& xs = ecdf.samples();
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size();) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        const double f = F(xs[i]);
        d = std::max({d, std::fabs(static_cast<double>(j) / n - f), std::fabs(f - static_cast<double>(i) / n)});
        i = j;
    }
    return d;
}

double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    if (a.empty() || b.empty()) throw parameter_error("ks_two_sample: empty sample");
    double d = 0.0;
    for (double x : a.samples()) d = std::max(d, std::fabs(a(x) - b(x)));
    for (double x : b.samples()) d = std::max(d, std::fabs(a(x) - b(x)));
    return d;
}

double f1_reference(double s) {
    if (std::isnan(s)) throw domain_error("f1_reference: NaN argument");
    if (s < -10.0) return 0.0;
    if (s > 10.0) return 1.0;
    return f1(s);
}

}  // namespace tw
