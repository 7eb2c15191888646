#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tw {

/// KS tolerance used for the Monte Carlo acceptance checks against f1.
inline constexpr double kKsTolerance = 0.08;

/// Right-continuous empirical CDF of a finite sample.
class EmpiricalCdf {
public:
    /// Throws parameter_error on non-finite samples. An empty sample is allowed
    /// here but rejected by ks_distance.
    explicit EmpiricalCdf(std::vector<double> samples);

    /// Fraction of samples <= x.
    double operator()(double x) const;
    /// Fraction of samples < x.
    double left_limit(double x) const;

    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

private:
    std::vector<double> samples_;
};

/// sup |ecdf - F| over the sample points (both sides of each jump) and the grid.
/// Throws parameter_error on an empty sample or if F decreases along the grid.
double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& F,
                   std::span<const double> grid = {});

/// sup_x |ecdf_a(x) - ecdf_b(x)|. Throws parameter_error if either sample is empty.
double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// f1 extended to the whole line: 0 below s = -10 and 1 above s = 10, where it
/// is within 1e-30 of those limits.
double f1_reference(double s);

}  // namespace tw
