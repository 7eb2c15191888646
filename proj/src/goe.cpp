#include "tw/goe.hpp"

#include <cmath>
#include <string>

#include "parallel.hpp"
#include "tw/errors.hpp"
#include "tw/symmetric_eigen.hpp"

namespace tw {

void validate(const GoeSampleSpec& spec) {
    if (spec.N < 2) throw parameter_error("GOE dimension must be at least 2");
    if (spec.count < 1) throw parameter_error("GOE sample count must be at least 1");
}

Eigen::MatrixXd draw_goe(int N, Engine& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double off = std::sqrt(static_cast<double>(N));
    const double diag = std::sqrt(2.0 * N);
    Eigen::MatrixXd h(N, N);
    for (int i = 0; i < N; ++i) {
        h(i, i) = diag * normal(rng);
        for (int j = i + 1; j < N; ++j) h(i, j) = h(j, i) = off * normal(rng);
    }
    return h;
}

double goe_xi(const Eigen::MatrixXd& h) {
    const double n = static_cast<double>(h.rows());
    return (largest_symmetric_eigenvalue(h) - 2.0 * n) / std::cbrt(n);
}

std::vector<double> sample_goe_xi(const GoeSampleSpec& spec) {
    validate(spec);
    std::vector<double> out(spec.count);
    detail::parallel_for(spec.count, [&](std::size_t i) {
        Engine rng = make_engine(substream_seed(spec.seed, i));
        try {
            out[i] = goe_xi(draw_goe(spec.N, rng));
        } catch (const numerical_error& e) {
            throw numerical_error("GOE sample " + std::to_string(i) + ": " + e.what());
        }
        if (!std::isfinite(out[i])) throw numerical_error("GOE sample " + std::to_string(i) + " is not finite");
    });
    return out;
}

}  // namespace tw
