#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tw/rng.hpp"

namespace tw {

struct GoeSampleSpec {
    int N = 200;
    std::size_t count = 1;
    std::uint64_t seed = 0;
};

/// Throws parameter_error unless N >= 2 and count >= 1.
void validate(const GoeSampleSpec& spec);

/// Symmetric N x N matrix with diagonal variance 2N and off-diagonal variance N,
/// i.e. density proportional to exp(-Tr H^2 / 4N). The spectrum edge sits at 2N.
Eigen::MatrixXd draw_goe(int N, Engine& rng);

/// Edge-scaled largest eigenvalue (E1 - 2N) / N^{1/3} of one matrix.
double goe_xi(const Eigen::MatrixXd& h);

/// count samples of (E1 - 2N) / N^{1/3}. Sample i uses substream_seed(seed, i).
std::vector<double> sample_goe_xi(const GoeSampleSpec& spec);

}  // namespace tw
