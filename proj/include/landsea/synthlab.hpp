#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "landsea/solver.hpp"

namespace landsea {

struct SynthSpec {
    int n = 47;
    int p = 448;
    int s = 0;                   // true support size
    double beta_magnitude = 1.0;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
};

struct SynthInstance {
    Eigen::MatrixXd X;               // n x p, iid standard normal
    Eigen::VectorXd true_beta;       // exactly s entries of +-beta_magnitude
    Eigen::VectorXd y;               // X * true_beta + noise
    std::vector<int> true_support;   // ascending indices
};

// Deterministic in the seed. Draw order from one SplitMix64 stream:
// X row-major, then a Fisher-Yates shuffle of 0..p-1 for the support, then
// one uniform per support index for the sign, then n noise normals.
SynthInstance generate(const SynthSpec& spec);

// Normal-equations OLS by a dense LDLT solve; requires n > p and full column
// rank. Deliberately shares no code with the coordinate-descent solver.
Eigen::VectorXd ols_oracle(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// Brute-force minimizer of the penalized objective on standardized designs
// with p <= 3: coarse grid over a data-derived box, then three refinement
// rounds shrinking the step by 20x each, final step <= 1e-4. The response is
// centered internally, matching the solver's unpenalized intercept.
Eigen::VectorXd lasso_grid_oracle(const StandardizedDesign& design,
                                  const Eigen::VectorXd& y, const PenaltySpec& penalty);

}  // namespace landsea
