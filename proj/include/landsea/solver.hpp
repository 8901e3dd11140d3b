#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "landsea/dataset.hpp"

namespace landsea {

// alpha = 1 is the pure l1 penalty; alpha < 1 mixes in an l2 term.
struct PenaltySpec {
    double lambda = 0.0;
    double alpha = 1.0;
};

struct ConvergenceConfig {
    double tol = 1e-7;      // max abs coefficient change per sweep, standardized scale
    int max_sweeps = 100000;
};

struct Coefficients {
    double intercept = 0.0;      // mean of y; the model predicts on centered columns
    Eigen::VectorXd beta_std;    // length p' (standardized columns)
    Eigen::VectorXd beta_raw;    // length p, excluded columns fixed at 0
    int sweeps_used = 0;
    bool converged = false;
};

struct PathResult {
    std::vector<double> lambdas;  // strictly decreasing, lambdas[0] = lambda_max
    std::vector<Coefficients> coefficients_per_lambda;
    std::vector<int> nonzero_counts;
};

struct KktReport {
    double max_violation = 0.0;
    std::vector<int> offending_columns;  // standardized-column indices over kkt_tol
};

// Proximal operator of the l1 penalty: sign(z) * max(|z| - gamma, 0).
// Returns an exact 0.0 inside the threshold.
inline double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

// Smallest penalty whose solution is the all-zero vector:
// max_j |x_j' y_c| / (n * alpha), nudged up by one part in 1e12 so that a fit
// at the returned value lands on exact zeros despite rounding.
double lambda_max(const StandardizedDesign& design, const Eigen::VectorXd& y_centered,
                  double alpha);

// Minimizes (1/2n)||y_c - X b||^2 + lambda*(alpha*||b||_1 + (1-alpha)/2*||b||^2)
// by cyclic coordinate descent with soft-thresholding; zeros are bit-exact.
// init, when given, warm-starts beta_std. Non-convergence is reported through
// the converged flag, not an exception.
Coefficients fit(const StandardizedDesign& design, const Eigen::VectorXd& y,
                 const PenaltySpec& penalty, const Coefficients* init,
                 const ConvergenceConfig& config);

// Log-spaced path from lambda_max down to eps_ratio * lambda_max, each fit
// warm-started from the previous one.
PathResult fit_path(const StandardizedDesign& design, const Eigen::VectorXd& y,
                    double alpha, int n_lambda, double eps_ratio,
                    const ConvergenceConfig& config);

// First-order optimality certificate. With g_j = (1/n) x_j'(y_c - X b):
// b_j = 0 requires |g_j| <= lambda*alpha; b_j != 0 requires
// g_j = lambda*alpha*sign(b_j) + lambda*(1-alpha)*b_j, both within kkt_tol.
KktReport check_kkt(const StandardizedDesign& design, const Eigen::VectorXd& y,
                    const Coefficients& coef, const PenaltySpec& penalty,
                    double kkt_tol);

// Penalized objective at beta_std, for descent tests and oracles.
double objective_value(const StandardizedDesign& design, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta_std, const PenaltySpec& penalty);

// Prediction on raw-scale rows (same column layout as the matrix that was
// standardized): intercept + sum_j beta_raw[j] * (x[j] - mean[j]).
Eigen::VectorXd predict(const StandardizedDesign& design, const Coefficients& coef,
                        const Eigen::MatrixXd& X_raw);

// Number of exactly-nonzero standardized coefficients; the intercept never counts.
int count_nonzero(const Coefficients& coef);

}  // namespace landsea
