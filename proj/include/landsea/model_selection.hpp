#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "landsea/solver.hpp"

namespace landsea {

enum class SelectionRule { min, one_se };

inline const char* to_string(SelectionRule r) {
    return r == SelectionRule::min ? "min" : "one_se";
}

SelectionRule selection_rule_from_string(const std::string& s);

// Deterministic function of (n, k, seed): a SplitMix64-seeded Fisher-Yates
// permutation of 0..n-1 dealt round-robin into k folds.
struct FoldAssignment {
    std::vector<int> fold_of;  // length n, values 0..k-1
    int k = 0;
    std::uint64_t seed = 0;
};

struct CvConfig {
    int k = 10;
    std::uint64_t seed = 0;
    SelectionRule rule = SelectionRule::min;
    int n_lambda = 100;
    double eps_ratio = 0.01;
    ConvergenceConfig convergence;
};

struct CvCurve {
    std::vector<double> lambdas;     // descending
    std::vector<double> mean_error;  // mean over folds of fold-mean squared error
    std::vector<double> std_error;   // sd of the k fold means / sqrt(k)
    double lambda_min = 0.0;
    double lambda_1se = 0.0;
};

FoldAssignment assign_folds(int n, int k, std::uint64_t seed);

// K-fold CV over a shared lambda path computed from the full standardized
// data. Each fold re-standardizes its training rows; validation error is
// measured on the raw held-out rows.
CvCurve cross_validate(const Eigen::MatrixXd& X_raw, const Eigen::VectorXd& y,
                       const CvConfig& cfg, double alpha);

// rule=min: largest lambda attaining the minimum mean error (relative tie
// tolerance 1e-12). rule=one_se: largest lambda whose mean error is within
// one standard error of that minimum.
double select_lambda(const CvCurve& curve, SelectionRule rule);

}  // namespace landsea
