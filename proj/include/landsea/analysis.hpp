#pragma once

#include <map>
#include <string>
#include <vector>

#include "landsea/screening.hpp"

namespace landsea {

struct CountFactorPair {
    int local_factor = 0;
    int n_nonzero = 0;
    std::string response_name;
};

struct CountFactorPairs {
    std::vector<CountFactorPair> pairs;
};

struct RegressionSummary {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;  // two-sided, t distribution with n-2 df
    int n = 0;
    std::map<int, double> per_factor_means;
};

// Regularized incomplete beta I_x(a, b), accurate to about 1e-10.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Ordinary least squares of nonzero count on local factor. Degenerate flat
// input (zero slope and zero slope error) reports p = 1.
RegressionSummary regress_counts_on_factor(const CountFactorPairs& pairs);

// One pair per response, report order preserved. Errors on an empty report.
CountFactorPairs extract_pairs(const ScreeningReport& report);

// pairs CSV: header `response,local_factor,n_nonzero` (the Table 1 fixture shape).
CountFactorPairs load_pairs(const std::string& path);

}  // namespace landsea
