#include "landsea/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "landsea/errors.hpp"
#include "landsea/rng.hpp"

namespace landsea {

SelectionRule selection_rule_from_string(const std::string& s) {
    if (s == "min") return SelectionRule::min;
    if (s == "one_se") return SelectionRule::one_se;
    throw InputError("unknown selection rule \"" + s + "\" (expected min or one_se)");
}

FoldAssignment assign_folds(int n, int k, std::uint64_t seed) {
    if (k < 2) throw InputError("assign_folds: k must be >= 2");
    if (k > n) throw InputError("assign_folds: k must not exceed n");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(seed);
    rng.shuffle(perm);

    FoldAssignment fa;
    fa.k = k;
    fa.seed = seed;
    fa.fold_of.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        fa.fold_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i % k;
    return fa;
}

CvCurve cross_validate(const Eigen::MatrixXd& X_raw, const Eigen::VectorXd& y,
                       const CvConfig& cfg, double alpha) {
    const int n = static_cast<int>(X_raw.rows());
    if (y.size() != n) throw NumericError("cross_validate: y length mismatch");

    // Shared path from the full standardized data.
    StandardizedDesign full = standardize(X_raw);
    Eigen::VectorXd y_c = y.array() - y.mean();
    const double lmax = lambda_max(full, y_c, alpha);

    CvCurve curve;
    curve.lambdas.resize(static_cast<std::size_t>(cfg.n_lambda));
    const double log_lmax = std::log(lmax);
    const double log_lmin = std::log(lmax * cfg.eps_ratio);
    for (int i = 0; i < cfg.n_lambda; ++i)
        curve.lambdas[static_cast<std::size_t>(i)] =
            std::exp(log_lmax + (log_lmin - log_lmax) * i / (cfg.n_lambda - 1));
    curve.lambdas.front() = lmax;

    FoldAssignment folds = assign_folds(n, cfg.k, cfg.seed);

    // fold_err(f, l) = mean squared prediction error of fold f at lambda l
    Eigen::MatrixXd fold_err(cfg.k, cfg.n_lambda);
    for (int f = 0; f < cfg.k; ++f) {
        std::vector<int> train, test;
        for (int i = 0; i < n; ++i)
            (folds.fold_of[static_cast<std::size_t>(i)] == f ? test : train).push_back(i);

        Eigen::MatrixXd X_tr(static_cast<Eigen::Index>(train.size()), X_raw.cols());
        Eigen::VectorXd y_tr(static_cast<Eigen::Index>(train.size()));
        for (std::size_t r = 0; r < train.size(); ++r) {
            X_tr.row(static_cast<Eigen::Index>(r)) = X_raw.row(train[r]);
            y_tr[static_cast<Eigen::Index>(r)] = y[train[r]];
        }
        Eigen::MatrixXd X_te(static_cast<Eigen::Index>(test.size()), X_raw.cols());
        Eigen::VectorXd y_te(static_cast<Eigen::Index>(test.size()));
        for (std::size_t r = 0; r < test.size(); ++r) {
            X_te.row(static_cast<Eigen::Index>(r)) = X_raw.row(test[r]);
            y_te[static_cast<Eigen::Index>(r)] = y[test[r]];
        }

        StandardizedDesign d_tr = standardize(X_tr);  // throws if all-constant
        const Coefficients* warm = nullptr;
        Coefficients prev;
        for (int l = 0; l < cfg.n_lambda; ++l) {
            PenaltySpec pen{curve.lambdas[static_cast<std::size_t>(l)], alpha};
            Coefficients c = fit(d_tr, y_tr, pen, warm, cfg.convergence);
            fold_err(f, l) = (y_te - predict(d_tr, c, X_te)).squaredNorm() /
                             static_cast<double>(test.size());
            prev = std::move(c);
            warm = &prev;
        }
    }

    curve.mean_error.resize(static_cast<std::size_t>(cfg.n_lambda));
    curve.std_error.resize(static_cast<std::size_t>(cfg.n_lambda));
    for (int l = 0; l < cfg.n_lambda; ++l) {
        const double mean = fold_err.col(l).mean();
        const double var =
            (fold_err.col(l).array() - mean).square().sum() / (cfg.k - 1);
        curve.mean_error[static_cast<std::size_t>(l)] = mean;
        curve.std_error[static_cast<std::size_t>(l)] =
            std::sqrt(var / static_cast<double>(cfg.k));
    }
    curve.lambda_min = select_lambda(curve, SelectionRule::min);
    curve.lambda_1se = select_lambda(curve, SelectionRule::one_se);
    return curve;
}

double select_lambda(const CvCurve& curve, SelectionRule rule) {
    if (curve.lambdas.empty()) throw NumericError("select_lambda: empty curve");
    const std::size_t m = curve.lambdas.size();

    std::size_t idx_min = 0;
    double best = curve.mean_error[0];
    for (std::size_t l = 1; l < m; ++l)
        if (curve.mean_error[l] < best) {
            best = curve.mean_error[l];
            idx_min = l;
        }
    // Ties toward larger lambda (smaller index) within relative 1e-12.
    const double tie = best + std::abs(best) * 1e-12;
    for (std::size_t l = 0; l < idx_min; ++l)
        if (curve.mean_error[l] <= tie) {
            idx_min = l;
            break;
        }
    if (rule == SelectionRule::min) return curve.lambdas[idx_min];

    const double threshold = curve.mean_error[idx_min] + curve.std_error[idx_min];
    for (std::size_t l = 0; l < m; ++l)
        if (curve.mean_error[l] <= threshold) return curve.lambdas[l];
    return curve.lambdas[idx_min];  // unreachable
}

}  // namespace landsea
