#include "landsea/synthlab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "landsea/errors.hpp"
#include "landsea/rng.hpp"

namespace landsea {

SynthInstance generate(const SynthSpec& spec) {
    if (spec.n < 2 || spec.p < 1 || spec.s < 0 || spec.s > spec.p || spec.noise_sd < 0.0)
        throw InputError("invalid synthetic instance spec");

    SplitMix64 rng(spec.seed);
    SynthInstance inst;
    inst.X.resize(spec.n, spec.p);
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.p; ++j) inst.X(i, j) = rng.next_normal();

    std::vector<int> order(static_cast<std::size_t>(spec.p));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    inst.true_support.assign(order.begin(), order.begin() + spec.s);
    std::sort(inst.true_support.begin(), inst.true_support.end());

    inst.true_beta = Eigen::VectorXd::Zero(spec.p);
    for (int j : inst.true_support)
        inst.true_beta[j] = rng.next_uniform() < 0.5 ? spec.beta_magnitude
                                                     : -spec.beta_magnitude;

    inst.y = inst.X * inst.true_beta;
    for (int i = 0; i < spec.n; ++i) inst.y[i] += spec.noise_sd * rng.next_normal();
    return inst;
}

Eigen::VectorXd ols_oracle(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() <= X.cols())
        throw NumericError("ols_oracle requires n > p");
    Eigen::MatrixXd gram = X.transpose() * X;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible())
        throw NumericError("ols_oracle: rank-deficient design");
    return gram.ldlt().solve(X.transpose() * y);
}

Eigen::VectorXd lasso_grid_oracle(const StandardizedDesign& design,
                                  const Eigen::VectorXd& y, const PenaltySpec& penalty) {
    const Eigen::Index p = design.X_std.cols();
    if (p > 3) throw NumericError("lasso_grid_oracle only supports p <= 3");
    const double n = static_cast<double>(design.n());

    Eigen::VectorXd y_c = y.array() - y.mean();
    const Eigen::MatrixXd gram = design.X_std.transpose() * design.X_std;
    const Eigen::VectorXd xty = design.X_std.transpose() * y_c;
    const double yty = y_c.squaredNorm();

    auto objective = [&](const Eigen::VectorXd& b) {
        const double rss = yty - 2.0 * b.dot(xty) + b.dot(gram * b);
        return rss / (2.0 * n) +
               penalty.lambda * (penalty.alpha * b.lpNorm<1>() +
                                 0.5 * (1.0 - penalty.alpha) * b.squaredNorm());
    };

    // Box half-width from the unpenalized solution when available; the lasso
    // solution cannot have larger objective than OLS, so twice the OLS
    // magnitude (plus slack) contains the minimizer.
    double bound = 1.0;
    if (design.X_std.rows() > p) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        if (lu.isInvertible()) {
            Eigen::VectorXd ols = gram.ldlt().solve(xty);
            bound = std::max(1.0, 2.0 * ols.cwiseAbs().maxCoeff() + 0.5);
        } else {
            bound = std::max(1.0, xty.cwiseAbs().maxCoeff() / n * 4.0 + 1.0);
        }
    }

    // Coarse pass at step <= 0.25.
    const int half = static_cast<int>(std::ceil(bound / 0.25));
    double step = bound / half;
    Eigen::VectorXd best = Eigen::VectorXd::Zero(p);
    double best_obj = objective(best);
    Eigen::VectorXd candidate(p);

    auto search_around = [&](const Eigen::VectorXd& center, double st, int reach) {
        std::array<int, 3> idx{0, 0, 0};
        const int lo = -reach, hi = reach;
        for (idx[0] = lo; idx[0] <= hi; ++idx[0]) {
            candidate[0] = center[0] + st * idx[0];
            for (idx[1] = (p > 1 ? lo : 0); idx[1] <= (p > 1 ? hi : 0); ++idx[1]) {
                if (p > 1) candidate[1] = center[1] + st * idx[1];
                for (idx[2] = (p > 2 ? lo : 0); idx[2] <= (p > 2 ? hi : 0); ++idx[2]) {
                    if (p > 2) candidate[2] = center[2] + st * idx[2];
                    const double obj = objective(candidate);
                    if (obj < best_obj) {
                        best_obj = obj;
                        best = candidate;
                    }
                }
            }
        }
    };

    search_around(Eigen::VectorXd::Zero(p), step, half);
    for (int round = 0; round < 3; ++round) {
        const double fine = step / 20.0;
        search_around(best, fine, 40);  // covers +-2*step around the incumbent
        step = fine;
    }
    // Snap near-zero grid coordinates so exact-sparsity comparisons work.
    for (Eigen::Index j = 0; j < p; ++j)
        if (std::abs(best[j]) < 1e-12) best[j] = 0.0;
    return best;
}

}  // namespace landsea
