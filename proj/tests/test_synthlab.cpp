#include <doctest.h>

#include <cmath>

#include "landsea/solver.hpp"
#include "landsea/synthlab.hpp"

using namespace landsea;

TEST_CASE("generate is deterministic and structurally correct") {
    SynthSpec spec{47, 448, 5, 3.0, 0.5, 11};
    SynthInstance a = generate(spec);
    SynthInstance b = generate(spec);
    CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.true_support == b.true_support);

    CHECK(a.X.rows() == 47);
    CHECK(a.X.cols() == 448);
    CHECK(a.true_support.size() == 5);
    int nz = 0;
    for (int j = 0; j < 448; ++j)
        if (a.true_beta[j] != 0.0) {
            CHECK(std::abs(a.true_beta[j]) == 3.0);
            ++nz;
        }
    CHECK(nz == 5);

    SynthInstance c = generate({47, 448, 5, 3.0, 0.5, 12});
    CHECK((a.y - c.y).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("no signal and no noise gives a zero response") {
    SynthInstance inst = generate({10, 5, 0, 0.0, 0.0, 1});
    CHECK(inst.y.cwiseAbs().maxCoeff() == 0.0);
    CHECK(inst.true_support.empty());
}

TEST_CASE("ols_oracle solves small systems and self-certifies") {
    // one standardized column: coefficient = x'y / n
    Eigen::MatrixXd X(2, 1);
    X << 1.0, -1.0;
    Eigen::VectorXd y(2);
    y << 2.0, -2.0;
    Eigen::VectorXd b = ols_oracle(X, y);
    CHECK(b[0] == doctest::Approx(X.col(0).dot(y) / 2.0));

    SynthInstance inst = generate({20, 3, 3, 1.0, 0.5, 2});
    Eigen::VectorXd beta = ols_oracle(inst.X, inst.y);
    Eigen::VectorXd resid = inst.y - inst.X * beta;
    CHECK((inst.X.transpose() * resid).cwiseAbs().maxCoeff() < 1e-8);

    // y orthogonal to all columns -> zero coefficients
    Eigen::MatrixXd Xo(4, 1);
    Xo << 1, 1, 1, 1;
    Eigen::VectorXd yo(4);
    yo << 1, -1, 1, -1;
    CHECK(ols_oracle(Xo, yo).cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(ols_oracle(Eigen::MatrixXd::Ones(3, 3), Eigen::VectorXd::Ones(3)),
                    NumericError);
    Eigen::MatrixXd rank_def(4, 2);
    rank_def << 1, 2, 2, 4, 3, 6, 4, 8;
    CHECK_THROWS_AS(ols_oracle(rank_def, Eigen::VectorXd::Ones(4)), NumericError);
}

TEST_CASE("grid oracle reduces to known solutions") {
    SynthInstance inst = generate({25, 3, 2, 1.0, 0.3, 9});
    StandardizedDesign d = standardize(inst.X);
    Eigen::VectorXd y_c = inst.y.array() - inst.y.mean();

    // lambda >= lambda_max -> zero vector
    double lmax = lambda_max(d, y_c, 1.0);
    CHECK(lasso_grid_oracle(d, inst.y, {lmax * 1.01, 1.0}).cwiseAbs().maxCoeff() == 0.0);

    // lambda = 0 -> OLS
    Eigen::VectorXd ols = ols_oracle(d.X_std, y_c);
    CHECK((lasso_grid_oracle(d, inst.y, {0.0, 1.0}) - ols).cwiseAbs().maxCoeff() < 2e-4);
}

TEST_CASE("solver agrees with the grid oracle across seeded instances") {
    // 50 instances x 5 lambdas is the acceptance-scale sweep; keep a smaller
    // but structurally identical version in the unit suite.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SynthInstance inst = generate({20, 3, 2, 1.5, 0.4, seed});
        StandardizedDesign d = standardize(inst.X);
        Eigen::VectorXd y_c = inst.y.array() - inst.y.mean();
        double lmax = lambda_max(d, y_c, 1.0);
        for (double frac : {0.9, 0.5, 0.2, 0.05, 0.0}) {
            PenaltySpec pen{frac * lmax, 1.0};
            Coefficients c = fit(d, inst.y, pen, nullptr, {});
            Eigen::VectorXd oracle = lasso_grid_oracle(d, inst.y, pen);
            CHECK((c.beta_std - oracle).cwiseAbs().maxCoeff() < 1e-3);
            CHECK(objective_value(d, inst.y, c.beta_std, pen) <=
                  objective_value(d, inst.y, oracle, pen) + 1e-8);
        }
    }
}
