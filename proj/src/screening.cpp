#include "landsea/screening.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "landsea/rng.hpp"

namespace landsea {

namespace {

ResponseResult screen_one(const AlignedDataset& data, const ScreeningConfig& cfg,
                          Eigen::Index response_idx) {
    const std::string& name = data.response_names[static_cast<std::size_t>(response_idx)];
    Eigen::VectorXd y = data.Y.col(response_idx);

    CvConfig cv = cfg.cv;
    cv.seed = cfg.cv.seed ^ fnv1a64(name);
    CvCurve curve = cross_validate(data.X, y, cv, cfg.alpha);

    ResponseResult res;
    res.response_name = name;
    res.local_factor = data.metadata.local_factor.at(name);
    res.rule_used = cv.rule;
    res.lambda_selected = select_lambda(curve, cv.rule);

    // Refit on the full data by walking the shared path down to the selected
    // lambda with warm starts; the selected lambda is a path member.
    StandardizedDesign design = standardize(data.X, data.predictor_names);
    Coefficients coef;
    const Coefficients* warm = nullptr;
    for (double lam : curve.lambdas) {
        coef = fit(design, y, PenaltySpec{lam, cfg.alpha}, warm, cv.convergence);
        warm = &coef;
        if (lam == res.lambda_selected) break;
    }
    res.converged = coef.converged;
    res.n_nonzero = count_nonzero(coef);
    res.kkt_max_violation =
        check_kkt(design, y, coef, PenaltySpec{res.lambda_selected, cfg.alpha}, 1e-6)
            .max_violation;
    for (Eigen::Index k = 0; k < coef.beta_std.size(); ++k)
        if (coef.beta_std[k] != 0.0) {
            const int j = design.retained[static_cast<std::size_t>(k)];
            res.selected.push_back({data.predictor_names[static_cast<std::size_t>(j)],
                                    coef.beta_raw[j], coef.beta_std[k]});
        }
    return res;
}

}  // namespace

ScreeningReport screen_all(const AlignedDataset& data, const ScreeningConfig& cfg) {
    const Eigen::Index m = data.Y.cols();
    ScreeningReport report;
    report.config = cfg;
    report.per_response.resize(static_cast<std::size_t>(m));

    const int workers = std::max(1, std::min(cfg.parallelism, static_cast<int>(m)));
    if (workers == 1) {
        for (Eigen::Index r = 0; r < m; ++r)
            report.per_response[static_cast<std::size_t>(r)] = screen_one(data, cfg, r);
    } else {
        std::atomic<Eigen::Index> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                try {
                    for (Eigen::Index r = next.fetch_add(1); r < m; r = next.fetch_add(1))
                        report.per_response[static_cast<std::size_t>(r)] =
                            screen_one(data, cfg, r);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    report.predictor_counts =
        aggregate_predictor_counts(report.per_response, data.predictor_names);
    return report;
}

std::map<std::string, int> aggregate_predictor_counts(
    const std::vector<ResponseResult>& results,
    const std::vector<std::string>& predictor_names) {
    std::map<std::string, int> counts;
    for (const auto& name : predictor_names) counts[name] = 0;
    for (const auto& r : results)
        for (const auto& s : r.selected) counts[s.name] += 1;
    return counts;
}

}  // namespace landsea
