#pragma once

#include <map>
#include <string>
#include <vector>

#include "landsea/dataset.hpp"
#include "landsea/model_selection.hpp"

namespace landsea {

struct SelectedPredictor {
    std::string name;
    double coefficient_raw = 0.0;
    double coefficient_std = 0.0;
};

struct ResponseResult {
    std::string response_name;
    int local_factor = 0;
    double lambda_selected = 0.0;
    SelectionRule rule_used = SelectionRule::min;
    int n_nonzero = 0;
    std::vector<SelectedPredictor> selected;
    bool converged = true;
    double kkt_max_violation = 0.0;
};

struct ScreeningConfig {
    CvConfig cv;
    double alpha = 1.0;
    int parallelism = 1;
};

struct ScreeningReport {
    std::vector<ResponseResult> per_response;            // input order
    std::map<std::string, int> predictor_counts;         // every predictor, 0 allowed
    ScreeningConfig config;                              // echoed into outputs
};

// One CV-tuned fit per response: cross-validate, pick lambda by the rule,
// refit on the full data at that lambda, record the nonzero set. The seed for
// response r is cv.seed XOR fnv1a64(r), so per-response results do not depend
// on which other responses are present or on scheduling.
ScreeningReport screen_all(const AlignedDataset& data, const ScreeningConfig& cfg);

// Times each predictor appears in a selected set; every name in
// predictor_names gets an entry, never-selected predictors count 0.
std::map<std::string, int> aggregate_predictor_counts(
    const std::vector<ResponseResult>& results,
    const std::vector<std::string>& predictor_names);

}  // namespace landsea
