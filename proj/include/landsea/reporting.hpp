#pragma once

#include <cstdint>
#include <string>

#include "landsea/analysis.hpp"
#include "landsea/model_selection.hpp"
#include "landsea/screening.hpp"

namespace landsea {

inline constexpr const char* kToolVersion = "landsea 0.1.0";

enum class Transform { identity, log1p };

// Full run configuration; echoed verbatim into every output file so results
// are self-describing and byte-reproducible.
struct RunConfig {
    std::string predictors_path;
    std::string responses_path;
    std::string metadata_path;
    std::string output_dir = ".";
    int k = 10;
    std::uint64_t seed = 0;
    SelectionRule rule = SelectionRule::min;
    double alpha = 1.0;
    int n_lambda = 100;
    double eps_ratio = 0.01;
    double tol = 1e-7;
    int max_sweeps = 100000;
    Transform transform = Transform::identity;
    bool impute = false;
    int parallelism = 1;
};

// '#'-prefixed key=value header block shared by the CSV/TSV outputs.
std::string config_header(const RunConfig& cfg);

// Deterministic shortest-roundtrip double formatting used in all outputs.
std::string format_double(double v);

void write_report_csv(const std::string& path, const ScreeningReport& report,
                      const RunConfig& cfg);
void write_predictor_counts_csv(const std::string& path, const ScreeningReport& report,
                                const RunConfig& cfg);
void write_report_json(const std::string& path, const ScreeningReport& report,
                       const RunConfig& cfg);
void write_cv_curve_tsv(const std::string& path, const CvCurve& curve,
                        const RunConfig& cfg);
void write_regression_summary_json(const std::string& path, const RegressionSummary& s,
                                   const RunConfig& cfg);
void write_figure_tsv(const std::string& path, const CountFactorPairs& pairs,
                      const RunConfig& cfg);

}  // namespace landsea
