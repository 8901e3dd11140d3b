#include "landsea/reporting.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "landsea/errors.hpp"

namespace landsea {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    return out;
}

const char* transform_name(Transform t) {
    return t == Transform::identity ? "identity" : "log1p";
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

std::string config_header(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# tool=" << kToolVersion << '\n'
        << "# predictors=" << cfg.predictors_path << '\n'
        << "# responses=" << cfg.responses_path << '\n'
        << "# metadata=" << cfg.metadata_path << '\n'
        << "# k=" << cfg.k << '\n'
        << "# seed=" << cfg.seed << '\n'
        << "# rule=" << to_string(cfg.rule) << '\n'
        << "# alpha=" << format_double(cfg.alpha) << '\n'
        << "# n_lambda=" << cfg.n_lambda << '\n'
        << "# eps_ratio=" << format_double(cfg.eps_ratio) << '\n'
        << "# tol=" << format_double(cfg.tol) << '\n'
        << "# max_sweeps=" << cfg.max_sweeps << '\n'
        << "# transform=" << transform_name(cfg.transform) << '\n'
        << "# impute=" << (cfg.impute ? "true" : "false") << '\n';
    return out.str();
}

void write_report_csv(const std::string& path, const ScreeningReport& report,
                      const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_header(cfg);
    out << "response,local_factor,lambda,rule,n_nonzero,selected_predictors\n";
    for (const auto& r : report.per_response) {
        out << r.response_name << ',' << r.local_factor << ','
            << format_double(r.lambda_selected) << ',' << to_string(r.rule_used) << ','
            << r.n_nonzero << ',';
        for (std::size_t i = 0; i < r.selected.size(); ++i) {
            if (i) out << ';';
            out << r.selected[i].name;
        }
        out << '\n';
    }
}

void write_predictor_counts_csv(const std::string& path, const ScreeningReport& report,
                                const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_header(cfg);
    out << "predictor,count\n";
    for (const auto& [name, count] : report.predictor_counts)
        out << name << ',' << count << '\n';
}

void write_report_json(const std::string& path, const ScreeningReport& report,
                       const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["tool"] = kToolVersion;
    j["config"] = {{"predictors", cfg.predictors_path},
                   {"responses", cfg.responses_path},
                   {"metadata", cfg.metadata_path},
                   {"k", cfg.k},
                   {"seed", cfg.seed},
                   {"rule", to_string(cfg.rule)},
                   {"alpha", cfg.alpha},
                   {"n_lambda", cfg.n_lambda},
                   {"eps_ratio", cfg.eps_ratio},
                   {"tol", cfg.tol},
                   {"max_sweeps", cfg.max_sweeps},
                   {"transform", transform_name(cfg.transform)},
                   {"impute", cfg.impute}};
    j["responses"] = nlohmann::ordered_json::array();
    for (const auto& r : report.per_response) {
        nlohmann::ordered_json jr;
        jr["response"] = r.response_name;
        jr["local_factor"] = r.local_factor;
        jr["lambda"] = r.lambda_selected;
        jr["rule"] = to_string(r.rule_used);
        jr["n_nonzero"] = r.n_nonzero;
        jr["converged"] = r.converged;
        jr["kkt_max_violation"] = r.kkt_max_violation;
        jr["selected"] = nlohmann::ordered_json::array();
        for (const auto& s : r.selected)
            jr["selected"].push_back({{"predictor", s.name},
                                      {"coefficient_raw", s.coefficient_raw},
                                      {"coefficient_std", s.coefficient_std}});
        j["responses"].push_back(std::move(jr));
    }
    j["predictor_counts"] = report.predictor_counts;

    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_cv_curve_tsv(const std::string& path, const CvCurve& curve,
                        const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_header(cfg);
    out << "# lambda_min=" << format_double(curve.lambda_min) << '\n';
    out << "# lambda_1se=" << format_double(curve.lambda_1se) << '\n';
    out << "lambda\tmean_error\tstd_error\n";
    for (std::size_t l = 0; l < curve.lambdas.size(); ++l)
        out << format_double(curve.lambdas[l]) << '\t'
            << format_double(curve.mean_error[l]) << '\t'
            << format_double(curve.std_error[l]) << '\n';
}

void write_regression_summary_json(const std::string& path, const RegressionSummary& s,
                                   const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["tool"] = kToolVersion;
    j["rule"] = to_string(cfg.rule);
    j["slope"] = s.slope;
    j["intercept"] = s.intercept;
    j["r_squared"] = s.r_squared;
    j["slope_std_error"] = s.slope_std_error;
    j["t_stat"] = s.t_stat;
    j["p_value"] = s.p_value;
    j["n"] = s.n;
    nlohmann::ordered_json means = nlohmann::ordered_json::object();
    for (const auto& [f, m] : s.per_factor_means) means[std::to_string(f)] = m;
    j["per_factor_means"] = std::move(means);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_figure_tsv(const std::string& path, const CountFactorPairs& pairs,
                      const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_header(cfg);
    out << "local_factor\tn_nonzero\n";
    for (const auto& p : pairs.pairs) out << p.local_factor << '\t' << p.n_nonzero << '\n';
}

}  // namespace landsea
