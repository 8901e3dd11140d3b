#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "landsea/analysis.hpp"
#include "landsea/dataset.hpp"
#include "landsea/reporting.hpp"
#include "landsea/rng.hpp"
#include "landsea/screening.hpp"
#include "landsea/solver.hpp"
#include "landsea/synthlab.hpp"

namespace fs = std::filesystem;
using namespace landsea;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumericWarning = 1;
constexpr int kExitInputError = 2;

struct CliOptions {
    RunConfig cfg;
    std::string response_name;
    double lambda = 0.0;
    bool force = false;
    std::string rule_name = "min";
    std::string transform_name = "identity";
    // synth
    int synth_n = 47, synth_p = 448, synth_s = 5, synth_m = 1;
    double synth_beta = 3.0, synth_noise = 0.5;
    // analyze inputs
    std::string pairs_path;
    std::string report_path;
};

void add_io_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--predictors", opt.cfg.predictors_path, "predictors.csv")->required();
    cmd->add_option("--responses", opt.cfg.responses_path, "responses.csv")->required();
    cmd->add_option("--metadata", opt.cfg.metadata_path, "metadata.csv")->required();
}

void add_model_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--k", opt.cfg.k, "CV folds");
    cmd->add_option("--seed", opt.cfg.seed, "fold-assignment seed");
    cmd->add_option("--rule", opt.rule_name, "lambda selection rule: min | one_se");
    cmd->add_option("--alpha", opt.cfg.alpha, "l1/l2 mixing, 1 = pure l1")
        ->check(CLI::Range(1e-6, 1.0));
    cmd->add_option("--n-lambda", opt.cfg.n_lambda, "path length");
    cmd->add_option("--eps-ratio", opt.cfg.eps_ratio, "lambda_min/lambda_max ratio");
    cmd->add_option("--tol", opt.cfg.tol, "coordinate-descent tolerance");
    cmd->add_option("--max-sweeps", opt.cfg.max_sweeps, "sweep budget per fit");
    cmd->add_option("--transform", opt.transform_name, "response transform: identity | log1p");
    cmd->add_flag("--impute", opt.cfg.impute, "mean-impute empty cells instead of rejecting");
}

void add_output_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--out", opt.cfg.output_dir, "output directory");
    cmd->add_flag("--force", opt.force, "overwrite existing output files");
}

void finish_config(CliOptions& opt) {
    opt.cfg.rule = selection_rule_from_string(opt.rule_name);
    if (opt.transform_name == "identity")
        opt.cfg.transform = Transform::identity;
    else if (opt.transform_name == "log1p")
        opt.cfg.transform = Transform::log1p;
    else
        throw InputError("unknown transform \"" + opt.transform_name + "\"");
}

std::string prepare_output(const CliOptions& opt, const std::string& filename) {
    fs::create_directories(opt.cfg.output_dir);
    fs::path p = fs::path(opt.cfg.output_dir) / filename;
    if (fs::exists(p) && !opt.force)
        throw InputError("output file exists (use --force to overwrite): " + p.string());
    return p.string();
}

AlignedDataset load_aligned(const CliOptions& opt) {
    Table pred = load_table(opt.cfg.predictors_path, TableKind::predictor, opt.cfg.impute);
    Table resp = load_table(opt.cfg.responses_path, TableKind::response, opt.cfg.impute);
    ResponseMetadata meta = load_metadata(opt.cfg.metadata_path);
    AlignedDataset data = align(pred, resp, meta);
    if (opt.cfg.transform == Transform::log1p)
        data.Y = data.Y.array().log1p();
    return data;
}

Eigen::Index response_index(const AlignedDataset& data, const std::string& name) {
    for (std::size_t i = 0; i < data.response_names.size(); ++i)
        if (data.response_names[i] == name) return static_cast<Eigen::Index>(i);
    throw InputError("unknown response name \"" + name + "\"");
}

CvConfig cv_config(const RunConfig& cfg) {
    CvConfig cv;
    cv.k = cfg.k;
    cv.seed = cfg.seed;
    cv.rule = cfg.rule;
    cv.n_lambda = cfg.n_lambda;
    cv.eps_ratio = cfg.eps_ratio;
    cv.convergence.tol = cfg.tol;
    cv.convergence.max_sweeps = cfg.max_sweeps;
    return cv;
}

int run_fit(CliOptions& opt) {
    finish_config(opt);
    AlignedDataset data = load_aligned(opt);
    const Eigen::Index r = response_index(data, opt.response_name);
    Eigen::VectorXd y = data.Y.col(r);

    StandardizedDesign design = standardize(data.X, data.predictor_names);
    PenaltySpec pen{opt.lambda, opt.cfg.alpha};
    ConvergenceConfig conv{opt.cfg.tol, opt.cfg.max_sweeps};
    Coefficients coef = fit(design, y, pen, nullptr, conv);
    KktReport kkt = check_kkt(design, y, coef, pen, 1e-6);

    std::cout << "response: " << opt.response_name << '\n'
              << "lambda: " << format_double(opt.lambda) << '\n'
              << "alpha: " << format_double(opt.cfg.alpha) << '\n'
              << "intercept: " << format_double(coef.intercept) << '\n'
              << "n_nonzero: " << count_nonzero(coef) << '\n';
    for (Eigen::Index k = 0; k < coef.beta_std.size(); ++k)
        if (coef.beta_std[k] != 0.0) {
            const int j = design.retained[static_cast<std::size_t>(k)];
            std::cout << "coef " << data.predictor_names[static_cast<std::size_t>(j)]
                      << ": " << format_double(coef.beta_raw[j]) << '\n';
        }
    std::cout << "kkt_max_violation: " << format_double(kkt.max_violation) << '\n'
              << "converged: " << (coef.converged ? "true" : "false") << '\n';
    return coef.converged ? kExitOk : kExitNumericWarning;
}

int run_cv(CliOptions& opt) {
    finish_config(opt);
    AlignedDataset data = load_aligned(opt);
    const Eigen::Index r = response_index(data, opt.response_name);

    CvConfig cv = cv_config(opt.cfg);
    CvCurve curve = cross_validate(data.X, data.Y.col(r), cv, opt.cfg.alpha);
    write_cv_curve_tsv(prepare_output(opt, "cv_curve.tsv"), curve, opt.cfg);

    std::cout << "response: " << opt.response_name << '\n'
              << "lambda_min: " << format_double(curve.lambda_min) << '\n'
              << "lambda_1se: " << format_double(curve.lambda_1se) << '\n';
    return kExitOk;
}

int run_screen(CliOptions& opt) {
    finish_config(opt);
    AlignedDataset data = load_aligned(opt);

    ScreeningConfig scfg;
    scfg.cv = cv_config(opt.cfg);
    scfg.alpha = opt.cfg.alpha;
    scfg.parallelism = opt.cfg.parallelism;
    ScreeningReport report = screen_all(data, scfg);

    write_report_csv(prepare_output(opt, "report.csv"), report, opt.cfg);
    write_predictor_counts_csv(prepare_output(opt, "predictor_counts.csv"), report, opt.cfg);
    write_report_json(prepare_output(opt, "report.json"), report, opt.cfg);

    bool all_converged = true;
    for (const auto& r : report.per_response)
        if (!r.converged) {
            all_converged = false;
            std::cerr << "warning: response \"" << r.response_name
                      << "\" did not converge\n";
        }
    std::cout << "responses: " << report.per_response.size() << '\n'
              << "reports written to " << opt.cfg.output_dir << '\n';
    return all_converged ? kExitOk : kExitNumericWarning;
}

// report.csv rows: response,local_factor,lambda,rule,n_nonzero,selected...
CountFactorPairs pairs_from_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    CountFactorPairs out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        cells.push_back(cur);
        if (cells.size() < 5) throw InputError(path + ": malformed report row");
        out.pairs.push_back(
            {std::stoi(cells[1]), std::stoi(cells[4]), cells[0]});
    }
    if (out.pairs.empty()) throw InputError(path + ": no data rows");
    return out;
}

int run_analyze(CliOptions& opt) {
    finish_config(opt);
    if (opt.pairs_path.empty() == opt.report_path.empty())
        throw InputError("analyze needs exactly one of --pairs or --report");

    CountFactorPairs pairs = opt.pairs_path.empty()
                                 ? pairs_from_report_csv(opt.report_path)
                                 : load_pairs(opt.pairs_path);
    RegressionSummary summary = regress_counts_on_factor(pairs);

    write_regression_summary_json(prepare_output(opt, "regression_summary.json"),
                                  summary, opt.cfg);
    write_figure_tsv(prepare_output(opt, "figure1.tsv"), pairs, opt.cfg);

    std::cout << "n: " << summary.n << '\n'
              << "slope: " << format_double(summary.slope) << '\n'
              << "intercept: " << format_double(summary.intercept) << '\n'
              << "r_squared: " << format_double(summary.r_squared) << '\n'
              << "t_stat: " << format_double(summary.t_stat) << '\n'
              << "p_value: " << format_double(summary.p_value) << '\n';
    return kExitOk;
}

int run_synth(CliOptions& opt) {
    finish_config(opt);
    if (opt.synth_m < 1) throw InputError("synth: --m must be >= 1");

    SynthSpec base{opt.synth_n, opt.synth_p, opt.synth_s, opt.synth_beta,
                   opt.synth_noise, opt.cfg.seed};
    SynthInstance first = generate(base);

    Table pred;
    pred.col_names.reserve(static_cast<std::size_t>(opt.synth_p));
    for (int j = 0; j < opt.synth_p; ++j) pred.col_names.push_back("x" + std::to_string(j));
    for (int i = 0; i < opt.synth_n; ++i)
        pred.row_ids.push_back("unit" + std::to_string(i));
    pred.values = first.X;

    Table resp;
    resp.row_ids = pred.row_ids;
    ResponseMetadata meta;
    resp.values.resize(opt.synth_n, opt.synth_m);
    for (int r = 0; r < opt.synth_m; ++r) {
        std::string name = "y" + std::to_string(r);
        resp.col_names.push_back(name);
        meta.local_factor[name] = r % 5 + 1;
        // Shared X; per-response support, signs, and noise from a seed
        // derived via the same name hash the screening loop uses.
        SynthSpec s = base;
        s.seed = base.seed ^ fnv1a64(name);
        SynthInstance inst = generate(s);
        Eigen::VectorXd y = first.X * inst.true_beta;
        SplitMix64 noise_rng(s.seed + 1);
        for (int i = 0; i < opt.synth_n; ++i)
            y[i] += opt.synth_noise * noise_rng.next_normal();
        // Responses are production-like quantities: shift to be non-negative.
        y.array() -= y.minCoeff();
        resp.values.col(r) = y;
    }

    save_table(prepare_output(opt, "predictors.csv"), pred, "unit");
    save_table(prepare_output(opt, "responses.csv"), resp, "unit");
    save_metadata(prepare_output(opt, "metadata.csv"), meta, resp.col_names);
    std::cout << "wrote predictors.csv, responses.csv, metadata.csv to "
              << opt.cfg.output_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse land-sea screening toolkit"};
    app.require_subcommand(1);
    CliOptions opt;
    opt.cfg.parallelism =
        std::max(1u, std::thread::hardware_concurrency());

    auto* fit_cmd = app.add_subcommand("fit", "single penalized fit at a fixed lambda");
    add_io_options(fit_cmd, opt);
    add_model_options(fit_cmd, opt);
    fit_cmd->add_option("--response", opt.response_name, "response name")->required();
    fit_cmd->add_option("--lambda", opt.lambda, "penalty strength")->required();

    auto* cv_cmd = app.add_subcommand("cv", "cross-validated penalty curve for one response");
    add_io_options(cv_cmd, opt);
    add_model_options(cv_cmd, opt);
    add_output_options(cv_cmd, opt);
    cv_cmd->add_option("--response", opt.response_name, "response name")->required();

    auto* screen_cmd = app.add_subcommand("screen", "CV-tuned fit per response plus count aggregation");
    add_io_options(screen_cmd, opt);
    add_model_options(screen_cmd, opt);
    add_output_options(screen_cmd, opt);
    screen_cmd->add_option("--parallelism", opt.cfg.parallelism, "worker threads");

    auto* analyze_cmd = app.add_subcommand("analyze", "regress nonzero counts on local factors");
    add_output_options(analyze_cmd, opt);
    analyze_cmd->add_option("--pairs", opt.pairs_path,
                            "pairs CSV (response,local_factor,n_nonzero)");
    analyze_cmd->add_option("--report", opt.report_path, "report.csv from `screen`");

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic instance as pipeline CSVs");
    add_output_options(synth_cmd, opt);
    synth_cmd->add_option("--n", opt.synth_n, "units");
    synth_cmd->add_option("--p", opt.synth_p, "predictors");
    synth_cmd->add_option("--s", opt.synth_s, "true support size per response");
    synth_cmd->add_option("--m", opt.synth_m, "responses");
    synth_cmd->add_option("--beta", opt.synth_beta, "signal magnitude");
    synth_cmd->add_option("--noise", opt.synth_noise, "noise standard deviation");
    synth_cmd->add_option("--seed", opt.cfg.seed, "generator seed");

    try {
        app.parse(argc, argv);
        if (*fit_cmd) return run_fit(opt);
        if (*cv_cmd) return run_cv(opt);
        if (*screen_cmd) return run_screen(opt);
        if (*analyze_cmd) return run_analyze(opt);
        if (*synth_cmd) return run_synth(opt);
        return kExitInputError;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericWarning;
    }
}
