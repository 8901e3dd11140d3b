#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "landsea/errors.hpp"

namespace landsea {

enum class TableKind { predictor, response };

// A rectangular numeric table keyed by unit id (first CSV column).
struct Table {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_names;
    Eigen::MatrixXd values;  // rows = units, cols = variables
};

struct ResponseMetadata {
    // response name -> local factor in {1..5}
    std::map<std::string, int> local_factor;
};

struct AlignedDataset {
    std::vector<std::string> unit_ids;
    Eigen::MatrixXd X;  // n x p
    Eigen::MatrixXd Y;  // n x m
    std::vector<std::string> predictor_names;
    std::vector<std::string> response_names;
    ResponseMetadata metadata;
};

struct StandardizedDesign {
    Eigen::MatrixXd X_std;            // n x p', centered, 1/n-variance 1
    Eigen::VectorXd means;            // per retained column
    Eigen::VectorXd scales;           // per retained column, sqrt(1/n variance)
    std::vector<int> retained;        // retained column -> original column index
    std::vector<std::pair<std::string, std::string>> excluded_columns;  // (name, reason)
    int n_original_cols = 0;

    int n() const { return static_cast<int>(X_std.rows()); }
    int p_std() const { return static_cast<int>(X_std.cols()); }
};

// CSV: UTF-8, comma separated, '.' decimal point, header row, unit id in the
// first column. kind=response additionally requires all values >= 0.
// Empty cells are rejected unless impute=true, in which case they are
// replaced by the column mean of the non-missing entries.
Table load_table(const std::string& path, TableKind kind, bool impute = false);

// metadata.csv: header `response,local_factor`, one row per response.
ResponseMetadata load_metadata(const std::string& path);

// Joins on unit id (sorted ascending). Mismatched id sets are a hard error
// listing the symmetric difference; every response must have metadata.
AlignedDataset align(const Table& predictors, const Table& responses,
                     const ResponseMetadata& meta);

// Center each column and scale to unit 1/n-variance. Zero-variance columns
// are dropped with reason "constant". Throws NumericError if nothing is left.
StandardizedDesign standardize(const Eigen::MatrixXd& X,
                               const std::vector<std::string>& col_names = {});

// Writes a table back out in the load_table format (used by `synth`).
void save_table(const std::string& path, const Table& table,
                const std::string& id_header = "unit");

void save_metadata(const std::string& path, const ResponseMetadata& meta,
                   const std::vector<std::string>& response_order);

}  // namespace landsea
