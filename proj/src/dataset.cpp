#include "landsea/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace landsea {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Parses a decimal number; row/col are 1-based file coordinates for messages.
double parse_cell(const std::string& raw, const std::string& path,
                  std::size_t row, std::size_t col) {
    std::string s = trim(raw);
    if (s.empty())
        throw InputError(path + ": empty cell at row " + std::to_string(row) +
                         ", col " + std::to_string(col));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError(path + ": non-numeric cell \"" + s + "\" at row " +
                         std::to_string(row) + ", col " + std::to_string(col));
    if (!std::isfinite(v))
        throw InputError(path + ": non-finite value at row " + std::to_string(row) +
                         ", col " + std::to_string(col));
    return v;
}

void check_unique(const std::vector<std::string>& names, const std::string& path,
                  const std::string& what) {
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second)
            throw InputError(path + ": duplicate " + what + " \"" + n + "\"");
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;  // comment headers
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

Table load_table(const std::string& path, TableKind kind, bool impute) {
    auto lines = read_lines(path);
    if (lines.size() < 2) throw InputError(path + ": expected a header row and at least one data row");

    auto header = split_csv_line(lines[0]);
    if (header.size() < 2) throw InputError(path + ": header must contain a unit-id column and at least one variable");
    const std::size_t ncols = header.size() - 1;

    Table t;
    t.col_names.assign(header.begin() + 1, header.end());
    for (auto& n : t.col_names) n = trim(n);
    check_unique(t.col_names, path, "column name");

    const std::size_t nrows = lines.size() - 1;
    t.values.resize(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
    std::vector<std::vector<bool>> missing;
    if (impute) missing.assign(nrows, std::vector<bool>(ncols, false));

    for (std::size_t r = 0; r < nrows; ++r) {
        auto cells = split_csv_line(lines[r + 1]);
        if (cells.size() != header.size())
            throw InputError(path + ": row " + std::to_string(r + 2) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        t.row_ids.push_back(trim(cells[0]));
        for (std::size_t c = 0; c < ncols; ++c) {
            if (impute && trim(cells[c + 1]).empty()) {
                missing[r][c] = true;
                t.values(r, c) = 0.0;
                continue;
            }
            double v = parse_cell(cells[c + 1], path, r + 2, c + 2);
            if (kind == TableKind::response && v < 0.0)
                throw InputError(path + ": negative response value at row " +
                                 std::to_string(r + 2) + ", col " + std::to_string(c + 2));
            t.values(r, c) = v;
        }
    }
    check_unique(t.row_ids, path, "unit id");

    if (impute) {
        for (std::size_t c = 0; c < ncols; ++c) {
            double sum = 0.0;
            int cnt = 0;
            for (std::size_t r = 0; r < nrows; ++r)
                if (!missing[r][c]) { sum += t.values(r, c); ++cnt; }
            if (cnt == 0)
                throw InputError(path + ": column \"" + t.col_names[c] + "\" is entirely missing");
            double mean = sum / cnt;
            for (std::size_t r = 0; r < nrows; ++r)
                if (missing[r][c]) t.values(r, c) = mean;
        }
    }
    return t;
}

ResponseMetadata load_metadata(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw InputError(path + ": empty metadata file");
    auto header = split_csv_line(lines[0]);
    if (header.size() != 2 || trim(header[0]) != "response" || trim(header[1]) != "local_factor")
        throw InputError(path + ": expected header `response,local_factor`");

    ResponseMetadata meta;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto cells = split_csv_line(lines[r]);
        if (cells.size() != 2)
            throw InputError(path + ": row " + std::to_string(r + 1) + " must have 2 cells");
        std::string name = trim(cells[0]);
        double v = parse_cell(cells[1], path, r + 1, 2);
        int lf = static_cast<int>(v);
        if (lf != v || lf < 1 || lf > 5)
            throw InputError(path + ": local_factor for \"" + name +
                             "\" must be an integer in 1..5");
        if (!meta.local_factor.emplace(name, lf).second)
            throw InputError(path + ": duplicate response \"" + name + "\"");
    }
    return meta;
}

AlignedDataset align(const Table& predictors, const Table& responses,
                     const ResponseMetadata& meta) {
    std::set<std::string> pred_ids(predictors.row_ids.begin(), predictors.row_ids.end());
    std::set<std::string> resp_ids(responses.row_ids.begin(), responses.row_ids.end());
    if (pred_ids != resp_ids) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(pred_ids.begin(), pred_ids.end(),
                                      resp_ids.begin(), resp_ids.end(),
                                      std::back_inserter(diff));
        std::string msg = "unit-id sets differ between predictor and response tables:";
        for (const auto& d : diff) msg += " " + d;
        throw InputError(msg);
    }
    for (const auto& name : responses.col_names)
        if (!meta.local_factor.count(name))
            throw InputError("response \"" + name + "\" has no local_factor in metadata");

    const auto n = static_cast<Eigen::Index>(pred_ids.size());
    if (n < 3) throw InputError("need at least 3 units after alignment");

    std::map<std::string, Eigen::Index> pred_row, resp_row;
    for (Eigen::Index i = 0; i < predictors.values.rows(); ++i)
        pred_row[predictors.row_ids[i]] = i;
    for (Eigen::Index i = 0; i < responses.values.rows(); ++i)
        resp_row[responses.row_ids[i]] = i;

    AlignedDataset out;
    out.unit_ids.assign(pred_ids.begin(), pred_ids.end());  // sorted by id
    out.predictor_names = predictors.col_names;
    out.response_names = responses.col_names;
    out.metadata = meta;
    out.X.resize(n, predictors.values.cols());
    out.Y.resize(n, responses.values.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.X.row(i) = predictors.values.row(pred_row[out.unit_ids[i]]);
        out.Y.row(i) = responses.values.row(resp_row[out.unit_ids[i]]);
    }
    return out;
}

StandardizedDesign standardize(const Eigen::MatrixXd& X,
                               const std::vector<std::string>& col_names) {
    const auto n = X.rows();
    const auto p = X.cols();
    if (n < 2) throw NumericError("standardize requires at least 2 rows");

    StandardizedDesign d;
    d.n_original_cols = static_cast<int>(p);

    std::vector<double> means, scales;
    for (Eigen::Index j = 0; j < p; ++j) {
        double mean = X.col(j).mean();
        double var = (X.col(j).array() - mean).square().sum() / static_cast<double>(n);
        double scale = std::sqrt(var);
        std::string name = j < static_cast<Eigen::Index>(col_names.size())
                               ? col_names[j]
                               : "col" + std::to_string(j);
        if (scale <= 1e-12 * (std::abs(mean) + 1.0)) {
            d.excluded_columns.emplace_back(name, "constant");
        } else {
            d.retained.push_back(static_cast<int>(j));
            means.push_back(mean);
            scales.push_back(scale);
        }
    }
    if (d.retained.empty()) throw NumericError("all design columns are constant");

    d.means = Eigen::Map<Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    d.scales = Eigen::Map<Eigen::VectorXd>(scales.data(), static_cast<Eigen::Index>(scales.size()));
    d.X_std.resize(n, static_cast<Eigen::Index>(d.retained.size()));
    for (std::size_t k = 0; k < d.retained.size(); ++k)
        d.X_std.col(static_cast<Eigen::Index>(k)) =
            (X.col(d.retained[k]).array() - d.means[static_cast<Eigen::Index>(k)]) /
            d.scales[static_cast<Eigen::Index>(k)];
    return d;
}

namespace {
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

void save_table(const std::string& path, const Table& table, const std::string& id_header) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << id_header;
    for (const auto& c : table.col_names) out << ',' << c;
    out << '\n';
    for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
        out << table.row_ids[i];
        for (Eigen::Index j = 0; j < table.values.cols(); ++j)
            out << ',' << fmt_double(table.values(i, j));
        out << '\n';
    }
}

void save_metadata(const std::string& path, const ResponseMetadata& meta,
                   const std::vector<std::string>& response_order) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << "response,local_factor\n";
    for (const auto& name : response_order)
        out << name << ',' << meta.local_factor.at(name) << '\n';
}

}  // namespace landsea
