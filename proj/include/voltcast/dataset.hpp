#ifndef VOLTCAST_DATASET_HPP
#define VOLTCAST_DATASET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "voltcast/common.hpp"
#include "voltcast/csv.hpp"

namespace voltcast {

// One telemetry row of a charge cycle. cycle_number and time_s are the key
// columns; voltage_V is the prediction target.
struct CycleRecord {
    long long cycle_number = 0;
    double time_s = 0.0;
    double voltage_V = 0.0;
    double current_A = 0.0;
    double temperature_C = 0.0;
};

inline const std::array<std::string, 5>& required_columns() {
    static const std::array<std::string, 5> cols = {"cycle_number", "time_s", "voltage_V",
                                                    "current_A", "temperature_C"};
    return cols;
}

inline const std::array<std::string, 2>& key_columns() {
    static const std::array<std::string, 2> cols = {"cycle_number", "time_s"};
    return cols;
}

// Column-named numeric table with a per-cell missing mask. Rows are kept in
// (cycle_number, time_s) order; operations return new tables rather than
// mutating in place.
struct RawTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;    // row-major, values[row][col]
    std::vector<std::vector<uint8_t>> missing;  // same shape as values

    size_t n_rows() const { return values.size(); }
    size_t n_cols() const { return columns.size(); }

    int find_column(const std::string& name) const {
        for (size_t j = 0; j < columns.size(); ++j) {
            if (columns[j] == name) return static_cast<int>(j);
        }
        return -1;
    }

    size_t column_index(const std::string& name) const {
        const int j = find_column(name);
        if (j < 0) throw UnknownFeatureError("unknown column: " + name);
        return static_cast<size_t>(j);
    }

    CycleRecord record(size_t row) const {
        CycleRecord r;
        r.cycle_number = static_cast<long long>(std::llround(values[row][column_index("cycle_number")]));
        r.time_s = values[row][column_index("time_s")];
        r.voltage_V = values[row][column_index("voltage_V")];
        r.current_A = values[row][column_index("current_A")];
        r.temperature_C = values[row][column_index("temperature_C")];
        return r;
    }

    // Every non-key column, in header order; these are the model features.
    std::vector<std::string> feature_columns() const {
        std::vector<std::string> out;
        for (const auto& c : columns) {
            if (c != "cycle_number" && c != "time_s") out.push_back(c);
        }
        return out;
    }

    bool any_missing() const {
        for (const auto& row : missing) {
            for (uint8_t m : row) {
                if (m) return true;
            }
        }
        return false;
    }

    void sort_by_cycle_time() {
        const size_t ci = column_index("cycle_number");
        const size_t ti = column_index("time_s");
        std::vector<size_t> order(n_rows());
        std::iota(order.begin(), order.end(), size_t{0});
        auto sort_key = [&](size_t i, size_t col) {
            // Missing keys sort after everything else within their group.
            if (missing[i][col] || std::isnan(values[i][col])) {
                return std::numeric_limits<double>::infinity();
            }
            return values[i][col];
        };
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            const double ca = sort_key(a, ci);
            const double cb = sort_key(b, ci);
            if (ca != cb) return ca < cb;
            return sort_key(a, ti) < sort_key(b, ti);
        });
        std::vector<std::vector<double>> new_values(n_rows());
        std::vector<std::vector<uint8_t>> new_missing(n_rows());
        for (size_t i = 0; i < order.size(); ++i) {
            new_values[i] = std::move(values[order[i]]);
            new_missing[i] = std::move(missing[order[i]]);
        }
        values = std::move(new_values);
        missing = std::move(new_missing);
    }

    // Row index ranges [begin, end) of consecutive rows sharing a cycle number.
    std::vector<std::pair<size_t, size_t>> cycle_ranges() const {
        std::vector<std::pair<size_t, size_t>> ranges;
        const size_t ci = column_index("cycle_number");
        size_t begin = 0;
        for (size_t i = 1; i <= n_rows(); ++i) {
            if (i == n_rows() || values[i][ci] != values[begin][ci]) {
                ranges.emplace_back(begin, i);
                begin = i;
            }
        }
        return ranges;
    }

    // Checks the schema and, when require_imputed is set, the post-imputation
    // invariants: all cells finite, time strictly increasing per cycle,
    // cycle numbers >= 1.
    void validate(bool require_imputed = false) const {
        for (const auto& name : required_columns()) {
            if (find_column(name) < 0) throw SchemaError("missing required column: " + name);
        }
        if (missing.size() != values.size()) throw SchemaError("missing mask row count mismatch");
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i].size() != columns.size() || missing[i].size() != columns.size()) {
                throw SchemaError("row " + std::to_string(i + 1) + " has wrong cell count");
            }
        }
        if (!require_imputed) return;
        const size_t ci = column_index("cycle_number");
        const size_t ti = column_index("time_s");
        for (size_t i = 0; i < n_rows(); ++i) {
            for (size_t j = 0; j < n_cols(); ++j) {
                if (missing[i][j] || !std::isfinite(values[i][j])) {
                    throw SchemaError("non-finite or missing cell at row " + std::to_string(i + 1) +
                                      ", column " + columns[j]);
                }
            }
            if (values[i][ci] < 1.0) throw SchemaError("cycle_number must be >= 1");
            if (i > 0 && values[i][ci] == values[i - 1][ci] && values[i][ti] <= values[i - 1][ti]) {
                throw SchemaError("time_s not strictly increasing within cycle at row " +
                                  std::to_string(i + 1));
            }
        }
    }
};

// Per-feature mean and sample standard deviation, fitted on training data.
struct StandardizationParams {
    std::vector<std::string> feature_names;
    std::vector<double> mean;
    std::vector<double> stddev;

    size_t index_of(const std::string& feature) const {
        for (size_t i = 0; i < feature_names.size(); ++i) {
            if (feature_names[i] == feature) return i;
        }
        throw UnknownFeatureError("feature not in standardizer: " + feature);
    }
};

struct Window {
    std::vector<std::vector<double>> steps;  // window_length x feature count
    double target = 0.0;                     // voltage_V at horizon steps past the window
};

struct WindowedSeries {
    std::vector<Window> windows;
    int window_length = 0;
    int horizon = 0;
    std::vector<std::string> feature_names;

    size_t size() const { return windows.size(); }
    size_t feature_count() const { return feature_names.size(); }
};

enum class ImputeStrategy { forward_fill_then_mean, drop_row };
enum class SplitMode { chronological, shuffled };

struct SplitSpec {
    double train_fraction = 0.8;
    SplitMode mode = SplitMode::chronological;
    uint64_t seed = 0;
};

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double sample_std_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

// Reads a dataset CSV. Required headers must all be present; extra columns
// ride along as additional features. Empty cells become masked entries.
inline RawTable load_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);

    RawTable table;
    table.columns = csv.header;
    for (const auto& name : required_columns()) {
        bool found = false;
        for (const auto& h : csv.header) {
            if (h == name) found = true;
        }
        if (!found) throw SchemaError("missing required column: " + name);
    }
    for (size_t a = 0; a < csv.header.size(); ++a) {
        for (size_t b = a + 1; b < csv.header.size(); ++b) {
            if (csv.header[a] == csv.header[b]) {
                throw SchemaError("duplicate column: " + csv.header[a]);
            }
        }
    }
    if (csv.rows.empty()) throw EmptyInputError("CSV has a header but no data rows: " + path);

    const size_t ncols = csv.header.size();
    table.values.reserve(csv.rows.size());
    table.missing.reserve(csv.rows.size());
    for (size_t i = 0; i < csv.rows.size(); ++i) {
        const auto& cells = csv.rows[i];
        if (cells.size() != ncols) {
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(ncols));
        }
        std::vector<double> row(ncols, 0.0);
        std::vector<uint8_t> mask(ncols, 0);
        for (size_t j = 0; j < ncols; ++j) {
            bool blank = true;
            for (char c : cells[j]) {
                if (c != ' ' && c != '\t') blank = false;
            }
            if (blank) {
                row[j] = std::numeric_limits<double>::quiet_NaN();
                mask[j] = 1;
            } else {
                row[j] = parse_csv_number(cells[j], i + 1, csv.header[j]);
            }
        }
        table.values.push_back(std::move(row));
        table.missing.push_back(std::move(mask));
    }
    table.sort_by_cycle_time();
    return table;
}

// Writes the dataset CSV schema with shortest round-trip numbers; masked
// cells are emitted as empty.
inline void write_table_csv(const RawTable& table, const std::string& path) {
    CsvTable csv;
    csv.header = table.columns;
    csv.rows.reserve(table.n_rows());
    for (size_t i = 0; i < table.n_rows(); ++i) {
        std::vector<std::string> cells(table.n_cols());
        for (size_t j = 0; j < table.n_cols(); ++j) {
            cells[j] = table.missing[i][j] ? std::string() : format_double(table.values[i][j]);
        }
        csv.rows.push_back(std::move(cells));
    }
    write_csv_file(path, csv);
}

inline RawTable impute_missing(const RawTable& input, ImputeStrategy strategy) {
    if (input.n_rows() == 0) throw EmptyInputError("impute_missing: empty table");
    RawTable table = input;

    if (strategy == ImputeStrategy::drop_row) {
        std::vector<std::vector<double>> kept_values;
        std::vector<std::vector<uint8_t>> kept_missing;
        for (size_t i = 0; i < table.n_rows(); ++i) {
            bool masked = false;
            for (uint8_t m : table.missing[i]) {
                if (m) masked = true;
            }
            if (!masked) {
                kept_values.push_back(table.values[i]);
                kept_missing.push_back(std::vector<uint8_t>(table.n_cols(), 0));
            }
        }
        if (kept_values.empty()) throw EmptyInputError("impute_missing: drop_row removed every row");
        table.values = std::move(kept_values);
        table.missing = std::move(kept_missing);
        return table;
    }

    // forward_fill_then_mean: carry the previous value within the cycle;
    // cells with no predecessor take the column mean over observed values.
    const auto ranges = table.cycle_ranges();
    for (size_t j = 0; j < table.n_cols(); ++j) {
        std::vector<double> observed;
        for (size_t i = 0; i < table.n_rows(); ++i) {
            if (!table.missing[i][j]) observed.push_back(table.values[i][j]);
        }
        bool column_has_gaps = observed.size() < table.n_rows();
        if (!column_has_gaps) continue;
        if (observed.empty()) {
            throw ParameterError("impute_missing: column " + table.columns[j] +
                                 " has no observed values");
        }
        const double column_mean = mean_of(observed);
        for (const auto& [begin, end] : ranges) {
            bool have_prev = false;
            double prev = 0.0;
            for (size_t i = begin; i < end; ++i) {
                if (table.missing[i][j]) {
                    table.values[i][j] = have_prev ? prev : column_mean;
                    table.missing[i][j] = 0;
                }
                prev = table.values[i][j];
                have_prev = true;
            }
        }
    }
    return table;
}

// Drops rows whose z-score exceeds the threshold in any non-key column.
// Statistics come from the input table; constant columns contribute no
// outliers.
inline std::pair<RawTable, int> remove_outliers(const RawTable& input, double z_threshold) {
    if (!(z_threshold > 0.0)) {
        throw ParameterError("remove_outliers: z_threshold must be positive");
    }
    if (input.any_missing()) {
        throw ParameterError("remove_outliers requires an imputed table");
    }

    std::vector<size_t> feature_idx;
    for (const auto& name : input.feature_columns()) feature_idx.push_back(input.column_index(name));

    std::vector<double> mu(feature_idx.size()), sigma(feature_idx.size());
    for (size_t k = 0; k < feature_idx.size(); ++k) {
        std::vector<double> col;
        col.reserve(input.n_rows());
        for (size_t i = 0; i < input.n_rows(); ++i) col.push_back(input.values[i][feature_idx[k]]);
        mu[k] = mean_of(col);
        sigma[k] = sample_std_of(col, mu[k]);
    }

    RawTable table = input;
    table.values.clear();
    table.missing.clear();
    int removed = 0;
    for (size_t i = 0; i < input.n_rows(); ++i) {
        bool outlier = false;
        for (size_t k = 0; k < feature_idx.size(); ++k) {
            if (sigma[k] <= 0.0) continue;
            const double z = (input.values[i][feature_idx[k]] - mu[k]) / sigma[k];
            if (std::abs(z) > z_threshold) outlier = true;
        }
        if (outlier) {
            ++removed;
        } else {
            table.values.push_back(input.values[i]);
            table.missing.push_back(input.missing[i]);
        }
    }
    if (table.n_rows() < 2) {
        throw ParameterError("remove_outliers: threshold " + format_double(z_threshold) +
                             " leaves fewer than 2 rows");
    }
    return {std::move(table), removed};
}

inline StandardizationParams fit_standardizer(const RawTable& table,
                                              const std::vector<std::string>& features) {
    if (table.any_missing()) throw ParameterError("fit_standardizer requires an imputed table");
    StandardizationParams params;
    params.feature_names = features;
    for (const auto& name : features) {
        const size_t j = table.column_index(name);
        std::vector<double> col;
        col.reserve(table.n_rows());
        for (size_t i = 0; i < table.n_rows(); ++i) col.push_back(table.values[i][j]);
        const double mu = mean_of(col);
        const double sd = sample_std_of(col, mu);
        if (!(sd > 0.0)) {
            throw ZeroVarianceError("fit_standardizer: feature " + name + " is constant");
        }
        params.mean.push_back(mu);
        params.stddev.push_back(sd);
    }
    return params;
}

inline RawTable apply_standardizer(const RawTable& input, const StandardizationParams& params) {
    RawTable table = input;
    for (size_t k = 0; k < params.feature_names.size(); ++k) {
        const size_t j = table.column_index(params.feature_names[k]);
        for (size_t i = 0; i < table.n_rows(); ++i) {
            table.values[i][j] = (table.values[i][j] - params.mean[k]) / params.stddev[k];
        }
    }
    return table;
}

inline double apply_standardizer(double value, const std::string& feature,
                                 const StandardizationParams& params) {
    const size_t k = params.index_of(feature);
    return (value - params.mean[k]) / params.stddev[k];
}

inline double invert_standardizer(double value, const std::string& feature,
                                  const StandardizationParams& params) {
    const size_t k = params.index_of(feature);
    return value * params.stddev[k] + params.mean[k];
}

// Stride-1 sliding windows inside each cycle; the target is voltage_V at
// horizon steps past the window's last record. Windows never cross a cycle
// boundary.
inline WindowedSeries make_windows(const RawTable& table, int window_length, int horizon,
                                   const std::vector<std::string>& features) {
    if (window_length < 1) throw ParameterError("make_windows: window_length must be >= 1");
    if (horizon < 1) throw ParameterError("make_windows: horizon must be >= 1");

    std::vector<size_t> feature_idx;
    for (const auto& name : features) feature_idx.push_back(table.column_index(name));
    const size_t target_idx = table.column_index("voltage_V");

    WindowedSeries series;
    series.window_length = window_length;
    series.horizon = horizon;
    series.feature_names = features;

    const size_t L = static_cast<size_t>(window_length);
    const size_t H = static_cast<size_t>(horizon);
    for (const auto& [begin, end] : table.cycle_ranges()) {
        const size_t n = end - begin;
        if (n < L + H) continue;
        for (size_t start = begin; start + L + H <= end; ++start) {
            Window w;
            w.steps.reserve(L);
            for (size_t t = 0; t < L; ++t) {
                std::vector<double> step(feature_idx.size());
                for (size_t f = 0; f < feature_idx.size(); ++f) {
                    step[f] = table.values[start + t][feature_idx[f]];
                }
                w.steps.push_back(std::move(step));
            }
            w.target = table.values[start + L + H - 1][target_idx];
            series.windows.push_back(std::move(w));
        }
    }
    if (series.windows.empty()) {
        throw EmptyInputError("make_windows: no cycle contains at least " +
                              std::to_string(window_length + horizon) + " records");
    }
    return series;
}

inline std::pair<WindowedSeries, WindowedSeries> split(const WindowedSeries& series,
                                                       const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ParameterError("split: train_fraction must lie in (0,1)");
    }
    const size_t n = series.size();
    const size_t n_train =
        static_cast<size_t>(std::floor(static_cast<double>(n) * spec.train_fraction));
    if (n_train == 0 || n_train >= n) {
        throw ParameterError("split: train_fraction " + format_double(spec.train_fraction) +
                             " produces an empty side for n=" + std::to_string(n));
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    if (spec.mode == SplitMode::shuffled) {
        Rng rng(spec.seed);
        fisher_yates(order, rng);
    }

    auto take = [&](size_t from, size_t count) {
        WindowedSeries out;
        out.window_length = series.window_length;
        out.horizon = series.horizon;
        out.feature_names = series.feature_names;
        out.windows.reserve(count);
        for (size_t i = from; i < from + count; ++i) out.windows.push_back(series.windows[order[i]]);
        return out;
    };
    return {take(0, n_train), take(n_train, n - n_train)};
}

}  // namespace voltcast

#endif  // VOLTCAST_DATASET_HPP
