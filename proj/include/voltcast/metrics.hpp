#ifndef VOLTCAST_METRICS_HPP
#define VOLTCAST_METRICS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "voltcast/common.hpp"

namespace voltcast {

struct PredictionPair {
    std::vector<double> actual;
    std::vector<double> predicted;

    void validate() const {
        if (actual.empty()) throw ParameterError("PredictionPair: empty vectors");
        if (actual.size() != predicted.size()) {
            throw ShapeError("PredictionPair: actual and predicted lengths differ");
        }
        if (!all_finite(actual) || !all_finite(predicted)) {
            throw ParameterError("PredictionPair: non-finite entry");
        }
    }

    size_t size() const { return actual.size(); }
};

// How mape treats zero targets. skip_zero_targets drops those terms and
// reports how many were skipped; error throws on the first one.
enum class ZeroPolicy { error, skip_zero_targets };

struct MetricsBundle {
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> mape;  // percent; absent when no term admitted
    int mape_skipped = 0;
};

inline double mse(const PredictionPair& pair) {
    pair.validate();
    double acc = 0.0;
    for (size_t i = 0; i < pair.size(); ++i) {
        const double d = pair.actual[i] - pair.predicted[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pair.size());
}

inline double rmse(const PredictionPair& pair) { return std::sqrt(mse(pair)); }

inline double mae(const PredictionPair& pair) {
    pair.validate();
    double acc = 0.0;
    for (size_t i = 0; i < pair.size(); ++i) {
        acc += std::abs(pair.actual[i] - pair.predicted[i]);
    }
    return acc / static_cast<double>(pair.size());
}

inline std::optional<double> mape(const PredictionPair& pair,
                                  ZeroPolicy policy = ZeroPolicy::skip_zero_targets,
                                  int* skipped_out = nullptr) {
    pair.validate();
    double acc = 0.0;
    size_t admitted = 0;
    int skipped = 0;
    for (size_t i = 0; i < pair.size(); ++i) {
        if (pair.actual[i] == 0.0) {
            if (policy == ZeroPolicy::error) {
                throw ZeroTargetError("mape: zero target at index " + std::to_string(i));
            }
            ++skipped;
            continue;
        }
        acc += std::abs(pair.actual[i] - pair.predicted[i]) / std::abs(pair.actual[i]);
        ++admitted;
    }
    if (skipped_out) *skipped_out = skipped;
    if (admitted == 0) return std::nullopt;
    return 100.0 * acc / static_cast<double>(admitted);
}

inline MetricsBundle bundle(const PredictionPair& pair,
                            ZeroPolicy policy = ZeroPolicy::skip_zero_targets) {
    MetricsBundle b;
    b.mse = mse(pair);
    b.rmse = std::sqrt(b.mse);
    b.mae = mae(pair);
    b.mape = mape(pair, policy, &b.mape_skipped);
    return b;
}

// True when the bundle satisfies the identities every honestly computed
// bundle must: rmse^2 == mse and mae <= rmse.
inline bool is_internally_consistent(const MetricsBundle& b, double rel_tol = 1e-12) {
    const double scale = std::max({std::abs(b.mse), b.rmse * b.rmse, 1e-300});
    if (std::abs(b.rmse * b.rmse - b.mse) > rel_tol * scale) return false;
    return b.mae <= b.rmse * (1.0 + rel_tol) + 1e-15;
}

}  // namespace voltcast

#endif  // VOLTCAST_METRICS_HPP
