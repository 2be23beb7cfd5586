#ifndef VOLTCAST_SYNTHGEN_HPP
#define VOLTCAST_SYNTHGEN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "voltcast/common.hpp"
#include "voltcast/dataset.hpp"

namespace voltcast {

// First-order equivalent-circuit cell: V = OCV(SOC) + I*R, with resistance
// growing per cycle and drifting with temperature, and Joule self-heating
// against linear cooling.
struct BatteryModelParams {
    double capacity_Ah = 2.5;
    double r0_ohm = 0.05;          // internal resistance at ambient, cycle 1
    double r_temp_coeff = -0.004;  // fractional resistance change per degC above ambient
    double r_aging_coeff = 0.002;  // fractional resistance growth per cycle
    std::vector<double> ocv_coeffs = {3.0, 1.2, -0.8, 0.8};  // volts as polynomial in SOC
    double ambient_C = 25.0;
    double thermal_mass = 2e-4;   // degC per joule
    double cooling_rate = 0.001;  // per second
    double noise_std_V = 0.0;
    uint64_t seed = 0;

    double ocv(double soc) const {
        double v = 0.0;
        for (size_t k = ocv_coeffs.size(); k-- > 0;) v = v * soc + ocv_coeffs[k];
        return v;
    }

    void validate() const {
        if (!(capacity_Ah > 0.0)) throw ParameterError("capacity_Ah must be positive");
        if (!(r0_ohm > 0.0)) throw ParameterError("r0_ohm must be positive");
        if (r_aging_coeff < 0.0) throw ParameterError("r_aging_coeff must be non-negative");
        if (!(thermal_mass > 0.0)) throw ParameterError("thermal_mass must be positive");
        if (cooling_rate < 0.0) throw ParameterError("cooling_rate must be non-negative");
        if (noise_std_V < 0.0) throw ParameterError("noise_std_V must be non-negative");
        if (ocv_coeffs.empty()) throw ParameterError("ocv_coeffs must not be empty");
        // Monotonicity of the OCV curve, checked on a 1001-point grid.
        double prev = ocv(0.0);
        for (int k = 1; k <= 1000; ++k) {
            const double v = ocv(static_cast<double>(k) / 1000.0);
            if (v < prev) throw ParameterError("ocv_coeffs is not monotone non-decreasing on [0,1]");
            prev = v;
        }
    }
};

// Charging current as a function of (step index, SOC).
struct CurrentProfile {
    enum class Kind { constant, ramp, cc_taper };

    Kind kind = Kind::cc_taper;
    double amps = 2.0;              // constant level, ramp start, or CC level
    double end_amps = 2.0;          // ramp end (reached at SOC = 1)
    double taper_start_soc = 0.8;   // cc_taper: linear taper begins here

    static CurrentProfile constant(double amps) {
        CurrentProfile p;
        p.kind = Kind::constant;
        p.amps = amps;
        return p;
    }

    static CurrentProfile ramp(double start_amps, double end_amps) {
        CurrentProfile p;
        p.kind = Kind::ramp;
        p.amps = start_amps;
        p.end_amps = end_amps;
        return p;
    }

    static CurrentProfile cc_taper(double amps, double taper_start_soc = 0.8) {
        CurrentProfile p;
        p.kind = Kind::cc_taper;
        p.amps = amps;
        p.taper_start_soc = taper_start_soc;
        return p;
    }

    double at(double soc) const {
        switch (kind) {
            case Kind::constant:
                return amps;
            case Kind::ramp:
                return amps + (end_amps - amps) * soc;
            case Kind::cc_taper:
                if (soc < taper_start_soc) return amps;
                // Tapers to 20% of the CC level at full charge so cycles finish.
                return amps * (1.0 - 0.8 * (soc - taper_start_soc) /
                                         std::max(1e-9, 1.0 - taper_start_soc));
        }
        return amps;
    }
};

struct SimResult {
    RawTable table;
    std::vector<long long> truncated_cycles;  // cycles that hit the step cap
    std::vector<double> soc;                  // SOC per emitted row, for diagnostics
};

using CurrentFn = std::function<double(long long step, double soc)>;

inline SimResult simulate_charge_cycles(const BatteryModelParams& params, int n_cycles,
                                        double dt_s, const CurrentFn& current,
                                        long long max_steps_per_cycle = 100000) {
    params.validate();
    if (n_cycles < 1) throw ParameterError("n_cycles must be >= 1");
    if (!(dt_s > 0.0)) throw ParameterError("dt_s must be positive");
    if (max_steps_per_cycle < 1) throw ParameterError("max_steps_per_cycle must be >= 1");

    SimResult result;
    result.table.columns = {required_columns().begin(), required_columns().end()};

    for (int cycle = 1; cycle <= n_cycles; ++cycle) {
        // Independent per-cycle noise stream so cycles can be regenerated in
        // any batching order.
        Rng rng(params.seed ^ static_cast<uint64_t>(cycle));
        double soc = 0.05;
        double temp = params.ambient_C;
        const double aging = 1.0 + params.r_aging_coeff * static_cast<double>(cycle - 1);

        for (long long step = 0;; ++step) {
            if (soc >= 1.0) break;
            if (step >= max_steps_per_cycle) {
                result.truncated_cycles.push_back(cycle);
                break;
            }
            const double amps = current(step, soc);
            soc = std::clamp(soc + amps * dt_s / (3600.0 * params.capacity_Ah), 0.0, 1.0);
            const double resistance =
                params.r0_ohm * aging * (1.0 + params.r_temp_coeff * (temp - params.ambient_C));
            double volts = params.ocv(soc) + amps * resistance;
            if (params.noise_std_V > 0.0) volts += gaussian(rng, 0.0, params.noise_std_V);

            result.table.values.push_back({static_cast<double>(cycle),
                                           static_cast<double>(step) * dt_s, volts, amps, temp});
            result.table.missing.push_back(std::vector<uint8_t>(5, 0));
            result.soc.push_back(soc);

            temp += params.thermal_mass * amps * amps * resistance * dt_s -
                    params.cooling_rate * (temp - params.ambient_C) * dt_s;
        }
    }
    if (result.table.n_rows() == 0) throw EmptyInputError("simulation produced no rows");
    return result;
}

inline SimResult simulate_charge_cycles(const BatteryModelParams& params, int n_cycles,
                                        double dt_s, const CurrentProfile& profile,
                                        long long max_steps_per_cycle = 100000) {
    return simulate_charge_cycles(
        params, n_cycles, dt_s,
        [&profile](long long, double soc) { return profile.at(soc); }, max_steps_per_cycle);
}

// Masks a seeded uniform selection of floor(fraction * eligible) non-key
// cells. Key columns (cycle_number, time_s) are never masked.
inline RawTable inject_missing(const RawTable& input, double fraction, uint64_t seed) {
    if (input.n_rows() == 0) throw EmptyInputError("inject_missing: empty table");
    if (fraction < 0.0 || fraction >= 1.0) {
        throw ParameterError("inject_missing: fraction must lie in [0,1)");
    }

    std::vector<std::pair<size_t, size_t>> eligible;
    for (size_t j = 0; j < input.n_cols(); ++j) {
        if (input.columns[j] == "cycle_number" || input.columns[j] == "time_s") continue;
        for (size_t i = 0; i < input.n_rows(); ++i) eligible.emplace_back(i, j);
    }
    const size_t k =
        static_cast<size_t>(std::floor(fraction * static_cast<double>(eligible.size())));

    RawTable table = input;
    if (k == 0) return table;
    Rng rng(seed);
    fisher_yates(eligible, rng);
    for (size_t idx = 0; idx < k; ++idx) {
        table.missing[eligible[idx].first][eligible[idx].second] = 1;
    }
    return table;
}

}  // namespace voltcast

#endif  // VOLTCAST_SYNTHGEN_HPP
