#ifndef VOLTCAST_COMMON_HPP
#define VOLTCAST_COMMON_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace voltcast {

// Error hierarchy. Every library failure throws one of these; the CLI maps
// them onto its exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Invalid parameter values, violated preconditions, bad configuration.
class ParameterError : public Error {
public:
    using Error::Error;
};

class ZeroVarianceError : public Error {
public:
    using Error::Error;
};

class UnknownFeatureError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class SingularSystemError : public Error {
public:
    using Error::Error;
};

class ZeroTargetError : public Error {
public:
    using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& msg, int epoch) : Error(msg), epoch_(epoch) {}
    int epoch() const { return epoch_; }

private:
    int epoch_;
};

using Rng = std::mt19937_64;

// FNV-1a, used to derive stable per-component sub-seeds from the global seed.
inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline uint64_t derive_seed(uint64_t global_seed, std::string_view component) {
    return global_seed ^ fnv1a64(component);
}

// Uniform draw in [0,1) built from the raw 64-bit output so results do not
// depend on the standard library's distribution implementation.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

// Box-Muller without the cached second value; two raw draws per sample.
inline double gaussian(Rng& rng, double mean, double stddev) {
    double u1 = uniform_unit(rng);
    double u2 = uniform_unit(rng);
    while (u1 <= 0.0) u1 = uniform_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
}

inline uint64_t uniform_index(Rng& rng, uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

// Explicit Fisher-Yates; std::shuffle's swap sequence is unspecified and
// would break byte-identical reruns across standard libraries.
template <typename T>
void fisher_yates(std::vector<T>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Shortest round-trip decimal form, locale independent.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return std::string(buf);
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace voltcast

#endif  // VOLTCAST_COMMON_HPP
