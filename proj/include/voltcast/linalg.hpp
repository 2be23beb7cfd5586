#ifndef VOLTCAST_LINALG_HPP
#define VOLTCAST_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "voltcast/common.hpp"

namespace voltcast {

// Dense row-major matrix. Everything in this project is desk scale, so plain
// loops beat pulling in a linear-algebra dependency.
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(size_t i, size_t j) { return data[i * cols + j]; }
    double operator()(size_t i, size_t j) const { return data[i * cols + j]; }

    bool same_shape(const Matrix& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

// y = A x
inline std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& x) {
    if (x.size() != a.cols) throw ShapeError("mat_vec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (size_t i = 0; i < a.rows; ++i) {
        double acc = 0.0;
        const double* row = a.data.data() + i * a.cols;
        for (size_t j = 0; j < a.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

// y = A^T x
inline std::vector<double> mat_tvec(const Matrix& a, const std::vector<double>& x) {
    if (x.size() != a.rows) throw ShapeError("mat_tvec: dimension mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (size_t i = 0; i < a.rows; ++i) {
        const double* row = a.data.data() + i * a.cols;
        const double xi = x[i];
        for (size_t j = 0; j < a.cols; ++j) y[j] += row[j] * xi;
    }
    return y;
}

// A += alpha * u v^T
inline void add_outer(Matrix& a, double alpha, const std::vector<double>& u,
                      const std::vector<double>& v) {
    if (u.size() != a.rows || v.size() != a.cols) throw ShapeError("add_outer: dimension mismatch");
    for (size_t i = 0; i < a.rows; ++i) {
        double* row = a.data.data() + i * a.cols;
        const double f = alpha * u[i];
        for (size_t j = 0; j < a.cols; ++j) row[j] += f * v[j];
    }
}

// Solves A x = b by Gaussian elimination with partial pivoting. A is copied.
inline std::vector<double> solve_linear_system(Matrix a, std::vector<double> b) {
    const size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw ShapeError("solve_linear_system: system not square");

    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    const double pivot_tol = 1e-12 * std::max(scale, 1.0);

    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        for (size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
        }
        if (std::abs(a(pivot, k)) <= pivot_tol) {
            throw SingularSystemError(
                "linear system is singular or near-singular; if this is a ridge fit, "
                "set ridge_lambda > 0");
        }
        if (pivot != k) {
            for (size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(b[k], b[pivot]);
        }
        for (size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }

    std::vector<double> x(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace voltcast

#endif  // VOLTCAST_LINALG_HPP
