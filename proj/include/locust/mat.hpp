#pragma once

#include <cstddef>
#include <vector>

namespace locust {

using Vec = std::vector<double>;

// Dense row-major matrix. Just enough linear algebra for the LSTM; the
// shapes here are tiny (hidden dim ~32) so plain loops are plenty.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// y += M x
inline void matvec_add(const Mat& m, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        const double* row = &m.a[i * m.cols];
        for (std::size_t j = 0; j < m.cols; ++j) s += row[j] * x[j];
        y[i] += s;
    }
}

// y += M^T x
inline void matvec_transpose_add(const Mat& m, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* row = &m.a[i * m.cols];
        const double xi = x[i];
        for (std::size_t j = 0; j < m.cols; ++j) y[j] += row[j] * xi;
    }
}

// M += u v^T
inline void outer_add(Mat& m, const Vec& u, const Vec& v) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        double* row = &m.a[i * m.cols];
        const double ui = u[i];
        for (std::size_t j = 0; j < m.cols; ++j) row[j] += ui * v[j];
    }
}

inline void axpy(double alpha, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace locust
