#pragma once

// Slow, obviously-correct reference implementations used to derive and
// check expected values. Nothing here calls into the production linalg,
// featurizer or knn code.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/featurizer.hpp"
#include "cnnelm/linalg.hpp"
#include "cnnelm/rng.hpp"

namespace oracle {

using cnnelm::Label;
using cnnelm::Matrix;

inline Matrix random_matrix(cnnelm::Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
    return m;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("oracle::matmul shape");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
            c(i, j) = static_cast<double>(s);
        }
    return c;
}

/// Gauss-Jordan elimination with full row pivoting on [A | I].
inline Matrix inverse(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("oracle::inverse shape");
    std::vector<std::vector<long double>> m(n, std::vector<long double>(2 * n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
        m[i][n + i] = 1.0L;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0L) throw std::runtime_error("oracle::inverse singular");
        std::swap(m[piv], m[col]);
        const long double p = m[col][col];
        for (auto& v : m[col]) v /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0.0L) continue;
            const long double f = m[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = static_cast<double>(m[i][n + j]);
    return inv;
}

/// argmin ||H beta - T||^2 + (1/c)||beta||^2 as the ordinary least-squares
/// solution of the augmented system [H; I/sqrt(c)] beta = [T; 0].
inline Matrix ridge(const Matrix& h, const Matrix& t, double c) {
    const std::size_t n = h.rows(), l = h.cols(), m = t.cols();
    Matrix a(n + l, l), b(n + l, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < l; ++j) a(i, j) = h(i, j);
        for (std::size_t j = 0; j < m; ++j) b(i, j) = t(i, j);
    }
    const double shift = 1.0 / std::sqrt(c);
    for (std::size_t j = 0; j < l; ++j) a(n + j, j) = shift;
    const Matrix at = oracle::transpose(a);
    return oracle::matmul(oracle::inverse(oracle::matmul(at, a)), oracle::matmul(at, b));
}

/// Gradient of ||H beta - T||^2 + (1/c)||beta||^2.
inline Matrix ridge_gradient(const Matrix& h, const Matrix& t, const Matrix& beta, double c) {
    Matrix r = oracle::matmul(h, beta);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= t(i, j);
    Matrix g = oracle::matmul(oracle::transpose(h), r);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = 2.0 * g(i, j) + 2.0 / c * beta(i, j);
    return g;
}

inline double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.data()) v = std::max(v, std::fabs(x));
    return v;
}

inline double relative_frobenius(const Matrix& got, const Matrix& want) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < want.size(); ++i) {
        const long double d = static_cast<long double>(got.data()[i]) - want.data()[i];
        num += d * d;
        den += static_cast<long double>(want.data()[i]) * want.data()[i];
    }
    return den == 0.0L ? static_cast<double>(std::sqrt(num)) : static_cast<double>(std::sqrt(num / den));
}

/// Exhaustive nearest-neighbour scan with an explicit distance table.
inline std::size_t nearest(const Matrix& points, const std::vector<double>& q) {
    std::size_t best = 0;
    long double best_d = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < points.rows(); ++i) {
        long double d = 0.0L;
        for (std::size_t j = 0; j < points.cols(); ++j) {
            const long double diff = static_cast<long double>(points(i, j)) - q[j];
            d += diff * diff;
        }
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

/// Conv1D (same, zero bias) -> |x| -> AvgPool(2, 2, valid) -> flatten,
/// written directly from the definitions.
inline Matrix featurize(const Matrix& x, const cnnelm::FeaturizerSpec& spec) {
    const std::size_t n = x.cols(), f = spec.n_filters, k = spec.kernel_size, half = k / 2;
    const std::size_t pooled = n / 2;
    Matrix out(x.rows(), pooled * f);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::vector<std::vector<double>> conv(n, std::vector<double>(f, 0.0));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t ch = 0; ch < f; ++ch) {
                double s = spec.filter_bias[ch];
                for (std::size_t t = 0; t < k; ++t) {
                    const long pos = static_cast<long>(p + t) - static_cast<long>(half);
                    if (pos < 0 || pos >= static_cast<long>(n)) continue;
                    s += x(r, static_cast<std::size_t>(pos)) * spec.filters[t * f + ch];
                }
                conv[p][ch] = std::fabs(s);
            }
        for (std::size_t p = 0; p < pooled; ++p)
            for (std::size_t ch = 0; ch < f; ++ch) out(r, p * f + ch) = (conv[2 * p][ch] + conv[2 * p + 1][ch]) / 2.0;
    }
    return out;
}

/// tanh(X W + b) with the weights given explicitly.
inline Matrix hidden(const Matrix& x, const Matrix& w, const std::vector<double>& b) {
    Matrix h = oracle::matmul(x, w);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = std::tanh(h(i, j) + b[j]);
    return h;
}

inline std::vector<std::size_t> argmax_rows(const Matrix& s) {
    std::vector<std::size_t> out(s.rows(), 0);
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 1; j < s.cols(); ++j)
            if (s(i, j) > s(i, out[i])) out[i] = j;
    return out;
}

inline double percent_equal(const std::vector<Label>& a, const std::vector<Label>& b, bool floor_only) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        hits += floor_only ? (a[i].floor == b[i].floor) : (a[i].building == b[i].building);
    return 100.0 * static_cast<double>(hits) / static_cast<double>(a.size());
}

}  // namespace oracle
