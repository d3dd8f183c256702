#include "cnnelm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cnnelm/error.hpp"

namespace cnnelm {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ShapeError(what);
}

std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Four interleaved partial sums combined pairwise. The order is fixed, so
// the result does not depend on how callers partition work.
double dot(const double* x, const double* y, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        s0 += x[k] * y[k];
        s1 += x[k + 1] * y[k + 1];
        s2 += x[k + 2] * y[k + 2];
        s3 += x[k + 3] * y[k + 3];
    }
    for (; k < n; ++k) s0 += x[k] * y[k];
    return (s0 + s1) + (s2 + s3);
}

constexpr std::size_t kGramBlock = 256;

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) throw NumericError("matrix fill value is not finite");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw ShapeError("matrix buffer has " + std::to_string(data_.size()) +
                         " elements, expected " + std::to_string(rows * cols));
    }
    if (!all_finite()) throw NumericError("matrix contains NaN or Inf");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw NumericError("matrix contains NaN or Inf");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: " + dims(a) + " times " + dims(b));
    Matrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    const std::size_t m = a.rows();
    std::size_t i = 0;
    // Four output rows share each row of b. Every c(i, j) still accumulates
    // over k in increasing order, so results match the one-row loop exactly.
    for (; i + 4 <= m; i += 4) {
        double* o0 = c.row(i).data();
        double* o1 = c.row(i + 1).data();
        double* o2 = c.row(i + 2).data();
        double* o3 = c.row(i + 3).data();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double a0 = a(i, k), a1 = a(i + 1, k), a2 = a(i + 2, k), a3 = a(i + 3, k);
            if (a0 == 0.0 && a1 == 0.0 && a2 == 0.0 && a3 == 0.0) continue;
            const double* brow = b.row(k).data();
            for (std::size_t j = 0; j < n; ++j) {
                const double bj = brow[j];
                o0[j] += a0 * bj;
                o1[j] += a1 * bj;
                o2[j] += a2 * bj;
                o3[j] += a3 * bj;
            }
        }
    }
    for (; i < m; ++i) {
        double* out = c.row(i).data();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row(k).data();
            for (std::size_t j = 0; j < n; ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("matmul_tn: " + dims(a) + "^T times " + dims(b));
    Matrix c(a.cols(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double* brow = b.row(r).data();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ari = a(r, i);
            double* out = c.row(i).data();
            for (std::size_t j = 0; j < n; ++j) out[j] += ari * brow[j];
        }
    }
    return c;
}

Matrix gram(const Matrix& a) {
    const std::size_t n = a.cols();
    Matrix g(n, n);
    std::vector<double> block(n * kGramBlock);
    for (std::size_t r0 = 0; r0 < a.rows(); r0 += kGramBlock) {
        const std::size_t len = std::min(kGramBlock, a.rows() - r0);
        for (std::size_t r = 0; r < len; ++r)
            for (std::size_t i = 0; i < n; ++i) block[i * kGramBlock + r] = a(r0 + r, i);
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = block.data() + i * kGramBlock;
            for (std::size_t j = i; j < n; ++j)
                g(i, j) += dot(xi, block.data() + j * kGramBlock, len);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "subtract: shape mismatch");
    Matrix c = a;
    auto out = c.data();
    auto rhs = b.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
    return c;
}

Matrix cholesky(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("cholesky: matrix is " + dims(a));
    if (!a.all_finite()) throw NumericError("cholesky: non-finite entries");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double* lj = l.row(j).data();
        double diag = a(j, j) - dot(lj, lj, j);
        if (!(diag > 0.0)) {
            throw NumericError("cholesky: matrix is not positive definite (pivot " +
                               std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i)
            l(i, j) = (a(i, j) - dot(l.row(i).data(), lj, j)) / ljj;
    }
    return l;
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("solve_spd: " + dims(a) + " system with " + dims(b) + " right-hand side");
    if (!b.all_finite()) throw NumericError("solve_spd: non-finite right-hand side");
    const Matrix l = cholesky(a);
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();

    // Forward substitution L·Y = B, then back substitution Lᵀ·X = Y.
    Matrix x = b;
    for (std::size_t i = 0; i < n; ++i) {
        double* xi = x.row(i).data();
        for (std::size_t k = 0; k < i; ++k) {
            const double lik = l(i, k);
            const double* xk = x.row(k).data();
            for (std::size_t j = 0; j < m; ++j) xi[j] -= lik * xk[j];
        }
        const double inv = 1.0 / l(i, i);
        for (std::size_t j = 0; j < m; ++j) xi[j] *= inv;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double* xi = x.row(ii).data();
        for (std::size_t k = ii + 1; k < n; ++k) {
            const double lki = l(k, ii);
            const double* xk = x.row(k).data();
            for (std::size_t j = 0; j < m; ++j) xi[j] -= lki * xk[j];
        }
        const double inv = 1.0 / l(ii, ii);
        for (std::size_t j = 0; j < m; ++j) xi[j] *= inv;
    }
    return x;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("inverse: matrix is " + dims(a));
    if (!a.all_finite()) throw NumericError("inverse: non-finite entries");
    const std::size_t n = a.rows();
    Matrix lu = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    double scale = 0.0;
    for (double v : a.data()) scale = std::max(scale, std::abs(v));
    const double tol = scale * static_cast<double>(n) * 1e-14;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (!(std::abs(lu(p, k)) > tol)) throw NumericError("inverse: matrix is singular");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(perm[k], perm[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }

    Matrix inv(n, n);
    std::vector<double> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = perm[i] == c ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= lu(i, k) * col[k];
            col[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = col[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * col[k];
            col[ii] = s / lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
    }
    return inv;
}

Matrix pinv(const Matrix& a) {
    if (a.empty()) throw ShapeError("pinv: empty matrix");
    if (a.rows() >= a.cols()) return matmul(inverse(gram(a)), a.transpose());
    const Matrix at = a.transpose();
    return matmul(at, inverse(gram(at)));
}

}  // namespace cnnelm
