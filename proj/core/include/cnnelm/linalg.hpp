#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cnnelm {

/// Dense row-major matrix of doubles. Construction from a buffer rejects
/// NaN/Inf; element writes through operator() are unchecked.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// a·b. Summation runs over the shared index in increasing order.
Matrix matmul(const Matrix& a, const Matrix& b);

/// aᵀ·b without materializing aᵀ.
Matrix matmul_tn(const Matrix& a, const Matrix& b);

/// aᵀ·a; the result is exactly symmetric.
Matrix gram(const Matrix& a);

double frobenius_norm(const Matrix& a);
Matrix subtract(const Matrix& a, const Matrix& b);

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// Throws NumericError if a pivot is not strictly positive.
Matrix cholesky(const Matrix& a);

/// Solves a·X = b for SPD a via Cholesky.
Matrix solve_spd(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix by LU with partial pivoting. Throws
/// NumericError when a pivot falls below a relative tolerance.
Matrix inverse(const Matrix& a);

/// Moore-Penrose pseudoinverse for full-rank inputs: (aᵀa)⁻¹aᵀ when a is
/// tall or square, aᵀ(aaᵀ)⁻¹ when wide. A singular Gram matrix is an error;
/// there is no SVD fallback.
Matrix pinv(const Matrix& a);

}  // namespace cnnelm
