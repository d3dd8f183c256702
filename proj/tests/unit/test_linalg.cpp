#include <gtest/gtest.h>

#include <cmath>

#include "cnnelm/error.hpp"
#include "cnnelm/linalg.hpp"
#include "oracles.hpp"

using namespace cnnelm;

namespace {

double max_diff(const Matrix& a, const Matrix& b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a.data()[i] - b.data()[i]));
    return d;
}

}  // namespace

TEST(Matrix, RejectsNonFiniteBuffers) {
    EXPECT_THROW(Matrix(1, 2, std::vector<double>{1.0, NAN}), NumericError);
    EXPECT_THROW(Matrix(1, 1, std::vector<double>{INFINITY}), NumericError);
    EXPECT_THROW(Matrix(2, 2, std::vector<double>{1.0}), ShapeError);
}

TEST(Matrix, InitializerListAndTranspose) {
    const Matrix a{{1, 2, 3}, {4, 5, 6}};
    const Matrix t = a.transpose();
    EXPECT_EQ(t.rows(), 3u);
    EXPECT_EQ(t(2, 1), 6.0);
    EXPECT_EQ(t.transpose(), a);
}

TEST(Matmul, DotProduct) {
    const Matrix c = matmul(Matrix{{1, 2}}, Matrix{{3}, {4}});
    ASSERT_EQ(c.rows(), 1u);
    ASSERT_EQ(c.cols(), 1u);
    EXPECT_EQ(c(0, 0), 11.0);
}

TEST(Matmul, ShapeMismatchThrows) {
    EXPECT_THROW(matmul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
    EXPECT_THROW(matmul_tn(Matrix(2, 3), Matrix(3, 3)), ShapeError);
}

TEST(Matmul, MatchesTripleLoopOracle) {
    Rng rng(1);
    const Matrix a = oracle::random_matrix(rng, 5, 4);
    const Matrix b = oracle::random_matrix(rng, 4, 3);
    EXPECT_LE(max_diff(matmul(a, b), oracle::matmul(a, b)), 1e-12);
}

TEST(Matmul, PropertyIdentityAndDistributivity) {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.below(12), k = 1 + rng.below(12), n = 1 + rng.below(12);
        const Matrix a = oracle::random_matrix(rng, m, k);
        const Matrix b = oracle::random_matrix(rng, k, n);
        const Matrix c = oracle::random_matrix(rng, k, n);
        EXPECT_LE(max_diff(matmul(Matrix::identity(m), a), a), 0.0);
        EXPECT_LE(max_diff(matmul(a, Matrix::identity(k)), a), 0.0);
        Matrix bc = b;
        for (std::size_t i = 0; i < bc.size(); ++i) bc.data()[i] += c.data()[i];
        Matrix sum = matmul(a, b);
        const Matrix ac = matmul(a, c);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += ac.data()[i];
        EXPECT_LE(max_diff(matmul(a, bc), sum), 1e-12);
        EXPECT_LE(max_diff(matmul_tn(a.transpose(), b), oracle::matmul(a, b)), 1e-12);
    }
}

TEST(Gram, SymmetricAndMatchesOracle) {
    Rng rng(3);
    // Wider than one block so the blocked path is exercised.
    const Matrix a = oracle::random_matrix(rng, 40, 300);
    const Matrix g = gram(a);
    EXPECT_LE(max_diff(g, oracle::matmul(oracle::transpose(a), a)), 1e-11);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) ASSERT_EQ(g(i, j), g(j, i));
}

TEST(Matmul, Deterministic) {
    Rng rng(4);
    const Matrix a = oracle::random_matrix(rng, 33, 517);
    const Matrix b = oracle::random_matrix(rng, 517, 9);
    EXPECT_EQ(matmul(a, b), matmul(a, b));
    EXPECT_EQ(gram(a), gram(a));
}

TEST(SolveSpd, IdentityReturnsRhs) {
    const Matrix b{{1, -2}, {3, 4}, {5, 6}};
    EXPECT_EQ(solve_spd(Matrix::identity(3), b), b);
}

TEST(SolveSpd, Diagonal) {
    const Matrix x = solve_spd(Matrix{{2, 0}, {0, 4}}, Matrix{{2}, {8}});
    EXPECT_DOUBLE_EQ(x(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(x(1, 0), 2.0);
}

TEST(SolveSpd, RegularizedGramMatchesGaussJordanOracle) {
    Rng rng(5);
    const Matrix h = oracle::random_matrix(rng, 20, 7);
    Matrix a = oracle::matmul(oracle::transpose(h), h);
    for (std::size_t i = 0; i < 7; ++i) a(i, i) += 1.0 / 0.1;
    const Matrix b = oracle::random_matrix(rng, 7, 3);
    EXPECT_LE(max_diff(solve_spd(a, b), oracle::matmul(oracle::inverse(a), b)), 1e-9);
}

TEST(SolveSpd, PropertyResidual) {
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(25), m = 1 + rng.below(4);
        const Matrix h = oracle::random_matrix(rng, n + 5, n);
        Matrix a = gram(h);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.01;
        const Matrix b = oracle::random_matrix(rng, n, m);
        const Matrix x = solve_spd(a, b);
        EXPECT_LE(frobenius_norm(subtract(matmul(a, x), b)) / frobenius_norm(b), 1e-8);
    }
}

TEST(Cholesky, RejectsIndefinite) {
    EXPECT_THROW(cholesky(Matrix{{1, 2}, {2, 1}}), NumericError);
    EXPECT_THROW(cholesky(Matrix(2, 3)), ShapeError);
}

TEST(Cholesky, ReconstructsInput) {
    const Matrix a{{4, 2, 0.4}, {2, 5, 1}, {0.4, 1, 3}};
    const Matrix l = cholesky(a);
    EXPECT_EQ(l(0, 1), 0.0);
    EXPECT_LE(max_diff(matmul(l, l.transpose()), a), 1e-14);
}

TEST(Inverse, SingularThrows) {
    EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), NumericError);
}

TEST(Pinv, OrthonormalColumnsGiveTranspose) {
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix q{{s, 0}, {s, 0}, {0, 1}};
    EXPECT_LE(max_diff(pinv(q), q.transpose()), 1e-14);
}

TEST(Pinv, SquareInvertibleGivesInverse) {
    const Matrix a{{2, 1}, {1, 3}};
    EXPECT_LE(max_diff(pinv(a), oracle::inverse(a)), 1e-14);
}

TEST(Pinv, TallLeftInverse) {
    Rng rng(7);
    const Matrix h = oracle::random_matrix(rng, 8, 3);
    EXPECT_LE(max_diff(matmul(pinv(h), h), Matrix::identity(3)), 1e-9);
}

TEST(Pinv, RankDeficientThrows) {
    EXPECT_THROW(pinv(Matrix{{1, 2}, {2, 4}, {3, 6}}), NumericError);
}

TEST(Pinv, PropertyMoorePenroseIdentities) {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + rng.below(10), c = 1 + rng.below(10);
        const Matrix h = oracle::random_matrix(rng, r, c);
        const Matrix p = pinv(h);
        EXPECT_LE(max_diff(matmul(matmul(h, p), h), h), 1e-8) << r << "x" << c;
        EXPECT_LE(max_diff(matmul(matmul(p, h), p), p), 1e-8) << r << "x" << c;
    }
}
