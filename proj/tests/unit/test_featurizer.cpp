#include <gtest/gtest.h>

#include <cmath>

#include "cnnelm/dataset.hpp"
#include "cnnelm/error.hpp"
#include "cnnelm/featurizer.hpp"
#include "oracles.hpp"

using namespace cnnelm;

namespace {

// One-filter spec with the given taps.
FeaturizerSpec taps(std::vector<double> k, std::size_t n_aps) {
    FeaturizerOverrides ov;
    ov.n_filters = 1;
    ov.kernel_size = k.size();
    ov.filters = std::move(k);
    return init_featurizer(0, n_aps, ov);
}

}  // namespace

TEST(InitFeaturizer, Deterministic) {
    EXPECT_EQ(init_featurizer(42, 520), init_featurizer(42, 520));
    EXPECT_NE(init_featurizer(42, 520).filters, init_featurizer(43, 520).filters);
}

TEST(InitFeaturizer, DefaultShapeAndLimit) {
    const auto s = init_featurizer(1, 10);
    EXPECT_EQ(s.filters.size(), 6u);
    EXPECT_EQ(s.filter_bias, (std::vector<double>{0.0, 0.0}));
    EXPECT_NEAR(filter_init_limit(3, 2), 1.0954451150103321, 1e-15);
    for (double w : s.filters) EXPECT_LT(std::fabs(w), filter_init_limit(3, 2));
}

TEST(InitFeaturizer, RejectsBadKernels) {
    FeaturizerOverrides even;
    even.kernel_size = 4;
    EXPECT_THROW(init_featurizer(1, 10, even), ConfigError);
    FeaturizerOverrides wide;
    wide.kernel_size = 11;
    EXPECT_THROW(init_featurizer(1, 10, wide), ConfigError);
}

TEST(Conv1d, IdentityKernel) {
    const Matrix x{{1, -2, 3, 4}};
    const Tensor3 t = conv1d_same(x, taps({0, 1, 0}, 4));
    for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(t.at(0, p, 0), x(0, p));
}

TEST(Conv1d, BoxKernelWithZeroPadding) {
    const Tensor3 t = conv1d_same(Matrix{{1, 2, 3}}, taps({1, 1, 1}, 3));
    EXPECT_EQ(t.at(0, 0, 0), 3.0);
    EXPECT_EQ(t.at(0, 1, 0), 6.0);
    EXPECT_EQ(t.at(0, 2, 0), 5.0);
}

TEST(Conv1d, ZeroInputZeroOutputAndWidthCheck) {
    const auto s = init_featurizer(3, 8);
    for (double v : conv1d_same(Matrix(2, 8), s).values) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(conv1d_same(Matrix(2, 7), s), ShapeError);
}

TEST(Conv1d, PropertyLinearBeforeAbs) {
    Rng rng(2);
    const auto s = init_featurizer(9, 31);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = oracle::random_matrix(rng, 3, 31);
        const double alpha = rng.uniform(-4.0, 4.0);
        Matrix ax = x;
        for (double& v : ax.data()) v *= alpha;
        const Tensor3 a = conv1d_same(x, s), b = conv1d_same(ax, s);
        for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(b.values[i], alpha * a.values[i], 1e-12);
    }
}

TEST(Abs, Values) {
    Tensor3 t(1, 3, 1);
    t.values = {-3.0, 0.0, 2.5};
    EXPECT_EQ(abs_activation(t).values, (std::vector<double>{3.0, 0.0, 2.5}));
}

TEST(AvgPool, EvenAndOddLengths) {
    const auto s = taps({0, 1, 0}, 4);
    Tensor3 t(1, 4, 1);
    t.values = {1, 3, 5, 7};
    EXPECT_EQ(avg_pool1d_valid(t, s).values, (std::vector<double>{2, 6}));
    Tensor3 odd(1, 3, 1);
    odd.values = {1, 3, 5};
    const Tensor3 p = avg_pool1d_valid(odd, s);
    EXPECT_EQ(p.length, 1u);
    EXPECT_EQ(p.values, (std::vector<double>{2}));
    Tensor3 c(1, 6, 1);
    c.values.assign(6, 0.7);
    for (double v : avg_pool1d_valid(c, s).values) EXPECT_DOUBLE_EQ(v, 0.7);
    EXPECT_THROW(avg_pool1d_valid(Tensor3(1, 1, 1), s), ShapeError);
}

TEST(Flatten, ChannelLastLayout) {
    Tensor3 t(1, 2, 2);
    t.values = {1, 2, 3, 4};  // [[a, b], [c, d]]
    const Matrix m = batch_flatten(t);
    EXPECT_EQ(m, (Matrix{{1, 2, 3, 4}}));
    EXPECT_EQ(unflatten(m, 2, 2), t);
    const Matrix flat = batch_flatten(Tensor3(2, 3, 2));
    for (double v : flat.data()) EXPECT_EQ(v, 0.0);
}

TEST(Featurize, ShapeLawOnRegistryWidths) {
    for (const auto& name : DatasetRegistry::with_builtins().names()) {
        const std::size_t n = DatasetRegistry::with_builtins().lookup(name).n_aps;
        const auto s = init_featurizer(1, n);
        EXPECT_EQ(s.output_width(), n / 2 * 2) << name;
        EXPECT_EQ(featurize(Matrix(1, n, 0.3), s).cols(), n / 2 * 2) << name;
    }
    EXPECT_EQ(init_featurizer(1, 520).output_width(), 520u);
}

TEST(Featurize, IdentityKernelsDuplicateChannels) {
    FeaturizerOverrides ov;
    ov.filters = std::vector<double>{0, 0, 1, 1, 0, 0};
    const auto s = init_featurizer(0, 4, ov);
    const Matrix f = featurize(Matrix{{-1, 3, -5, 7}}, s);
    EXPECT_EQ(f, (Matrix{{2, 2, 6, 6}}));
    const Matrix flat = featurize(Matrix(3, 4), s);
    for (double v : flat.data()) EXPECT_EQ(v, 0.0);
}

TEST(Featurize, MatchesStagedPipelineAndOracle) {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + rng.below(60);
        FeaturizerOverrides ov;
        ov.kernel_size = 1 + 2 * rng.below(2);
        ov.n_filters = 1 + rng.below(3);
        const auto s = init_featurizer(trial, n, ov);
        const Matrix x = oracle::random_matrix(rng, 4, n, 0.0, 1.0);
        const Matrix fused = featurize(x, s);
        const Matrix staged = batch_flatten(avg_pool1d_valid(abs_activation(conv1d_same(x, s)), s));
        EXPECT_EQ(fused, staged);
        const Matrix o = oracle::featurize(x, s);
        for (std::size_t i = 0; i < o.size(); ++i) EXPECT_NEAR(fused.data()[i], o.data()[i], 1e-14);
        for (double v : fused.data()) EXPECT_GE(v, 0.0);
    }
}

TEST(Featurize, JsonRoundTrip) {
    const auto s = init_featurizer(77, 33);
    EXPECT_EQ(featurizer_from_json(featurizer_to_json(s)), s);
}
