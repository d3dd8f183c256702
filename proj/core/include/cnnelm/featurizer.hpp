#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cnnelm/linalg.hpp"

namespace cnnelm {

/// Fixed feature-learning block: Conv1D (same padding, stride 1) -> |x| ->
/// AvgPool1D (size 2, stride 2, valid) -> flatten, channel-last. The filters
/// are drawn once from a seed and never trained.
struct FeaturizerSpec {
    std::size_t n_aps = 0;
    std::size_t n_filters = 2;
    std::size_t kernel_size = 3;
    std::size_t conv_stride = 1;
    std::size_t pool_size = 2;
    std::size_t pool_stride = 2;
    std::uint64_t seed = 0;
    /// kernel_size x n_filters, tap-major: filters[k * n_filters + f].
    std::vector<double> filters;
    std::vector<double> filter_bias;

    double filter(std::size_t tap, std::size_t channel) const {
        return filters[tap * n_filters + channel];
    }
    std::size_t pooled_length() const;
    /// Width of the flattened feature row.
    std::size_t output_width() const { return pooled_length() * n_filters; }

    friend bool operator==(const FeaturizerSpec&, const FeaturizerSpec&) = default;
};

struct FeaturizerOverrides {
    std::optional<std::size_t> n_filters;
    std::optional<std::size_t> kernel_size;
    /// Externally supplied weights in the tap-major layout above.
    std::optional<std::vector<double>> filters;
    std::optional<std::vector<double>> filter_bias;
};

/// Half-width of the uniform filter initialization, sqrt(6 / (k + f)).
double filter_init_limit(std::size_t kernel_size, std::size_t n_filters);

/// Draws the filters from uniform(-limit, limit) with zero bias. Throws
/// ConfigError for an even kernel or one wider than the input.
FeaturizerSpec init_featurizer(std::uint64_t seed, std::size_t n_aps,
                               const FeaturizerOverrides& overrides = {});

/// N x len x channels tensor, channel-last, row-major.
struct Tensor3 {
    std::size_t batch = 0;
    std::size_t length = 0;
    std::size_t channels = 0;
    std::vector<double> values;

    Tensor3() = default;
    Tensor3(std::size_t n, std::size_t len, std::size_t ch)
        : batch(n), length(len), channels(ch), values(n * len * ch, 0.0) {}

    double& at(std::size_t i, std::size_t p, std::size_t c) {
        return values[(i * length + p) * channels + c];
    }
    double at(std::size_t i, std::size_t p, std::size_t c) const {
        return values[(i * length + p) * channels + c];
    }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

Tensor3 conv1d_same(const Matrix& x, const FeaturizerSpec& spec);
Tensor3 abs_activation(Tensor3 t);
Tensor3 avg_pool1d_valid(const Tensor3& t, const FeaturizerSpec& spec);
Matrix batch_flatten(const Tensor3& t);
Tensor3 unflatten(const Matrix& m, std::size_t length, std::size_t channels);

/// The composed block, evaluated one row at a time. Bitwise equal to
/// running the four stages above in sequence.
Matrix featurize(const Matrix& x, const FeaturizerSpec& spec);

std::string featurizer_to_json(const FeaturizerSpec& spec);
FeaturizerSpec featurizer_from_json(std::string_view text);

}  // namespace cnnelm
