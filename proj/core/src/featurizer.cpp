#include "cnnelm/featurizer.hpp"

#include <cmath>

#include "cnnelm/error.hpp"
#include "cnnelm/rng.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

namespace {

// out is n x channels for one input row of length n.
void conv_row(const double* x, std::size_t n, const FeaturizerSpec& spec, double* out) {
    const std::size_t f = spec.n_filters;
    const std::size_t half = spec.kernel_size / 2;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t c = 0; c < f; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < spec.kernel_size; ++k) {
                const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(p + k) -
                                           static_cast<std::ptrdiff_t>(half);
                if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(n)) continue;
                s += spec.filter(k, c) * x[idx];
            }
            out[p * f + c] = s + spec.filter_bias[c];
        }
    }
}

void pool_row(const double* t, std::size_t len, const FeaturizerSpec& spec, double* out) {
    const std::size_t f = spec.n_filters;
    const std::size_t pooled = len < spec.pool_size ? 0 : (len - spec.pool_size) / spec.pool_stride + 1;
    const double inv = 1.0 / static_cast<double>(spec.pool_size);
    for (std::size_t q = 0; q < pooled; ++q) {
        for (std::size_t c = 0; c < f; ++c) {
            double s = 0.0;
            for (std::size_t w = 0; w < spec.pool_size; ++w) s += t[(q * spec.pool_stride + w) * f + c];
            out[q * f + c] = s * inv;
        }
    }
}

void check_spec(const FeaturizerSpec& spec) {
    if (spec.n_filters == 0) throw ConfigError("featurizer needs at least one filter");
    if (spec.kernel_size == 0 || spec.kernel_size % 2 == 0)
        throw ConfigError("kernel size must be odd, got " + std::to_string(spec.kernel_size));
    if (spec.kernel_size > spec.n_aps)
        throw ConfigError("kernel size " + std::to_string(spec.kernel_size) + " exceeds input width " +
                          std::to_string(spec.n_aps));
    if (spec.n_aps < spec.pool_size)
        throw ConfigError("input width " + std::to_string(spec.n_aps) + " is below the pool size");
    if (spec.conv_stride != 1 || spec.pool_size == 0 || spec.pool_stride == 0)
        throw ConfigError("unsupported stride or pool configuration");
    if (spec.filters.size() != spec.kernel_size * spec.n_filters)
        throw ConfigError("filter tensor has " + std::to_string(spec.filters.size()) +
                          " weights, expected " + std::to_string(spec.kernel_size * spec.n_filters));
    if (spec.filter_bias.size() != spec.n_filters)
        throw ConfigError("filter bias length does not match the filter count");
}

void check_width(std::size_t width, const FeaturizerSpec& spec) {
    if (width != spec.n_aps)
        throw ShapeError("featurizer expects " + std::to_string(spec.n_aps) + " inputs, got " +
                         std::to_string(width));
}

}  // namespace

std::size_t FeaturizerSpec::pooled_length() const {
    return n_aps < pool_size ? 0 : (n_aps - pool_size) / pool_stride + 1;
}

double filter_init_limit(std::size_t kernel_size, std::size_t n_filters) {
    return std::sqrt(6.0 / static_cast<double>(kernel_size + n_filters));
}

FeaturizerSpec init_featurizer(std::uint64_t seed, std::size_t n_aps, const FeaturizerOverrides& overrides) {
    FeaturizerSpec spec;
    spec.n_aps = n_aps;
    spec.seed = seed;
    if (overrides.n_filters) spec.n_filters = *overrides.n_filters;
    if (overrides.kernel_size) spec.kernel_size = *overrides.kernel_size;

    if (overrides.filters) {
        spec.filters = *overrides.filters;
    } else {
        const double limit = filter_init_limit(spec.kernel_size, spec.n_filters);
        Rng rng(seed);
        spec.filters.resize(spec.kernel_size * spec.n_filters);
        for (double& w : spec.filters) w = rng.uniform(-limit, limit);
    }
    spec.filter_bias = overrides.filter_bias.value_or(std::vector<double>(spec.n_filters, 0.0));
    check_spec(spec);
    return spec;
}

Tensor3 conv1d_same(const Matrix& x, const FeaturizerSpec& spec) {
    check_width(x.cols(), spec);
    Tensor3 t(x.rows(), x.cols(), spec.n_filters);
    const std::size_t stride = x.cols() * spec.n_filters;
    for (std::size_t i = 0; i < x.rows(); ++i)
        conv_row(x.row(i).data(), x.cols(), spec, t.values.data() + i * stride);
    return t;
}

Tensor3 abs_activation(Tensor3 t) {
    for (double& v : t.values) v = std::abs(v);
    return t;
}

Tensor3 avg_pool1d_valid(const Tensor3& t, const FeaturizerSpec& spec) {
    if (t.length < spec.pool_size)
        throw ShapeError("pooling window " + std::to_string(spec.pool_size) +
                         " exceeds sequence length " + std::to_string(t.length));
    if (t.channels != spec.n_filters) throw ShapeError("pooling channel count mismatch");
    const std::size_t pooled = (t.length - spec.pool_size) / spec.pool_stride + 1;
    Tensor3 out(t.batch, pooled, t.channels);
    for (std::size_t i = 0; i < t.batch; ++i)
        pool_row(t.values.data() + i * t.length * t.channels, t.length, spec,
                 out.values.data() + i * pooled * t.channels);
    return out;
}

Matrix batch_flatten(const Tensor3& t) {
    return Matrix(t.batch, t.length * t.channels, t.values);
}

Tensor3 unflatten(const Matrix& m, std::size_t length, std::size_t channels) {
    if (length * channels != m.cols()) throw ShapeError("unflatten: width does not factor");
    Tensor3 t(m.rows(), length, channels);
    std::copy(m.data().begin(), m.data().end(), t.values.begin());
    return t;
}

Matrix featurize(const Matrix& x, const FeaturizerSpec& spec) {
    check_width(x.cols(), spec);
    const std::size_t n = x.cols();
    const std::size_t f = spec.n_filters;
    Matrix out(x.rows(), spec.output_width());
    std::vector<double> conv(n * f);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        conv_row(x.row(i).data(), n, spec, conv.data());
        for (double& v : conv) v = std::abs(v);
        pool_row(conv.data(), n, spec, out.row(i).data());
    }
    return out;
}

std::string featurizer_to_json(const FeaturizerSpec& spec) {
    nlohmann::json j;
    j["n_aps"] = spec.n_aps;
    j["n_filters"] = spec.n_filters;
    j["kernel_size"] = spec.kernel_size;
    j["conv_stride"] = spec.conv_stride;
    j["conv_padding"] = "same";
    j["pool_size"] = spec.pool_size;
    j["pool_stride"] = spec.pool_stride;
    j["pool_padding"] = "valid";
    j["pool_mode"] = "avg";
    j["activation"] = "abs";
    j["data_format"] = "channel_last";
    j["seed"] = spec.seed;
    j["filters"] = spec.filters;
    j["filter_bias"] = spec.filter_bias;
    return j.dump();
}

FeaturizerSpec featurizer_from_json(std::string_view text) {
    FeaturizerSpec spec;
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.value("conv_padding", "same") != "same" || j.value("pool_padding", "valid") != "valid" ||
            j.value("pool_mode", "avg") != "avg")
            throw SchemaError("featurizer: unsupported padding or pooling mode");
        spec.n_aps = j.at("n_aps").get<std::size_t>();
        spec.n_filters = j.at("n_filters").get<std::size_t>();
        spec.kernel_size = j.at("kernel_size").get<std::size_t>();
        spec.conv_stride = j.value("conv_stride", std::size_t{1});
        spec.pool_size = j.value("pool_size", std::size_t{2});
        spec.pool_stride = j.value("pool_stride", std::size_t{2});
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.filters = j.at("filters").get<std::vector<double>>();
        spec.filter_bias = j.at("filter_bias").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("featurizer spec: ") + e.what());
    }
    check_spec(spec);
    return spec;
}

}  // namespace cnnelm
