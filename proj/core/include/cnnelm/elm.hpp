#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/linalg.hpp"

namespace cnnelm {

/// Joint (building, floor) classes seen in training, sorted by building then
/// floor. Class index i is the i-th output column of the ELM.
class ClassCodebook {
public:
    ClassCodebook() = default;
    /// `classes` must be strictly increasing.
    explicit ClassCodebook(std::vector<Label> classes);

    static ClassCodebook from_labels(std::span<const Label> labels);

    std::size_t size() const noexcept { return classes_.size(); }
    const Label& at(std::size_t index) const { return classes_.at(index); }
    std::optional<std::size_t> index_of(const Label& label) const;
    const std::vector<Label>& classes() const noexcept { return classes_; }

    friend bool operator==(const ClassCodebook&, const ClassCodebook&) = default;

private:
    std::vector<Label> classes_;
};

/// Random input layer: `weights` is d x L (column i feeds neuron i).
struct HiddenLayer {
    Matrix weights;
    std::vector<double> bias;

    std::size_t inputs() const noexcept { return weights.rows(); }
    std::size_t neurons() const noexcept { return weights.cols(); }

    friend bool operator==(const HiddenLayer&, const HiddenLayer&) = default;
};

/// Uniform(-1, 1) weights, drawn neuron by neuron (one column of d values
/// each), followed by the L biases.
HiddenLayer init_hidden(std::uint64_t seed, std::size_t inputs, std::size_t neurons);

/// 2 / (1 + exp(-2z)) - 1, clamped to +-1 beyond |z| > 20.
double tansig(double z);
void tansig_inplace(Matrix& m);

/// H[j][i] = tansig(w_i . x_j + b_i).
Matrix hidden_map(const Matrix& x, const HiddenLayer& layer);

/// One-hot target rows. Throws ConfigError naming any label the codebook
/// does not contain.
Matrix encode_targets(std::span<const Label> labels, const ClassCodebook& codebook);

/// Regularized least squares: solves (HᵀH + I/c) beta = HᵀT by Cholesky.
Matrix fit_output_weights(const Matrix& h, const Matrix& t, double c);

/// Row-wise argmax; the lowest column wins ties.
std::vector<std::size_t> argmax_rows(const Matrix& scores);

/// Symmetric per-tensor int8 quantization.
struct QuantizedTensor {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int8_t> values;
    double scale = 1.0;

    double dequantized(std::size_t i) const { return static_cast<double>(values[i]) * scale; }
    Matrix dequantize() const;

    friend bool operator==(const QuantizedTensor&, const QuantizedTensor&) = default;
};

/// scale = max|x| / 127 (1 for an all-zero tensor); q = round(x / scale)
/// with halves rounded away from zero, clamped to [-127, 127].
QuantizedTensor quantize_tensor(std::span<const double> values, std::size_t rows, std::size_t cols);

struct QuantizedWeights {
    QuantizedTensor weights;
    QuantizedTensor bias;
    QuantizedTensor beta;

    friend bool operator==(const QuantizedWeights&, const QuantizedWeights&) = default;
};

struct ElmConfig {
    std::size_t hidden_neurons = 0;
    double regularization = 1.0;
    std::uint64_t seed = 0;
};

struct ElmModel {
    HiddenLayer hidden;
    Matrix beta;
    double regularization = 1.0;
    ClassCodebook codebook;
    std::uint64_t seed = 0;
    std::optional<QuantizedWeights> quantized;

    std::size_t hidden_neurons() const noexcept { return hidden.neurons(); }
    std::size_t inputs() const noexcept { return hidden.inputs(); }
};

ElmModel train_elm(const Matrix& x, std::span<const Label> labels, const ElmConfig& config);

/// Output scores H·beta, one column per class.
Matrix elm_scores(const Matrix& x, const ElmModel& model);
std::vector<Label> predict(const Matrix& x, const ElmModel& model);

/// Returns a copy carrying int8 versions of W, b and beta.
ElmModel quantize(ElmModel model);

/// Inference with the int8 tensors: dot products over integer weights,
/// rescaled per tensor; tansig and the accumulators stay in double.
/// Throws ConfigError when the model was never quantized.
std::vector<Label> predict_quantized(const Matrix& x, const ElmModel& model);

struct SweepEntry {
    std::size_t hidden_neurons = 0;
    double floor_hit = 0.0;
    std::optional<double> building_hit;
};

struct SweepResult {
    std::size_t selected = 0;
    std::vector<SweepEntry> table;
};

struct SweepOptions {
    double regularization = 1.0;
    std::size_t max_neurons = 0;
    std::size_t step = 5;
    std::uint64_t seed = 0;
    bool multi_building = false;
    std::function<void(const SweepEntry&)> on_entry;
};

/// Trains at L = 5, 5 + step, ... up to max_neurons and keeps the smallest
/// L with the best validation floor hit rate.
SweepResult sweep_hidden(const Matrix& train_x, std::span<const Label> train_labels,
                         const Matrix& val_x, std::span<const Label> val_labels,
                         const SweepOptions& options);

}  // namespace cnnelm
