#include "cnnelm/elm.hpp"

#include <algorithm>
#include <cmath>

#include "cnnelm/error.hpp"
#include "cnnelm/eval.hpp"
#include "cnnelm/rng.hpp"

namespace cnnelm {

ClassCodebook::ClassCodebook(std::vector<Label> classes) : classes_(std::move(classes)) {
    for (std::size_t i = 1; i < classes_.size(); ++i)
        if (!(classes_[i - 1] < classes_[i]))
            throw ConfigError("codebook classes must be sorted and distinct");
}

ClassCodebook ClassCodebook::from_labels(std::span<const Label> labels) {
    std::vector<Label> classes(labels.begin(), labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return ClassCodebook(std::move(classes));
}

std::optional<std::size_t> ClassCodebook::index_of(const Label& label) const {
    const auto it = std::lower_bound(classes_.begin(), classes_.end(), label);
    if (it == classes_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - classes_.begin());
}

HiddenLayer init_hidden(std::uint64_t seed, std::size_t inputs, std::size_t neurons) {
    if (inputs == 0 || neurons == 0) throw ConfigError("hidden layer needs positive input and neuron counts");
    Rng rng(seed);
    HiddenLayer layer{Matrix(inputs, neurons), std::vector<double>(neurons)};
    for (std::size_t i = 0; i < neurons; ++i)
        for (std::size_t k = 0; k < inputs; ++k) layer.weights(k, i) = rng.uniform(-1.0, 1.0);
    for (double& b : layer.bias) b = rng.uniform(-1.0, 1.0);
    return layer;
}

double tansig(double z) {
    if (z > 20.0) return 1.0;
    if (z < -20.0) return -1.0;
    return 2.0 / (1.0 + std::exp(-2.0 * z)) - 1.0;
}

void tansig_inplace(Matrix& m) {
    for (double& v : m.data()) v = tansig(v);
}

namespace {

void check_inputs(const Matrix& x, std::size_t expected) {
    if (x.cols() != expected)
        throw ShapeError("model expects " + std::to_string(expected) + " features, got " +
                         std::to_string(x.cols()));
}

std::vector<Label> decode(const std::vector<std::size_t>& idx, const ClassCodebook& codebook) {
    std::vector<Label> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(codebook.at(i));
    return out;
}

}  // namespace

Matrix hidden_map(const Matrix& x, const HiddenLayer& layer) {
    check_inputs(x, layer.inputs());
    if (layer.bias.size() != layer.neurons()) throw ShapeError("hidden bias length mismatch");
    Matrix h = matmul(x, layer.weights);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        auto row = h.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = tansig(row[i] + layer.bias[i]);
    }
    return h;
}

Matrix encode_targets(std::span<const Label> labels, const ClassCodebook& codebook) {
    Matrix t(labels.size(), codebook.size());
    for (std::size_t r = 0; r < labels.size(); ++r) {
        const auto idx = codebook.index_of(labels[r]);
        if (!idx) throw ConfigError("label " + to_string(labels[r]) + " is not in the class codebook");
        t(r, *idx) = 1.0;
    }
    return t;
}

Matrix fit_output_weights(const Matrix& h, const Matrix& t, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("regularization c must be positive and finite");
    if (h.rows() != t.rows()) throw ShapeError("hidden matrix and targets have different row counts");
    if (!h.all_finite() || !t.all_finite()) throw NumericError("non-finite hidden activations or targets");
    Matrix a = gram(h);
    const double shift = 1.0 / c;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += shift;
    return solve_spd(a, matmul_tn(h, t));
}

std::vector<std::size_t> argmax_rows(const Matrix& scores) {
    std::vector<std::size_t> out(scores.rows(), 0);
    for (std::size_t r = 0; r < scores.rows(); ++r) {
        auto row = scores.row(r);
        std::size_t best = 0;
        for (std::size_t j = 1; j < row.size(); ++j)
            if (row[j] > row[best]) best = j;
        out[r] = best;
    }
    return out;
}

Matrix QuantizedTensor::dequantize() const {
    std::vector<double> v(values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dequantized(i);
    return Matrix(rows, cols, std::move(v));
}

QuantizedTensor quantize_tensor(std::span<const double> values, std::size_t rows, std::size_t cols) {
    if (values.size() != rows * cols) throw ShapeError("quantize: buffer does not match shape");
    QuantizedTensor q;
    q.rows = rows;
    q.cols = cols;
    q.values.resize(values.size());
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) {
        q.scale = 1.0;
        return q;
    }
    q.scale = max_abs / 127.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        // x * 127 / max_abs keeps exact halves exact (0.5 -> 63.5 -> 64).
        const double r = std::round(values[i] * 127.0 / max_abs);
        q.values[i] = static_cast<std::int8_t>(std::clamp(r, -127.0, 127.0));
    }
    return q;
}

ElmModel train_elm(const Matrix& x, std::span<const Label> labels, const ElmConfig& config) {
    if (x.rows() != labels.size()) throw ShapeError("feature rows and labels differ in count");
    if (x.rows() == 0) throw ConfigError("cannot train on an empty set");
    if (config.hidden_neurons == 0) throw ConfigError("hidden neuron count must be positive");
    ElmModel model;
    model.seed = config.seed;
    model.regularization = config.regularization;
    model.codebook = ClassCodebook::from_labels(labels);
    model.hidden = init_hidden(config.seed, x.cols(), config.hidden_neurons);
    const Matrix h = hidden_map(x, model.hidden);
    model.beta = fit_output_weights(h, encode_targets(labels, model.codebook), config.regularization);
    return model;
}

Matrix elm_scores(const Matrix& x, const ElmModel& model) {
    return matmul(hidden_map(x, model.hidden), model.beta);
}

std::vector<Label> predict(const Matrix& x, const ElmModel& model) {
    if (x.rows() == 0) {
        check_inputs(x, model.inputs());
        return {};
    }
    return decode(argmax_rows(elm_scores(x, model)), model.codebook);
}

ElmModel quantize(ElmModel model) {
    const auto& w = model.hidden.weights;
    QuantizedWeights q;
    q.weights = quantize_tensor(w.data(), w.rows(), w.cols());
    q.bias = quantize_tensor(model.hidden.bias, 1, model.hidden.bias.size());
    q.beta = quantize_tensor(model.beta.data(), model.beta.rows(), model.beta.cols());
    model.quantized = std::move(q);
    return model;
}

std::vector<Label> predict_quantized(const Matrix& x, const ElmModel& model) {
    if (!model.quantized) throw ConfigError("model carries no quantized weights");
    const auto& q = *model.quantized;
    check_inputs(x, q.weights.rows);
    if (x.rows() == 0) return {};

    // Integer weights widened once; the per-tensor scale is applied after
    // accumulation.
    std::vector<double> wq(q.weights.values.begin(), q.weights.values.end());
    const Matrix pre = matmul(x, Matrix(q.weights.rows, q.weights.cols, std::move(wq)));
    Matrix h(pre.rows(), pre.cols());
    for (std::size_t r = 0; r < pre.rows(); ++r)
        for (std::size_t i = 0; i < pre.cols(); ++i)
            h(r, i) = tansig(pre(r, i) * q.weights.scale + q.bias.dequantized(i));

    std::vector<double> bq(q.beta.values.begin(), q.beta.values.end());
    Matrix scores = matmul(h, Matrix(q.beta.rows, q.beta.cols, std::move(bq)));
    for (double& v : scores.data()) v *= q.beta.scale;
    return decode(argmax_rows(scores), model.codebook);
}

SweepResult sweep_hidden(const Matrix& train_x, std::span<const Label> train_labels, const Matrix& val_x,
                         std::span<const Label> val_labels, const SweepOptions& options) {
    if (val_x.rows() == 0 || val_labels.empty()) throw ConfigError("sweep needs a non-empty validation set");
    if (options.step == 0) throw ConfigError("sweep step must be at least 1");
    if (options.max_neurons < 5) throw ConfigError("sweep upper bound must be at least 5 neurons");

    SweepResult result;
    double best = -1.0;
    for (std::size_t l = 5; l <= options.max_neurons; l += options.step) {
        const ElmModel model =
            train_elm(train_x, train_labels, {l, options.regularization, options.seed});
        const auto pred = predict(val_x, model);
        SweepEntry entry{l, hit_rate(pred, val_labels, LabelField::floor), std::nullopt};
        if (options.multi_building) entry.building_hit = hit_rate(pred, val_labels, LabelField::building);
        if (entry.floor_hit > best) {
            best = entry.floor_hit;
            result.selected = l;
        }
        result.table.push_back(entry);
        if (options.on_entry) options.on_entry(entry);
    }
    return result;
}

}  // namespace cnnelm
