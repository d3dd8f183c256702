#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/elm.hpp"
#include "cnnelm/featurizer.hpp"
#include "cnnelm/preprocess.hpp"

namespace cnnelm {

enum class Approach { knn, elm_only, cnn_elm };

std::string_view to_string(Approach approach);
Approach parse_approach(std::string_view text);

struct PipelineConfig {
    Approach approach = Approach::cnn_elm;
    std::size_t hidden_neurons = 0;
    double regularization = 1.0;
    std::uint64_t seed = 0;
    NormMode norm_mode = NormMode::per_feature;
    std::size_t kernel_size = 3;
    std::size_t n_filters = 2;
    bool quantize = false;
};

/// Everything the on-line phase needs: preprocessing state, the fixed
/// feature block (cnn_elm only) and the fitted ELM.
struct PipelineModel {
    Approach approach = Approach::cnn_elm;
    std::string dataset;
    CsvSchema schema;
    PreprocessParams preprocess;
    std::optional<FeaturizerSpec> featurizer;
    ElmModel elm;
    std::string config_digest;
};

/// Seed of the convolution filters, derived from the run seed so the filter
/// and hidden-layer streams do not coincide.
std::uint64_t featurizer_seed(std::uint64_t run_seed);

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Canonical JSON of every resolved knob; the digest is fnv1a_hex of it.
std::string canonical_config(const PipelineConfig& config, std::string_view dataset);
std::string config_digest(const PipelineConfig& config, std::string_view dataset);

/// Model input for already-preprocessed rows: identity for elm_only,
/// featurize for cnn_elm.
Matrix model_inputs(const PipelineModel& model, const Matrix& preprocessed);

/// Preprocess fit, feature block (cnn_elm) and ELM fit. knn is not an ELM
/// pipeline and is rejected with ConfigError. A schema whose AP count does
/// not match `train` is replaced by layout_for(train).
PipelineModel train_pipeline(const RadioMap& train, const PipelineConfig& config,
                             const CsvSchema& schema = {});

/// Labels for raw RSS rows. With `quantized`, float-only models are
/// quantized on the fly.
std::vector<Label> predict_pipeline(const PipelineModel& model, const Matrix& rss, bool quantized = false);

}  // namespace cnnelm
