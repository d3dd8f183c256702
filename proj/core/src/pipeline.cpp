#include "cnnelm/pipeline.hpp"

#include <cstdio>

#include "cnnelm/error.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

std::string_view to_string(Approach approach) {
    switch (approach) {
        case Approach::knn: return "knn";
        case Approach::elm_only: return "elm_only";
        case Approach::cnn_elm: return "cnn_elm";
    }
    return "unknown";
}

Approach parse_approach(std::string_view text) {
    if (text == "knn") return Approach::knn;
    if (text == "elm_only" || text == "elm") return Approach::elm_only;
    if (text == "cnn_elm") return Approach::cnn_elm;
    throw ConfigError("unknown approach '" + std::string(text) + "' (expected knn, elm_only or cnn_elm)");
}

std::uint64_t featurizer_seed(std::uint64_t run_seed) {
    // splitmix64 finalizer
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string canonical_config(const PipelineConfig& config, std::string_view dataset) {
    // nlohmann::json orders object keys, which makes the dump canonical.
    nlohmann::json j;
    j["dataset"] = std::string(dataset);
    j["approach"] = std::string(to_string(config.approach));
    if (config.approach != Approach::knn) j["seed"] = config.seed;
    j["norm_mode"] = std::string(to_string(config.norm_mode));
    if (config.approach != Approach::knn) {
        j["hidden_neurons"] = config.hidden_neurons;
        j["regularization"] = config.regularization;
        j["quantize"] = config.quantize;
    }
    if (config.approach == Approach::cnn_elm) {
        j["kernel_size"] = config.kernel_size;
        j["n_filters"] = config.n_filters;
    }
    return j.dump();
}

std::string config_digest(const PipelineConfig& config, std::string_view dataset) {
    return fnv1a_hex(canonical_config(config, dataset));
}

Matrix model_inputs(const PipelineModel& model, const Matrix& preprocessed) {
    if (model.approach == Approach::cnn_elm) {
        if (!model.featurizer) throw ConfigError("cnn_elm model is missing its featurizer");
        return featurize(preprocessed, *model.featurizer);
    }
    return preprocessed;
}

PipelineModel train_pipeline(const RadioMap& train, const PipelineConfig& config, const CsvSchema& schema) {
    if (config.approach == Approach::knn) throw ConfigError("knn has no trainable pipeline");
    if (train.labels.size() != train.size()) throw SchemaError("training map has no labels");
    PipelineModel model;
    model.approach = config.approach;
    model.dataset = train.name;
    model.schema = schema.n_aps() == train.n_aps() ? schema : layout_for(train);
    model.preprocess = fit_preprocess(train, config.norm_mode);
    if (config.approach == Approach::cnn_elm) {
        FeaturizerOverrides ov;
        ov.kernel_size = config.kernel_size;
        ov.n_filters = config.n_filters;
        model.featurizer = init_featurizer(featurizer_seed(config.seed), train.n_aps(), ov);
    }
    const Matrix x = model_inputs(model, transform(train.rss, model.preprocess));
    model.elm = train_elm(x, train.labels, {config.hidden_neurons, config.regularization, config.seed});
    if (config.quantize) model.elm = quantize(std::move(model.elm));
    model.config_digest = config_digest(config, train.name);
    return model;
}

std::vector<Label> predict_pipeline(const PipelineModel& model, const Matrix& rss, bool quantized) {
    const std::size_t expected =
        model.featurizer ? model.featurizer->n_aps : model.elm.inputs();
    if (rss.cols() != expected)
        throw ShapeError("queries have " + std::to_string(rss.cols()) + " AP columns, model expects " +
                         std::to_string(expected));
    const Matrix x = model_inputs(model, transform(rss, model.preprocess));
    if (!quantized) return predict(x, model.elm);
    // Float-only models are quantized on the fly.
    if (!model.elm.quantized) return predict_quantized(x, quantize(model.elm));
    return predict_quantized(x, model.elm);
}

}  // namespace cnnelm
