#include "cnnelm/serialize.hpp"

#include <fstream>
#include <sstream>

#include "cnnelm/error.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

using json = nlohmann::json;

namespace {

json matrix_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from(const json& j) {
    return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                  j.at("data").get<std::vector<double>>());
}

json qtensor_json(const QuantizedTensor& q) {
    std::vector<int> v(q.values.begin(), q.values.end());
    return {{"rows", q.rows}, {"cols", q.cols}, {"scale", q.scale}, {"q", v}};
}

QuantizedTensor qtensor_from(const json& j) {
    QuantizedTensor q;
    q.rows = j.at("rows").get<std::size_t>();
    q.cols = j.at("cols").get<std::size_t>();
    q.scale = j.at("scale").get<double>();
    if (!(q.scale > 0.0)) throw SchemaError("quantized tensor scale must be positive");
    for (int v : j.at("q").get<std::vector<int>>()) {
        if (v < -127 || v > 127) throw SchemaError("quantized value out of int8 range");
        q.values.push_back(static_cast<std::int8_t>(v));
    }
    if (q.values.size() != q.rows * q.cols) throw SchemaError("quantized tensor size mismatch");
    return q;
}

}  // namespace

std::string model_to_json(const PipelineModel& model) {
    json j;
    j["format"] = kModelFormat;
    j["approach"] = std::string(to_string(model.approach));
    j["dataset"] = model.dataset;
    j["config_digest"] = model.config_digest;
    j["schema"] = json::parse(schema_to_json(model.schema));
    j["preprocess"] = json::parse(preprocess_to_json(model.preprocess));
    j["featurizer"] = model.featurizer ? json::parse(featurizer_to_json(*model.featurizer)) : json(nullptr);

    const auto& elm = model.elm;
    json e;
    e["seed"] = elm.seed;
    e["L"] = elm.hidden_neurons();
    e["c"] = elm.regularization;
    json classes = json::array();
    for (const auto& c : elm.codebook.classes()) classes.push_back({c.building, c.floor});
    e["codebook"] = classes;
    e["W"] = matrix_json(elm.hidden.weights);
    e["b"] = elm.hidden.bias;
    e["beta"] = matrix_json(elm.beta);
    if (elm.quantized) {
        e["quantized"] = {{"W", qtensor_json(elm.quantized->weights)},
                          {"b", qtensor_json(elm.quantized->bias)},
                          {"beta", qtensor_json(elm.quantized->beta)}};
    } else {
        e["quantized"] = nullptr;
    }
    j["elm"] = e;
    return j.dump();
}

PipelineModel model_from_json(std::string_view text) {
    PipelineModel m;
    try {
        const json j = json::parse(text);
        if (j.value("format", "") != kModelFormat)
            throw SchemaError("not a " + std::string(kModelFormat) + " document");
        m.approach = parse_approach(j.at("approach").get<std::string>());
        m.dataset = j.value("dataset", "");
        m.config_digest = j.value("config_digest", "");
        m.schema = parse_schema_json(j.at("schema").dump());
        m.preprocess = preprocess_from_json(j.at("preprocess").dump());
        if (!j.at("featurizer").is_null()) m.featurizer = featurizer_from_json(j["featurizer"].dump());
        if (m.approach == Approach::cnn_elm && !m.featurizer)
            throw SchemaError("cnn_elm model without a featurizer");

        const auto& e = j.at("elm");
        m.elm.seed = e.at("seed").get<std::uint64_t>();
        m.elm.regularization = e.at("c").get<double>();
        std::vector<Label> classes;
        for (const auto& c : e.at("codebook")) classes.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        m.elm.codebook = ClassCodebook(std::move(classes));
        m.elm.hidden.weights = matrix_from(e.at("W"));
        m.elm.hidden.bias = e.at("b").get<std::vector<double>>();
        m.elm.beta = matrix_from(e.at("beta"));
        if (e.contains("quantized") && !e["quantized"].is_null()) {
            const auto& q = e["quantized"];
            m.elm.quantized = QuantizedWeights{qtensor_from(q.at("W")), qtensor_from(q.at("b")),
                                               qtensor_from(q.at("beta"))};
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("model file: ") + e.what());
    } catch (const ShapeError& e) {
        throw SchemaError(std::string("model file: ") + e.what());
    } catch (const NumericError& e) {
        throw SchemaError(std::string("model file: ") + e.what());
    }

    const auto& elm = m.elm;
    const std::size_t width =
        m.featurizer ? m.featurizer->output_width() : m.preprocess.feature_norms.size();
    if (elm.hidden.bias.size() != elm.hidden_neurons() || elm.beta.rows() != elm.hidden_neurons() ||
        elm.beta.cols() != elm.codebook.size())
        throw SchemaError("model file: ELM tensor shapes are inconsistent");
    if (m.featurizer && elm.inputs() != width)
        throw SchemaError("model file: featurizer width does not match the hidden layer");
    if (m.preprocess.mode == NormMode::per_feature && m.featurizer &&
        m.preprocess.feature_norms.size() != m.featurizer->n_aps)
        throw SchemaError("model file: preprocessing width does not match the featurizer");
    if (elm.quantized) {
        const auto& q = *elm.quantized;
        if (q.weights.rows != elm.inputs() || q.weights.cols != elm.hidden_neurons() ||
            q.bias.values.size() != elm.hidden_neurons() || q.beta.rows != elm.beta.rows() ||
            q.beta.cols != elm.beta.cols())
            throw SchemaError("model file: quantized tensor shapes are inconsistent");
    }
    return m;
}

void save_model(const std::filesystem::path& path, const PipelineModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << model_to_json(model);
    if (!out) throw IoError("write failed: " + path.string());
}

PipelineModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace cnnelm
