#include "cnnelm/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnnelm/error.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

std::string_view to_string(NormMode mode) {
    return mode == NormMode::per_feature ? "per_feature" : "per_sample";
}

NormMode parse_norm_mode(std::string_view text) {
    if (text == "per_feature") return NormMode::per_feature;
    if (text == "per_sample") return NormMode::per_sample;
    throw ConfigError("unknown normalization mode '" + std::string(text) +
                      "' (expected per_feature or per_sample)");
}

PreprocessParams fit_powed(const RadioMap& train) {
    double lowest = std::numeric_limits<double>::infinity();
    for (double v : train.rss.data())
        if (v != kNotDetected) lowest = std::min(lowest, v);
    if (!std::isfinite(lowest))
        throw ConfigError("training map has no detected RSS values");
    PreprocessParams p;
    p.min_rss = lowest;
    return p;
}

Matrix apply_powed(const Matrix& rss, const PreprocessParams& params) {
    if (!(params.min_rss < 0.0)) throw ConfigError("powed transform needs a negative minimum RSS");
    Matrix out(rss.rows(), rss.cols());
    const double denom = -params.min_rss;
    auto src = rss.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double v = src[i];
        if (v == kNotDetected) continue;
        const double base = std::clamp((v - params.min_rss) / denom, 0.0, 1.0);
        dst[i] = std::pow(base, params.exponent);
    }
    return out;
}

std::vector<double> column_norms(const Matrix& powed_train) {
    std::vector<double> sq(powed_train.cols(), 0.0);
    for (std::size_t r = 0; r < powed_train.rows(); ++r) {
        auto row = powed_train.row(r);
        for (std::size_t j = 0; j < row.size(); ++j) sq[j] += row[j] * row[j];
    }
    for (double& s : sq) s = std::sqrt(s);
    return sq;
}

PreprocessParams fit_unit_norm(const Matrix& powed_train, PreprocessParams params) {
    if (powed_train.empty()) throw ConfigError("cannot fit unit norm on an empty matrix");
    params.feature_norms = column_norms(powed_train);
    return params;
}

Matrix apply_unit_norm(const Matrix& powed, const PreprocessParams& params) {
    Matrix out = powed;
    if (params.mode == NormMode::per_feature) {
        if (params.feature_norms.size() != powed.cols()) {
            throw ShapeError("unit norm: matrix has " + std::to_string(powed.cols()) +
                             " columns, fitted norms cover " +
                             std::to_string(params.feature_norms.size()));
        }
        for (std::size_t r = 0; r < out.rows(); ++r) {
            auto row = out.row(r);
            for (std::size_t j = 0; j < row.size(); ++j)
                if (params.feature_norms[j] > 0.0) row[j] /= params.feature_norms[j];
        }
        return out;
    }
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto row = out.row(r);
        double s = 0.0;
        for (double v : row) s += v * v;
        if (s == 0.0) continue;
        const double norm = std::sqrt(s);
        for (double& v : row) v /= norm;
    }
    return out;
}

PreprocessParams fit_preprocess(const RadioMap& train, NormMode mode) {
    PreprocessParams p = fit_powed(train);
    p.mode = mode;
    if (mode == NormMode::per_feature) {
        const Matrix powed = apply_powed(train, p);
        p = fit_unit_norm(powed, p);
    }
    return p;
}

Matrix transform(const Matrix& rss, const PreprocessParams& params) {
    return apply_unit_norm(apply_powed(rss, params), params);
}

std::string preprocess_to_json(const PreprocessParams& params) {
    nlohmann::json j;
    j["min_rss"] = params.min_rss;
    j["exponent"] = params.exponent;
    j["mode"] = std::string(to_string(params.mode));
    j["feature_norms"] = params.feature_norms;
    return j.dump();
}

PreprocessParams preprocess_from_json(std::string_view text) {
    PreprocessParams p;
    try {
        const auto j = nlohmann::json::parse(text);
        p.min_rss = j.at("min_rss").get<double>();
        p.exponent = j.value("exponent", std::numbers::e);
        p.mode = parse_norm_mode(j.at("mode").get<std::string>());
        p.feature_norms = j.value("feature_norms", std::vector<double>{});
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("preprocess params: ") + e.what());
    }
    if (!(p.min_rss < 0.0)) throw SchemaError("preprocess params: min_rss must be negative");
    if (p.mode == NormMode::per_feature &&
        std::any_of(p.feature_norms.begin(), p.feature_norms.end(), [](double v) { return !(v >= 0.0); }))
        throw SchemaError("preprocess params: feature norms must be non-negative");
    return p;
}

}  // namespace cnnelm
