#pragma once

#include <numbers>
#include <string_view>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/linalg.hpp"

namespace cnnelm {

enum class NormMode { per_feature, per_sample };

std::string_view to_string(NormMode mode);
NormMode parse_norm_mode(std::string_view text);

/// Transform state fitted on training data and reused unchanged on
/// validation, test and on-line queries.
struct PreprocessParams {
    double min_rss = -100.0;
    double exponent = std::numbers::e;
    NormMode mode = NormMode::per_feature;
    /// Column norms of the powed training matrix; per_feature mode only.
    std::vector<double> feature_norms;
};

/// Minimum detected RSS of the training map. Throws ConfigError when no
/// cell is detected.
PreprocessParams fit_powed(const RadioMap& train);

/// Powed representation: 0 for not-detected cells, otherwise
/// ((rss - min) / -min)^e. Values below the fitted minimum clip to 0.
Matrix apply_powed(const Matrix& rss, const PreprocessParams& params);
inline Matrix apply_powed(const RadioMap& map, const PreprocessParams& params) {
    return apply_powed(map.rss, params);
}

/// Euclidean norm of every column of `powed_train`.
std::vector<double> column_norms(const Matrix& powed_train);

/// Returns `params` with feature_norms filled from the powed training matrix.
PreprocessParams fit_unit_norm(const Matrix& powed_train, PreprocessParams params);

/// per_feature divides column j by feature_norms[j]; per_sample divides
/// each row by its own norm. Zero norms pass the data through.
Matrix apply_unit_norm(const Matrix& powed, const PreprocessParams& params);

/// fit_powed + fit_unit_norm (when mode is per_feature) on a training map.
PreprocessParams fit_preprocess(const RadioMap& train, NormMode mode);

/// apply_powed followed by apply_unit_norm.
Matrix transform(const Matrix& rss, const PreprocessParams& params);

std::string preprocess_to_json(const PreprocessParams& params);
PreprocessParams preprocess_from_json(std::string_view text);

}  // namespace cnnelm
