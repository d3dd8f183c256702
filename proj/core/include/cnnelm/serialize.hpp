#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cnnelm/pipeline.hpp"

namespace cnnelm {

inline constexpr std::string_view kModelFormat = "cnnelm-model/1";

/// Single JSON document holding the CSV schema, preprocessing state, the
/// realized filter weights (cnn_elm) and the ELM tensors, plus the int8
/// tensors and scales when quantized.
std::string model_to_json(const PipelineModel& model);

/// Throws SchemaError on malformed or inconsistent documents.
PipelineModel model_from_json(std::string_view text);

void save_model(const std::filesystem::path& path, const PipelineModel& model);
PipelineModel load_model(const std::filesystem::path& path);

}  // namespace cnnelm
