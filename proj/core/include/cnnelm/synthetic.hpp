#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "cnnelm/dataset.hpp"

namespace cnnelm {

/// Log-distance path-loss simulation of a multi-building radio map, used
/// when the public datasets are not available.
struct SyntheticConfig {
    int buildings = 3;
    int floors = 4;
    std::size_t aps = 100;
    std::size_t train_size = 1500;
    std::size_t test_size = 500;
    std::uint64_t seed = 20221;
    /// Shadowing noise (dB) per reading.
    double noise_db = 8.0;
    /// Attenuation per floor crossed (dB).
    double floor_loss_db = 9.0;
    /// Readings below this level are reported as not detected.
    double sensitivity_dbm = -100.0;
};

/// (train, test) maps with building labels and x/y/z coordinates. RSS values
/// are whole dBm; undetected cells hold kNotDetected.
std::pair<RadioMap, RadioMap> make_synthetic(const SyntheticConfig& config = {});

}  // namespace cnnelm
