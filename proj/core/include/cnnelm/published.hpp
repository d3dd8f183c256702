#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cnnelm::published {

// Reference results for the twelve benchmark sets. Hit rates in percent,
// times in seconds, normalized columns relative to the 1-NN baseline
// (training time relative to CNNLoc). Absent cells are std::nullopt.

struct NormalizedRow {
    std::optional<double> building_hit;
    double floor_hit;
    std::optional<double> train_time;
    double test_time;
};

struct ComparisonRow {
    std::string_view dataset;
    std::optional<double> baseline_building_hit;
    double baseline_floor_hit;
    double baseline_test_time;
    NormalizedRow cnnloc;
    NormalizedRow elm;
    NormalizedRow cnn_elm;
};

inline constexpr std::optional<double> none = std::nullopt;

inline constexpr std::array<ComparisonRow, 12> kComparison{{
    {"LIB1", none, 99.20, 0.1328, {none, 1.0039, 1, 3.2084}, {none, 1.0042, 0.0105, 0.2647}, {none, 1.0074, 0.0897, 0.7417}},
    {"LIB2", none, 99.81, 0.0972, {none, 0.9830, 1, 4.7390}, {none, 0.9888, 0.0119, 0.4769}, {none, 0.9929, 0.0244, 0.4777}},
    {"TUT1", none, 90.82, 0.0559, {none, 0.9753, 1, 8.1930}, {none, 0.9820, 0.0042, 0.5141}, {none, 1.0045, 0.0066, 0.5328}},
    {"TUT2", none, 94.32, 0.0239, {none, 0.9759, 1, 8.0924}, {none, 0.9518, 0.0120, 0.9895}, {none, 0.9760, 0.0147, 1.1848}},
    {"TUT3", none, 91.60, 0.1949, {none, 0.9710, 1, 3.6773}, {none, 1.0177, 0.0138, 0.4998}, {none, 1.0182, 0.0156, 0.5218}},
    {"TUT4", none, 94.69, 0.1754, {none, 0.9606, 1, 1.4059}, {none, 0.9954, 0.0022, 0.1661}, {none, 1.0121, 0.0042, 0.1720}},
    {"TUT5", none, 96.84, 0.0355, {none, 1.0126, 1, 7.9418}, {none, 1.0074, 0.0121, 0.7801}, {none, 1.0147, 0.0201, 0.7493}},
    {"TUT6", none, 99.66, 0.8479, {none, 1.0011, 1, 1.3660}, {none, 0.9996, 0.0033, 0.0765}, {none, 0.9988, 0.0079, 0.1562}},
    {"TUT7", none, 98.36, 0.8233, {none, 0.9712, 1, 1.1628}, {none, 0.9919, 0.0029, 0.0651}, {none, 0.9922, 0.0052, 0.0795}},
    {"UJI1", 100, 92.17, 0.6946, {0.9973, 1.0322, 1, 0.9338}, {0.9991, 0.9375, 0.0007, 0.0395}, {1, 1.0010, 0.0010, 0.0488}},
    {"UJI2", 100, 91.31, 2.9602, {1, 0.9444, 1, 0.2622}, {0.9996, 0.9854, 0.0005, 0.0163}, {1, 1.0173, 0.0011, 0.0141}},
    {"UTS1", none, 94.07, 0.1541, {none, 0.9151, 1, 3.4835}, {none, 0.9890, 0.0011, 0.1840}, {none, 1.0137, 0.0019, 0.3950}},
}};

/// Published averages over the twelve sets.
inline constexpr double kBaselineAverageFloorHit = 95.24;
inline constexpr double kBaselineAverageTestTime = 0.52;
inline constexpr NormalizedRow kCnnElmAverage{1, 1.0041, 0.0160, 0.4228};

/// Absolute results from the two-dataset comparison table.
struct AbsoluteRow {
    std::string_view approach;
    std::string_view dataset;
    int hidden_neurons;
    std::optional<double> building_hit;
    double floor_hit;
    double train_time;
    double test_time;
};

inline constexpr std::array<AbsoluteRow, 4> kAbsolute{{
    {"AFARLS", "UJI1", 1000, 100, 95.41, 84.68, 0.21},
    {"AFARLS", "TUT3", 1000, none, 94.18, 2.40, 0.57},
    {"cnn_elm", "UJI1", 530, 100, 92.26, 0.26, 0.03},
    {"cnn_elm", "TUT3", 235, none, 93.27, 0.22, 0.10},
}};

inline const ComparisonRow* find(std::string_view dataset) {
    for (const auto& row : kComparison)
        if (row.dataset == dataset) return &row;
    return nullptr;
}

}  // namespace cnnelm::published
