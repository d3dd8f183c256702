#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/pipeline.hpp"

namespace cnnelm {

enum class LabelField { building, floor };

/// 100 * matches / N on the selected field. Throws ShapeError on a length
/// mismatch and ConfigError on empty input.
double hit_rate(std::span<const Label> predicted, std::span<const Label> truth, LabelField field);

/// Building hit rate, or nullopt for single-building sets.
std::optional<double> building_hit_rate(std::span<const Label> predicted, std::span<const Label> truth,
                                        bool multi_building);

struct NormalizedMetrics {
    std::optional<double> building_hit;
    std::optional<double> floor_hit;
    std::optional<double> train_time;
    std::optional<double> test_time;
};

struct EvalReport {
    std::string dataset;
    std::string approach;
    std::optional<std::uint64_t> seed;
    std::optional<double> building_hit;
    double floor_hit = 0.0;
    std::optional<double> train_time;
    std::optional<double> test_time;
    std::optional<NormalizedMetrics> normalized;
    std::string config_digest;
    /// Static rows copied from published tables rather than measured here.
    bool published = false;
};

/// Divides every metric by the baseline's. Cells whose baseline is absent
/// or zero stay absent. Throws ConfigError if the datasets differ.
EvalReport normalize(EvalReport report, const EvalReport& baseline);

struct Timing {
    /// Reported duration: the single run, or the median when repeated.
    double seconds = 0.0;
    double min_seconds = 0.0;
    int repetitions = 1;
};

/// Wall-clock time of `phase` on the steady clock. Phases shorter than
/// 100 ms are re-run (up to `max_repetitions` total) and the median is
/// reported.
Timing time_phase(const std::function<void()>& phase, int max_repetitions = 5);

struct BenchmarkDataset {
    DatasetDescriptor descriptor;
    /// Returns (train, test). Exceptions are recorded as dataset failures.
    std::function<std::pair<RadioMap, RadioMap>()> load;
};

struct BenchmarkOptions {
    NormMode norm_mode = NormMode::per_feature;
    std::size_t kernel_size = 3;
    std::size_t n_filters = 2;
    /// Count preprocessing fit/apply inside the timed phases.
    bool end_to_end_timing = false;
    std::function<void(std::string_view)> log;
};

struct DatasetFailure {
    std::string dataset;
    std::string message;
};

struct BenchmarkTable {
    /// One row per (dataset, approach, seed); knn runs once with no seed.
    std::vector<EvalReport> runs;
    /// Seed means per (dataset, approach), normalized against knn.
    std::vector<EvalReport> averaged;
    /// Per-approach means over datasets ("Avg.").
    std::vector<EvalReport> overall;
    /// CNNLoc and AFARLS rows from the published tables.
    std::vector<EvalReport> published;
    std::vector<DatasetFailure> failures;
};

BenchmarkTable run_benchmark(std::span<const BenchmarkDataset> datasets, std::span<const Approach> approaches,
                             std::span<const std::uint64_t> seeds, const BenchmarkOptions& options = {});

/// Mean of the given reports' metrics; the result carries no seed.
EvalReport average_reports(std::span<const EvalReport> reports, std::string dataset, std::string approach);

/// Published CNNLoc (normalized) and AFARLS (absolute) rows for `datasets`.
std::vector<EvalReport> published_rows(std::span<const std::string> datasets);

inline constexpr std::string_view kReportCsvHeader =
    "dataset,approach,seed,zeta_b,zeta_f,delta_tr_s,delta_te_s,norm_zeta_b,norm_zeta_f,norm_delta_tr,"
    "norm_delta_te,config_digest";

std::string report_csv_row(const EvalReport& report);
std::string benchmark_to_csv(const BenchmarkTable& table);
std::string benchmark_to_json(const BenchmarkTable& table);
BenchmarkTable benchmark_from_json(std::string_view text);

/// Fixed-width text table: one line per dataset with the baseline's
/// absolute metrics followed by every approach's normalized metrics.
std::string render_table(const BenchmarkTable& table);

}  // namespace cnnelm
