#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnnelm/linalg.hpp"

namespace cnnelm {

/// RSS value used for "access point not detected" once a file is loaded.
inline constexpr double kNotDetected = 0.0;

/// Building/floor class of one fingerprint. Single-building sets use
/// building 0 throughout.
struct Label {
    int building = 0;
    int floor = 0;

    auto operator<=>(const Label&) const = default;
};

std::string to_string(const Label& label);

/// Fingerprints plus labels. `rss` is N x n_aps; detected values are <= 0 dBm
/// and undetected cells hold exactly kNotDetected.
struct RadioMap {
    std::string name;
    Matrix rss;
    std::vector<Label> labels;
    bool has_building = false;
    /// Coordinate columns carried through verbatim; never used for training.
    Matrix coords;

    std::size_t size() const noexcept { return rss.rows(); }
    std::size_t n_aps() const noexcept { return rss.cols(); }
    bool empty() const noexcept { return rss.rows() == 0; }
};

/// Column layout of a fingerprint CSV. Column indices are 0-based and
/// `ap_last` is inclusive.
struct CsvSchema {
    std::size_t ap_first = 0;
    std::size_t ap_last = 0;
    std::size_t floor_col = 0;
    std::optional<std::size_t> building_col;
    std::vector<std::size_t> coord_cols;
    double sentinel = 100.0;

    std::size_t n_aps() const noexcept { return ap_last - ap_first + 1; }
    std::size_t min_columns() const;
};

/// Manifest: a schema plus optional file locations, dataset name and
/// default hyperparameters for sets outside the registry.
struct DatasetManifest {
    std::string name;
    CsvSchema schema;
    std::filesystem::path train_path;
    std::filesystem::path test_path;
    std::optional<std::size_t> hidden_neurons;
    std::optional<double> regularization;
};

CsvSchema parse_schema_json(std::string_view json_text);
std::string schema_to_json(const CsvSchema& schema);

/// Reads a manifest file. Relative train/test paths resolve against the
/// manifest's directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Loads a fingerprint CSV with a header row. Cells equal to
/// `schema.sentinel` (and raw zeros) become kNotDetected.
RadioMap load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                  std::string name = {});

/// Loads RSS values only. Accepts either a full file in `schema` layout or a
/// file with exactly `schema.n_aps()` columns. Labels are filled when the
/// floor column is present.
RadioMap load_queries(const std::filesystem::path& path, const CsvSchema& schema);

/// Column layout written by write_csv: AP columns, coordinates, FLOOR and,
/// for multi-building maps, BUILDINGID.
CsvSchema layout_for(const RadioMap& map, double sentinel_raw = 100.0);

/// Writes `map` in the layout AP columns, coordinates, FLOOR[, BUILDINGID],
/// with not-detected cells emitted as `sentinel_raw`. Returns the schema
/// that reads the file back.
CsvSchema write_csv(const std::filesystem::path& path, const RadioMap& map,
                    double sentinel_raw = 100.0);

RadioMap subset(const RadioMap& map, std::span<const std::size_t> rows);

struct ValidationSplit {
    RadioMap train;
    RadioMap validation;
    std::vector<std::string> warnings;
};

/// Stratified hold-out: each (building, floor) group gives
/// ceil(fraction * size) random rows to validation. Groups with fewer than
/// two rows stay in training and produce a warning. Both outputs keep the
/// input's row order.
ValidationSplit split_validation(const RadioMap& map, double fraction, std::uint64_t seed);

// --- dataset registry -------------------------------------------------------

enum class DbType { multi_floor, multi_building_multi_floor };

std::string_view to_string(DbType type);

struct DatasetDescriptor {
    std::string name;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t n_aps = 0;
    std::size_t hidden_neurons = 0;
    double regularization = 0.0;
    DbType db_type = DbType::multi_floor;
    double sentinel_raw = 100.0;
};

class DatasetRegistry {
public:
    /// The twelve public benchmark sets with their published hidden-neuron
    /// counts and regularization values.
    static DatasetRegistry with_builtins();

    /// Adds or replaces an entry. Throws ConfigError on non-positive L or c.
    void add(DatasetDescriptor descriptor);

    /// Throws ConfigError listing the known names when `name` is unknown.
    const DatasetDescriptor& lookup(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::vector<DatasetDescriptor> entries_;
};

}  // namespace cnnelm
