#include "cnnelm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cnnelm/error.hpp"
#include "cnnelm/rng.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

double parse_number(std::string_view field, std::size_t line, std::size_t column) {
    double value = 0.0;
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw ParseError("non-numeric value '" + std::string(field) + "' in column " +
                             std::to_string(column),
                         line);
    }
    return value;
}

int parse_label(std::string_view field, std::size_t line, std::size_t column, const char* what) {
    const double v = parse_number(field, line, column);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) {
        throw ParseError(std::string(what) + " label '" + std::string(field) +
                             "' is not a non-negative integer",
                         line);
    }
    return static_cast<int>(v);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

// Calls `fn(line_view, line_number)` for every non-blank line after the header.
template <class Fn>
std::size_t for_each_data_line(const std::string& text, std::vector<std::string_view>& header, Fn fn) {
    std::string_view rest(text);
    std::size_t line_no = 0;
    bool have_header = false;
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;
        if (trim(line).empty()) continue;
        if (!have_header) {
            split_fields(line, header);
            have_header = true;
            continue;
        }
        fn(line, line_no);
    }
    if (!have_header) throw ParseError("file has no header row", 1);
    return line_no;
}

struct Parsed {
    std::vector<double> rss;
    std::vector<Label> labels;
    std::vector<double> coords;
    std::size_t rows = 0;
};

Parsed parse_rows(const std::string& text, const CsvSchema& schema, bool labels_required,
                  bool rss_only_layout) {
    std::vector<std::string_view> header;
    std::vector<std::string_view> fields;
    Parsed out;
    const std::size_t n = schema.n_aps();
    std::size_t expected_cols = 0;

    for_each_data_line(text, header, [&](std::string_view line, std::size_t line_no) {
        if (expected_cols == 0) {
            expected_cols = header.size();
            if (!rss_only_layout && labels_required && expected_cols < schema.min_columns()) {
                throw SchemaError("header has " + std::to_string(expected_cols) +
                                  " columns but the schema references column " +
                                  std::to_string(schema.min_columns() - 1));
            }
        }
        split_fields(line, fields);
        if (fields.size() != expected_cols) {
            throw ParseError("row has " + std::to_string(fields.size()) + " values, expected " +
                                 std::to_string(expected_cols),
                             line_no);
        }
        const std::size_t first = rss_only_layout ? 0 : schema.ap_first;
        for (std::size_t j = 0; j < n; ++j) {
            double v = parse_number(fields[first + j], line_no, first + j);
            if (v == schema.sentinel) v = kNotDetected;
            if (v > 0.0) {
                throw ParseError("RSS value " + std::string(fields[first + j]) +
                                     " above 0 dBm in column " + std::to_string(first + j),
                                 line_no);
            }
            out.rss.push_back(v);
        }
        if (!rss_only_layout) {
            Label label;
            label.floor = parse_label(fields[schema.floor_col], line_no, schema.floor_col, "floor");
            if (schema.building_col)
                label.building = parse_label(fields[*schema.building_col], line_no,
                                             *schema.building_col, "building");
            out.labels.push_back(label);
            for (auto c : schema.coord_cols) out.coords.push_back(parse_number(fields[c], line_no, c));
        }
        ++out.rows;
    });
    if (expected_cols == 0) {
        expected_cols = header.size();
        if (!rss_only_layout && labels_required && expected_cols < schema.min_columns())
            throw SchemaError("header has " + std::to_string(expected_cols) +
                              " columns but the schema references column " +
                              std::to_string(schema.min_columns() - 1));
    }
    return out;
}

RadioMap assemble(Parsed parsed, const CsvSchema& schema, std::string name, bool with_labels) {
    RadioMap map;
    map.name = std::move(name);
    map.rss = Matrix(parsed.rows, schema.n_aps(), std::move(parsed.rss));
    if (with_labels) {
        map.labels = std::move(parsed.labels);
        map.has_building = schema.building_col.has_value();
        map.coords = Matrix(parsed.rows, schema.coord_cols.size(), std::move(parsed.coords));
    }
    return map;
}

std::size_t count_header_columns(const std::string& text) {
    std::vector<std::string_view> header;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        if (!trim(line).empty()) {
            split_fields(line, header);
            return header.size();
        }
        if (nl == std::string_view::npos) break;
        rest = rest.substr(nl + 1);
    }
    return 0;
}

std::string format_number(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::string to_string(const Label& label) {
    return "(" + std::to_string(label.building) + ", " + std::to_string(label.floor) + ")";
}

std::size_t CsvSchema::min_columns() const {
    std::size_t m = std::max(ap_last, floor_col);
    if (building_col) m = std::max(m, *building_col);
    for (auto c : coord_cols) m = std::max(m, c);
    return m + 1;
}

CsvSchema parse_schema_json(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest is not valid JSON: ") + e.what());
    }
    CsvSchema s;
    try {
        const auto& ap = j.at("ap_columns");
        if (!ap.is_array() || ap.size() != 2) throw SchemaError("ap_columns must be [start, end]");
        s.ap_first = ap[0].get<std::size_t>();
        s.ap_last = ap[1].get<std::size_t>();
        if (!j.contains("floor_col") || j["floor_col"].is_null())
            throw SchemaError("manifest has no floor_col");
        s.floor_col = j["floor_col"].get<std::size_t>();
        if (j.contains("building_col") && !j["building_col"].is_null())
            s.building_col = j["building_col"].get<std::size_t>();
        if (j.contains("coord_columns")) s.coord_cols = j["coord_columns"].get<std::vector<std::size_t>>();
        s.sentinel = j.at("sentinel").get<double>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest field error: ") + e.what());
    }
    if (s.ap_last < s.ap_first) throw SchemaError("ap_columns end precedes start");
    const auto in_ap_range = [&](std::size_t c) { return c >= s.ap_first && c <= s.ap_last; };
    if (in_ap_range(s.floor_col) || (s.building_col && in_ap_range(*s.building_col)))
        throw SchemaError("label column overlaps the AP column range");
    return s;
}

std::string schema_to_json(const CsvSchema& schema) {
    json j;
    j["ap_columns"] = {schema.ap_first, schema.ap_last};
    j["floor_col"] = schema.floor_col;
    j["building_col"] = schema.building_col ? json(*schema.building_col) : json(nullptr);
    j["coord_columns"] = schema.coord_cols;
    j["sentinel"] = schema.sentinel;
    return j.dump();
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    DatasetManifest m;
    m.schema = parse_schema_json(text);
    const json j = json::parse(text);
    const auto base = path.parent_path();
    m.name = j.value("name", path.parent_path().filename().string());
    if (j.contains("train")) m.train_path = base / j["train"].get<std::string>();
    if (j.contains("test")) m.test_path = base / j["test"].get<std::string>();
    try {
        if (j.contains("L")) m.hidden_neurons = j["L"].get<std::size_t>();
        if (j.contains("c")) m.regularization = j["c"].get<double>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest hyperparameters: ") + e.what());
    }
    return m;
}

RadioMap load_csv(const std::filesystem::path& path, const CsvSchema& schema, std::string name) {
    const std::string text = read_file(path);
    if (name.empty()) name = path.stem().string();
    return assemble(parse_rows(text, schema, true, false), schema, std::move(name), true);
}

RadioMap load_queries(const std::filesystem::path& path, const CsvSchema& schema) {
    const std::string text = read_file(path);
    const std::size_t cols = count_header_columns(text);
    if (cols >= schema.min_columns()) {
        return assemble(parse_rows(text, schema, true, false), schema, path.stem().string(), true);
    }
    if (cols != schema.n_aps()) {
        throw ShapeError("query file has " + std::to_string(cols) + " columns; expected " +
                         std::to_string(schema.n_aps()) + " RSS columns or the full training layout");
    }
    return assemble(parse_rows(text, schema, false, true), schema, path.stem().string(), false);
}

CsvSchema layout_for(const RadioMap& map, double sentinel_raw) {
    const std::size_t n = map.n_aps();
    const std::size_t nc = map.coords.cols();
    if (n == 0) throw ShapeError("radio map has no AP columns");
    CsvSchema schema;
    schema.ap_first = 0;
    schema.ap_last = n - 1;
    for (std::size_t c = 0; c < nc; ++c) schema.coord_cols.push_back(n + c);
    schema.floor_col = n + nc;
    if (map.has_building) schema.building_col = n + nc + 1;
    schema.sentinel = sentinel_raw;
    return schema;
}

CsvSchema write_csv(const std::filesystem::path& path, const RadioMap& map, double sentinel_raw) {
    const CsvSchema schema = layout_for(map, sentinel_raw);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    const std::size_t n = map.n_aps();
    const std::size_t nc = map.coords.cols();

    char name[16];
    for (std::size_t j = 0; j < n; ++j) {
        std::snprintf(name, sizeof name, "WAP%03zu", j + 1);
        out << (j ? "," : "") << name;
    }
    for (std::size_t c = 0; c < nc; ++c) out << ",COORD" << c;
    out << ",FLOOR";
    if (map.has_building) out << ",BUILDINGID";
    out << '\n';

    for (std::size_t i = 0; i < map.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = map.rss(i, j);
            out << (j ? "," : "") << format_number(v == kNotDetected ? sentinel_raw : v);
        }
        for (std::size_t c = 0; c < nc; ++c) out << ',' << format_number(map.coords(i, c));
        out << ',' << map.labels[i].floor;
        if (map.has_building) out << ',' << map.labels[i].building;
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
    return schema;
}

RadioMap subset(const RadioMap& map, std::span<const std::size_t> rows) {
    RadioMap out;
    out.name = map.name;
    out.has_building = map.has_building;
    out.rss = Matrix(rows.size(), map.n_aps());
    out.coords = Matrix(rows.size(), map.coords.cols());
    out.labels.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto r = rows[k];
        if (r >= map.size()) throw ShapeError("subset row out of range");
        std::copy(map.rss.row(r).begin(), map.rss.row(r).end(), out.rss.row(k).begin());
        if (map.coords.cols())
            std::copy(map.coords.row(r).begin(), map.coords.row(r).end(), out.coords.row(k).begin());
        if (!map.labels.empty()) out.labels.push_back(map.labels[r]);
    }
    return out;
}

ValidationSplit split_validation(const RadioMap& map, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ConfigError("validation fraction must lie in (0, 1)");
    if (map.empty()) throw ConfigError("cannot split an empty radio map");
    if (map.labels.size() != map.size()) throw SchemaError("radio map has no labels to stratify on");

    std::map<Label, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < map.size(); ++i) groups[map.labels[i]].push_back(i);

    Rng rng(seed);
    std::vector<char> to_validation(map.size(), 0);
    ValidationSplit split;
    for (auto& [label, rows] : groups) {
        if (rows.size() < 2) {
            split.warnings.push_back("class " + to_string(label) + " has " +
                                     std::to_string(rows.size()) +
                                     " sample(s); kept whole in training");
            continue;
        }
        // The epsilon keeps products like 0.1 * 30 = 3.0000000000000004 from
        // rounding up; one row always stays in training.
        auto take = static_cast<std::size_t>(
            std::ceil(fraction * static_cast<double>(rows.size()) - 1e-9));
        take = std::clamp<std::size_t>(take, 1, rows.size() - 1);
        rng.shuffle(rows.begin(), rows.end());
        for (std::size_t k = 0; k < take; ++k) to_validation[rows[k]] = 1;
    }

    std::vector<std::size_t> train_rows, val_rows;
    for (std::size_t i = 0; i < map.size(); ++i)
        (to_validation[i] ? val_rows : train_rows).push_back(i);
    split.train = subset(map, train_rows);
    split.validation = subset(map, val_rows);
    return split;
}

}  // namespace cnnelm
