#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "cnnelm/dataset.hpp"
#include "cnnelm/error.hpp"
#include "cnnelm/rng.hpp"
#include "cnnelm/synthetic.hpp"
#include "temp_dir.hpp"

using namespace cnnelm;

namespace {

// Three APs, floor then building, UJI-style sentinel.
CsvSchema small_schema() {
    CsvSchema s;
    s.ap_first = 0;
    s.ap_last = 2;
    s.floor_col = 3;
    s.building_col = 4;
    return s;
}

RadioMap labelled_map(const std::vector<std::pair<Label, std::size_t>>& groups) {
    RadioMap m;
    std::size_t n = 0;
    for (const auto& [l, count] : groups) n += count;
    m.rss = Matrix(n, 2, -50.0);
    std::size_t row = 0;
    for (const auto& [l, count] : groups)
        for (std::size_t i = 0; i < count; ++i, ++row) {
            m.labels.push_back(l);
            m.rss(row, 0) = -static_cast<double>(row);
        }
    return m;
}

}  // namespace

TEST(LoadCsv, RemapsSentinelAndReadsLabels) {
    TempDir dir;
    const auto p = dir.write("t.csv", "A,B,C,FLOOR,BUILDING\n-40,100,-70,2,1\n100,100,100,0,0\n");
    const RadioMap m = load_csv(p, small_schema(), "T");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.n_aps(), 3u);
    EXPECT_EQ(m.rss(0, 0), -40.0);
    EXPECT_EQ(m.rss(0, 1), kNotDetected);
    EXPECT_EQ(m.labels[0], (Label{1, 2}));
    EXPECT_TRUE(m.has_building);
    for (double v : m.rss.row(1)) EXPECT_EQ(v, kNotDetected);
}

TEST(LoadCsv, ShortRowIsParseErrorWithLine) {
    TempDir dir;
    const auto p = dir.write("t.csv", "A,B,C,FLOOR,BUILDING\n-40,-50,-60,0,0\n-40,-50,0,0\n");
    try {
        load_csv(p, small_schema());
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(LoadCsv, NonNumericRssIsParseError) {
    TempDir dir;
    const auto p = dir.write("t.csv", "A,B,C,FLOOR,BUILDING\n-40,abc,-60,0,0\n");
    EXPECT_THROW(load_csv(p, small_schema()), ParseError);
}

TEST(LoadCsv, MissingLabelColumnIsSchemaError) {
    TempDir dir;
    const auto p = dir.write("t.csv", "A,B,C,FLOOR\n-40,-50,-60,0\n");
    EXPECT_THROW(load_csv(p, small_schema()), SchemaError);
}

TEST(LoadCsv, PositiveRssRejected) {
    TempDir dir;
    const auto p = dir.write("t.csv", "A,B,C,FLOOR,BUILDING\n-40,5,-60,0,0\n");
    EXPECT_THROW(load_csv(p, small_schema()), ParseError);
}

TEST(LoadCsv, MissingFileIsIoError) {
    EXPECT_THROW(load_csv("/nonexistent/x.csv", small_schema()), IoError);
}

TEST(LoadCsv, ReloadIsBitwiseIdentical) {
    const auto [train, test] = make_synthetic();
    TempDir dir;
    const CsvSchema s = write_csv(dir.path() / "a.csv", test);
    const RadioMap a = load_csv(dir.path() / "a.csv", s);
    const RadioMap b = load_csv(dir.path() / "a.csv", s);
    EXPECT_EQ(a.rss, b.rss);
    EXPECT_EQ(a.labels, b.labels);
    // Round trip through the writer keeps every value.
    EXPECT_EQ(a.rss, test.rss);
    EXPECT_EQ(a.labels, test.labels);
    EXPECT_EQ(a.coords, test.coords);
}

TEST(LoadQueries, AcceptsRssOnlyLayout) {
    TempDir dir;
    const auto p = dir.write("q.csv", "A,B,C\n-40,100,-70\n");
    const RadioMap q = load_queries(p, small_schema());
    EXPECT_EQ(q.size(), 1u);
    EXPECT_TRUE(q.labels.empty());
    EXPECT_EQ(q.rss(0, 1), kNotDetected);
    const auto bad = dir.write("b.csv", "A,B\n-40,-70\n");
    EXPECT_THROW(load_queries(bad, small_schema()), ShapeError);
}

TEST(LoadQueries, HeaderOnlyFileGivesEmptyMap) {
    TempDir dir;
    const auto p = dir.write("q.csv", "A,B,C\n");
    EXPECT_EQ(load_queries(p, small_schema()).size(), 0u);
}

TEST(Manifest, ResolvesRelativePaths) {
    TempDir dir;
    const auto p = dir.write("manifest.json",
                             R"({"name":"X","ap_columns":[0,2],"floor_col":3,"building_col":4,)"
                             R"("sentinel":100,"train":"tr.csv","test":"te.csv","L":40,"c":0.5})");
    const DatasetManifest m = load_manifest(p);
    EXPECT_EQ(m.name, "X");
    EXPECT_EQ(m.train_path, dir.path() / "tr.csv");
    EXPECT_EQ(m.schema.n_aps(), 3u);
    EXPECT_EQ(m.hidden_neurons, 40u);
    EXPECT_EQ(m.regularization, 0.5);
}

TEST(Manifest, SchemaErrors) {
    EXPECT_THROW(parse_schema_json("{"), SchemaError);
    EXPECT_THROW(parse_schema_json(R"({"ap_columns":[0,2]})"), SchemaError);
    EXPECT_THROW(parse_schema_json(R"({"ap_columns":[0,2],"floor_col":1})"), SchemaError);
    const CsvSchema s = parse_schema_json(schema_to_json(small_schema()));
    EXPECT_EQ(s.floor_col, 3u);
    EXPECT_EQ(s.building_col, 4u);
}

TEST(Registry, TableValues) {
    const auto r = DatasetRegistry::with_builtins();
    const auto& uji = r.lookup("UJI1");
    EXPECT_EQ(uji.train_size, 19861u);
    EXPECT_EQ(uji.test_size, 1111u);
    EXPECT_EQ(uji.n_aps, 520u);
    EXPECT_EQ(uji.hidden_neurons, 530u);
    EXPECT_EQ(uji.regularization, 0.1);
    EXPECT_EQ(uji.db_type, DbType::multi_building_multi_floor);
    const auto& tut = r.lookup("TUT3");
    EXPECT_EQ(tut.train_size, 697u);
    EXPECT_EQ(tut.test_size, 3951u);
    EXPECT_EQ(tut.n_aps, 992u);
    EXPECT_EQ(tut.hidden_neurons, 235u);
    EXPECT_EQ(tut.regularization, 0.05);
    EXPECT_EQ(tut.db_type, DbType::multi_floor);
    EXPECT_EQ(r.names().size(), 12u);
}

TEST(Registry, FrozenHyperparameters) {
    const std::map<std::string, std::pair<std::size_t, double>> expected{
        {"LIB1", {105, 0.05}}, {"LIB2", {105, 0.01}}, {"TUT1", {75, 0.1}},   {"TUT2", {160, 0.01}},
        {"TUT3", {235, 0.05}}, {"TUT4", {275, 0.05}}, {"TUT5", {195, 0.01}}, {"TUT6", {450, 0.1}},
        {"TUT7", {200, 1.0}},  {"UJI1", {530, 0.1}},  {"UJI2", {215, 0.01}}, {"UTS1", {275, 0.01}},
    };
    const auto r = DatasetRegistry::with_builtins();
    for (const auto& [name, lc] : expected) {
        EXPECT_EQ(r.lookup(name).hidden_neurons, lc.first) << name;
        EXPECT_EQ(r.lookup(name).regularization, lc.second) << name;
        EXPECT_EQ(r.lookup(name).sentinel_raw, 100.0) << name;
    }
}

TEST(Registry, UnknownNameListsKnownNames) {
    const auto r = DatasetRegistry::with_builtins();
    try {
        r.lookup("NOPE");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("UJI1"), std::string::npos);
    }
    DatasetRegistry custom;
    EXPECT_THROW(custom.add(DatasetDescriptor{"X", 1, 1, 1, 0, 0.1}), ConfigError);
}

TEST(SplitValidation, OneFloorArithmetic) {
    const RadioMap m = labelled_map({{Label{0, 0}, 100}});
    const auto s = split_validation(m, 0.1, 3);
    EXPECT_EQ(s.train.size(), 90u);
    EXPECT_EQ(s.validation.size(), 10u);
    EXPECT_TRUE(s.warnings.empty());
}

TEST(SplitValidation, StratifiedPerFloor) {
    const RadioMap m = labelled_map({{Label{0, 0}, 50}, {Label{0, 1}, 50}});
    const auto s = split_validation(m, 0.1, 9);
    EXPECT_EQ(std::count(s.validation.labels.begin(), s.validation.labels.end(), Label{0, 0}), 5);
    EXPECT_EQ(std::count(s.validation.labels.begin(), s.validation.labels.end(), Label{0, 1}), 5);
}

TEST(SplitValidation, DeterministicPerSeed) {
    const RadioMap m = labelled_map({{Label{0, 0}, 37}, {Label{1, 2}, 23}});
    const auto a = split_validation(m, 0.2, 4);
    const auto b = split_validation(m, 0.2, 4);
    EXPECT_EQ(a.validation.rss, b.validation.rss);
    EXPECT_EQ(a.train.rss, b.train.rss);
}

TEST(SplitValidation, SingletonGroupWarnsAndStaysInTraining) {
    const RadioMap m = labelled_map({{Label{0, 0}, 10}, {Label{0, 3}, 1}});
    const auto s = split_validation(m, 0.1, 1);
    ASSERT_EQ(s.warnings.size(), 1u);
    EXPECT_EQ(std::count(s.train.labels.begin(), s.train.labels.end(), Label{0, 3}), 1);
    EXPECT_THROW(split_validation(m, 0.0, 1), ConfigError);
    EXPECT_THROW(split_validation(m, 1.0, 1), ConfigError);
}

TEST(SplitValidation, PropertyPartition) {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<Label, std::size_t>> groups;
        const int classes = 1 + static_cast<int>(rng.below(6));
        for (int c = 0; c < classes; ++c) groups.push_back({Label{c % 2, c}, 1 + rng.below(40)});
        const RadioMap m = labelled_map(groups);
        const double fraction = 0.05 + 0.5 * rng.uniform();
        const auto s = split_validation(m, fraction, trial);
        EXPECT_EQ(s.train.size() + s.validation.size(), m.size());
        std::map<Label, int> before, after;
        for (const auto& l : m.labels) ++before[l];
        for (const auto& l : s.train.labels) ++after[l];
        for (const auto& l : s.validation.labels) ++after[l];
        EXPECT_EQ(before, after);
        // Every row appears exactly once (column 0 is a unique row tag).
        std::vector<double> tags;
        for (std::size_t r = 0; r < s.train.size(); ++r) tags.push_back(s.train.rss(r, 0));
        for (std::size_t r = 0; r < s.validation.size(); ++r) tags.push_back(s.validation.rss(r, 0));
        std::sort(tags.begin(), tags.end());
        EXPECT_EQ(std::adjacent_find(tags.begin(), tags.end()), tags.end());
    }
}

TEST(Synthetic, BundledFilesMatchGenerator) {
    const DatasetManifest m = load_manifest(std::filesystem::path(CNNELM_SYNTHETIC_DIR) / "manifest.json");
    const RadioMap train = load_csv(m.train_path, m.schema);
    const RadioMap test = load_csv(m.test_path, m.schema);
    const auto [gtrain, gtest] = make_synthetic();
    EXPECT_EQ(train.rss, gtrain.rss);
    EXPECT_EQ(test.labels, gtest.labels);
    EXPECT_EQ(train.size() + test.size(), 2000u);
    EXPECT_EQ(train.n_aps(), 100u);
    std::map<Label, int> classes;
    for (const auto& l : train.labels) ++classes[l];
    EXPECT_EQ(classes.size(), 12u);
}

TEST(Manifest, PublicTemplatesParse) {
    const std::filesystem::path dir = std::filesystem::path(CNNELM_SYNTHETIC_DIR).parent_path() / "manifests";
    for (const char* name : {"UJI1", "UJI2"}) {
        const DatasetManifest m = load_manifest(dir / (std::string(name) + ".json"));
        EXPECT_EQ(m.name, name);
        EXPECT_EQ(m.schema.n_aps(), DatasetRegistry::with_builtins().lookup(name).n_aps);
        EXPECT_EQ(m.schema.building_col, 523u);
        EXPECT_EQ(m.schema.coord_cols, (std::vector<std::size_t>{520, 521}));
    }
}
