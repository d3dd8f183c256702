#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "cnnelm/dataset.hpp"
#include "cnnelm/error.hpp"
#include "cnnelm/eval.hpp"
#include "cnnelm/knn.hpp"
#include "cnnelm/pipeline.hpp"
#include "cnnelm/serialize.hpp"
#include "cnnelm/synthetic.hpp"

namespace cnnelm::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kDataRootEnv = "CNNELM_DATA_ROOT";

/// Raised for accuracy gates; maps to exit code 1.
class GateFailure : public Error {
public:
    using Error::Error;
};

struct ResolvedDataset {
    DatasetManifest manifest;
    DatasetDescriptor descriptor;
};

struct Common {
    std::string dataset;
    std::string data_root;
};

struct TrainOptions {
    std::string approach = "cnn_elm";
    std::uint64_t seed = 42;
    std::string hidden = "registry";
    std::string regularization = "registry";
    std::string norm_mode = "per_feature";
    std::size_t kernel_size = 3;
    bool quantize = false;
    std::string output_dir = ".";
    double validation_fraction = 0.1;
    std::size_t sweep_max = 0;
    std::size_t sweep_step = 5;
    double min_floor_hit = -1.0;
};

fs::path manifest_for(const Common& c) {
    const fs::path as_path(c.dataset);
    if (as_path.extension() == ".json" || fs::is_regular_file(as_path)) return as_path;
    if (c.data_root.empty())
        throw IoError("dataset '" + c.dataset + "' is not a manifest path and no data root is set (--data-root or " +
                      kDataRootEnv + ")");
    return fs::path(c.data_root) / c.dataset / "manifest.json";
}

ResolvedDataset resolve(const Common& c) {
    const fs::path mpath = manifest_for(c);
    if (!fs::exists(mpath)) throw IoError("manifest not found: " + mpath.string());
    ResolvedDataset r;
    r.manifest = load_manifest(mpath);
    const auto registry = DatasetRegistry::with_builtins();
    const std::string& name = r.manifest.name;
    if (registry.contains(name)) {
        r.descriptor = registry.lookup(name);
    } else {
        r.descriptor.name = name;
        r.descriptor.n_aps = r.manifest.schema.n_aps();
        r.descriptor.db_type = r.manifest.schema.building_col ? DbType::multi_building_multi_floor
                                                              : DbType::multi_floor;
        r.descriptor.sentinel_raw = r.manifest.schema.sentinel;
    }
    if (r.manifest.hidden_neurons) r.descriptor.hidden_neurons = *r.manifest.hidden_neurons;
    if (r.manifest.regularization) r.descriptor.regularization = *r.manifest.regularization;
    return r;
}

RadioMap load_split(const ResolvedDataset& ds, bool train) {
    const fs::path& p = train ? ds.manifest.train_path : ds.manifest.test_path;
    if (p.empty())
        throw SchemaError("manifest for " + ds.manifest.name + " names no " + (train ? "train" : "test") + " file");
    if (!fs::exists(p)) throw IoError("data file not found: " + p.string());
    return load_csv(p, ds.manifest.schema, ds.manifest.name);
}

std::size_t parse_count(const std::string& text, const char* what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || v == 0) throw ConfigError(std::string(what) + " must be a positive integer, got '" + text + "'");
    return v;
}

double parse_positive(const std::string& text, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || !(v > 0.0)) throw ConfigError(std::string(what) + " must be positive, got '" + text + "'");
    return v;
}

json hit_json(std::span<const Label> pred, std::span<const Label> truth, bool multi_building) {
    json j;
    j["floor_hit"] = hit_rate(pred, truth, LabelField::floor);
    const auto b = building_hit_rate(pred, truth, multi_building);
    j["building_hit"] = b ? json(*b) : json(nullptr);
    return j;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

// --- commands ---------------------------------------------------------------

int cmd_ingest(const Common& c, std::ostream& out) {
    const ResolvedDataset ds = resolve(c);
    json j;
    j["dataset"] = ds.manifest.name;
    j["schema"] = json::parse(schema_to_json(ds.manifest.schema));
    for (const bool train : {true, false}) {
        const fs::path& p = train ? ds.manifest.train_path : ds.manifest.test_path;
        if (p.empty()) continue;
        const RadioMap map = load_split(ds, train);
        std::size_t detected = 0;
        double lowest = 0.0;
        for (double v : map.rss.data())
            if (v != kNotDetected) {
                ++detected;
                lowest = std::min(lowest, v);
            }
        const auto classes = ClassCodebook::from_labels(map.labels);
        j[train ? "train" : "test"] = {
            {"path", p.string()},
            {"samples", map.size()},
            {"n_aps", map.n_aps()},
            {"classes", classes.size()},
            {"detected_fraction", map.rss.size() ? double(detected) / double(map.rss.size()) : 0.0},
            {"min_rss", lowest},
        };
    }
    out << j.dump(2) << '\n';
    return kOk;
}

PipelineConfig resolve_config(const TrainOptions& o, const DatasetDescriptor& d) {
    PipelineConfig cfg;
    cfg.approach = parse_approach(o.approach);
    if (cfg.approach == Approach::knn) throw ConfigError("train supports elm_only and cnn_elm; knn has no model");
    cfg.seed = o.seed;
    cfg.norm_mode = parse_norm_mode(o.norm_mode);
    cfg.kernel_size = o.kernel_size;
    cfg.quantize = o.quantize;
    if (o.regularization == "registry") {
        if (!(d.regularization > 0.0))
            throw ConfigError("dataset " + d.name + " has no registry value for c; pass --c");
        cfg.regularization = d.regularization;
    } else {
        cfg.regularization = parse_positive(o.regularization, "--c");
    }
    if (o.hidden == "registry") {
        if (d.hidden_neurons == 0) throw ConfigError("dataset " + d.name + " has no registry value for L; pass --L");
        cfg.hidden_neurons = d.hidden_neurons;
    } else if (o.hidden != "auto") {
        cfg.hidden_neurons = parse_count(o.hidden, "--L");
    }
    return cfg;
}

// Runs the validation sweep on a stratified hold-out of the training map.
SweepResult run_sweep(const RadioMap& train, const PipelineConfig& cfg, std::size_t max_neurons, std::size_t step,
                      double fraction, bool multi_building, std::ostream& out) {
    ValidationSplit split = split_validation(train, fraction, cfg.seed);
    for (const auto& w : split.warnings) out << "warning: " << w << '\n';
    const PreprocessParams params = fit_preprocess(split.train, cfg.norm_mode);
    PipelineModel shell;
    shell.approach = cfg.approach;
    if (cfg.approach == Approach::cnn_elm) {
        FeaturizerOverrides ov;
        ov.kernel_size = cfg.kernel_size;
        ov.n_filters = cfg.n_filters;
        shell.featurizer = init_featurizer(featurizer_seed(cfg.seed), train.n_aps(), ov);
    }
    const Matrix xtr = model_inputs(shell, transform(split.train.rss, params));
    const Matrix xval = model_inputs(shell, transform(split.validation.rss, params));
    out << "sweep grid: L = 5.." << max_neurons << " step " << step << " (train " << split.train.size()
        << ", validation " << split.validation.size() << ")\n";
    SweepOptions so;
    so.regularization = cfg.regularization;
    so.max_neurons = max_neurons;
    so.step = step;
    so.seed = cfg.seed;
    so.multi_building = multi_building;
    so.on_entry = [&](const SweepEntry& e) {
        out << "  L=" << e.hidden_neurons << " floor_hit=" << fixed(e.floor_hit, 2);
        if (e.building_hit) out << " building_hit=" << fixed(*e.building_hit, 2);
        out << '\n';
    };
    SweepResult r = sweep_hidden(xtr, split.train.labels, xval, split.validation.labels, so);
    out << "selected L=" << r.selected << '\n';
    return r;
}

std::size_t default_sweep_max(const DatasetDescriptor& d) {
    return std::max<std::size_t>(5, d.hidden_neurons ? 2 * d.hidden_neurons : 500);
}

int cmd_train(const Common& c, const TrainOptions& o, std::ostream& out) {
    const ResolvedDataset ds = resolve(c);
    PipelineConfig cfg = resolve_config(o, ds.descriptor);
    const RadioMap train = load_split(ds, true);
    const bool multi_building = train.has_building;
    ensure_dir(o.output_dir);

    json meta;
    if (o.hidden == "auto") {
        const std::size_t max_l = o.sweep_max ? o.sweep_max : default_sweep_max(ds.descriptor);
        const SweepResult sweep = run_sweep(train, cfg, max_l, o.sweep_step, o.validation_fraction, multi_building, out);
        cfg.hidden_neurons = sweep.selected;
        json table = json::array();
        for (const auto& e : sweep.table)
            table.push_back({{"L", e.hidden_neurons},
                             {"floor_hit", e.floor_hit},
                             {"building_hit", e.building_hit ? json(*e.building_hit) : json(nullptr)}});
        meta["sweep"] = {{"selected", sweep.selected}, {"table", table}};
    }

    PipelineModel model;
    const Timing t = time_phase([&] { model = train_pipeline(train, cfg, ds.manifest.schema); }, 1);
    model.dataset = ds.manifest.name;

    const auto pred = predict_pipeline(model, train.rss, cfg.quantize);
    const json hits = hit_json(pred, train.labels, multi_building);

    const fs::path model_path = fs::path(o.output_dir) / "model.json";
    save_model(model_path, model);
    meta["config"] = json::parse(canonical_config(cfg, ds.manifest.name));
    meta["config_digest"] = model.config_digest;
    meta["train_time_s"] = t.seconds;
    meta["training_set"] = hits;
    meta["model"] = model_path.string();
    write_text(fs::path(o.output_dir) / "train_metadata.json", meta.dump(2));

    out << "config: " << canonical_config(cfg, ds.manifest.name) << '\n';
    out << "config_digest: " << model.config_digest << '\n';
    out << "L=" << cfg.hidden_neurons << " c=" << cfg.regularization << '\n';
    out << "train time: " << fixed(t.seconds, 3) << " s\n";
    out << "training-set floor hit: " << fixed(hits["floor_hit"].get<double>(), 2) << '%';
    if (!hits["building_hit"].is_null()) out << ", building hit: " << fixed(hits["building_hit"].get<double>(), 2) << '%';
    out << '\n' << "model written to " << model_path.string() << '\n';

    if (o.min_floor_hit >= 0.0 && hits["floor_hit"].get<double>() < o.min_floor_hit)
        throw GateFailure("training-set floor hit below --min-floor-hit");
    return kOk;
}

int cmd_predict(const std::string& model_path, const std::string& queries, const std::string& output, bool quantized,
                double min_floor_hit, std::ostream& out) {
    if (!fs::exists(model_path)) throw IoError("model file not found: " + model_path);
    if (!fs::exists(queries)) throw IoError("query file not found: " + queries);
    const PipelineModel model = load_model(model_path);
    const RadioMap q = load_queries(queries, model.schema);
    const auto pred = predict_pipeline(model, q.rss, quantized);

    std::ostringstream csv;
    csv << "building,floor\n";
    for (const auto& l : pred) csv << l.building << ',' << l.floor << '\n';
    if (output.empty() || output == "-")
        out << csv.str();
    else
        write_text(output, csv.str());

    if (!q.labels.empty() && !pred.empty()) {
        const json hits = hit_json(pred, q.labels, q.has_building);
        std::ostream& info = (output.empty() || output == "-") ? std::cerr : out;
        info << "floor hit: " << fixed(hits["floor_hit"].get<double>(), 2) << '%';
        if (!hits["building_hit"].is_null()) info << ", building hit: " << fixed(hits["building_hit"].get<double>(), 2) << '%';
        info << '\n';
        if (min_floor_hit >= 0.0 && hits["floor_hit"].get<double>() < min_floor_hit)
            throw GateFailure("floor hit below --min-floor-hit");
    }
    return kOk;
}

int cmd_sweep(const Common& c, const TrainOptions& o, std::ostream& out) {
    const ResolvedDataset ds = resolve(c);
    TrainOptions resolved = o;
    resolved.hidden = "auto";
    const PipelineConfig cfg = resolve_config(resolved, ds.descriptor);
    const RadioMap train = load_split(ds, true);
    const std::size_t max_l = o.sweep_max ? o.sweep_max : default_sweep_max(ds.descriptor);
    const SweepResult r = run_sweep(train, cfg, max_l, o.sweep_step, o.validation_fraction, train.has_building, out);
    ensure_dir(o.output_dir);
    std::ostringstream csv;
    csv << "L,floor_hit,building_hit\n";
    for (const auto& e : r.table)
        csv << e.hidden_neurons << ',' << fixed(e.floor_hit, 4) << ',' << (e.building_hit ? fixed(*e.building_hit, 4) : "")
            << '\n';
    write_text(fs::path(o.output_dir) / "sweep.csv", csv.str());
    return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_benchmark(const Common& c, const std::string& datasets, const std::string& approaches,
                  const std::string& seeds, const TrainOptions& o, bool end_to_end, double min_floor_hit,
                  std::ostream& out, std::ostream& err) {
    std::vector<std::string> names = split_list(datasets);
    if (names.size() == 1 && names.front() == "all") names = DatasetRegistry::with_builtins().names();
    if (names.empty()) throw ConfigError("no datasets given");

    const auto registry = DatasetRegistry::with_builtins();
    std::vector<BenchmarkDataset> list;
    for (const auto& name : names) {
        Common cc = c;
        cc.dataset = name;
        BenchmarkDataset bd;
        if (registry.contains(name)) {
            bd.descriptor = registry.lookup(name);
        } else {
            // Unregistered names must resolve to a manifest carrying L and c.
            bd.descriptor = resolve(cc).descriptor;
        }
        bd.load = [cc] {
            const ResolvedDataset ds = resolve(cc);
            return std::pair{load_split(ds, true), load_split(ds, false)};
        };
        list.push_back(std::move(bd));
    }

    std::vector<Approach> aps;
    for (const auto& a : split_list(approaches)) aps.push_back(parse_approach(a));
    std::vector<std::uint64_t> seed_list;
    for (const auto& s : split_list(seeds)) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("invalid seed '" + s + "'");
        seed_list.push_back(v);
    }
    if (seed_list.empty()) throw ConfigError("no seeds given");

    BenchmarkOptions bo;
    bo.norm_mode = parse_norm_mode(o.norm_mode);
    bo.kernel_size = o.kernel_size;
    bo.end_to_end_timing = end_to_end;
    bo.log = [&](std::string_view msg) { err << msg << '\n'; };
    const BenchmarkTable table = run_benchmark(list, aps, seed_list, bo);

    ensure_dir(o.output_dir);
    const fs::path dir(o.output_dir);
    write_text(dir / "benchmark.csv", benchmark_to_csv(table));
    write_text(dir / "benchmark.json", benchmark_to_json(table));
    const std::string text = render_table(table);
    write_text(dir / "benchmark.txt", text);
    out << text;
    if (table.averaged.empty()) throw IoError("every dataset failed; see benchmark.json");
    if (min_floor_hit >= 0.0)
        for (const auto& r : table.averaged)
            if (r.floor_hit < min_floor_hit)
                throw GateFailure(r.dataset + " " + r.approach + " floor hit below --min-floor-hit");
    return kOk;
}

int cmd_report(const std::string& input, std::ostream& out) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoError("cannot open " + input);
    std::ostringstream ss;
    ss << in.rdbuf();
    out << render_table(benchmark_from_json(ss.str()));
    return kOk;
}

int cmd_synth(const std::string& output_dir, std::uint64_t seed, std::ostream& out) {
    ensure_dir(output_dir);
    SyntheticConfig cfg;
    cfg.seed = seed;
    const auto [train, test] = make_synthetic(cfg);
    const fs::path dir(output_dir);
    const CsvSchema schema = write_csv(dir / "train.csv", train);
    write_csv(dir / "test.csv", test);
    json m = json::parse(schema_to_json(schema));
    m["name"] = "SYNTH";
    m["train"] = "train.csv";
    m["test"] = "test.csv";
    m["L"] = 530;
    m["c"] = 0.1;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
    out << "wrote " << train.size() << " training and " << test.size() << " test fingerprints to " << dir.string()
        << '\n';
    return kOk;
}

void add_train_flags(CLI::App* sub, TrainOptions& o) {
    sub->add_option("--approach", o.approach, "elm_only or cnn_elm")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for filters and hidden weights")->capture_default_str();
    sub->add_option("--L", o.hidden, "Hidden neurons: a count, 'registry' or 'auto' (sweep)")->capture_default_str();
    sub->add_option("--c", o.regularization, "Regularization: a value or 'registry'")->capture_default_str();
    sub->add_option("--norm-mode", o.norm_mode, "per_feature or per_sample")->capture_default_str();
    sub->add_option("--kernel-size", o.kernel_size, "Odd Conv1D kernel size")->capture_default_str();
    sub->add_flag("--quantize", o.quantize, "Store int8 weights and report with the quantized path");
    sub->add_option("--output-dir", o.output_dir, "Directory for written artifacts")->capture_default_str();
    sub->add_option("--validation-fraction", o.validation_fraction, "Hold-out fraction for the sweep")
        ->capture_default_str();
    sub->add_option("--sweep-max", o.sweep_max, "Largest L in the sweep (default 2x registry L)");
    sub->add_option("--sweep-step", o.sweep_step, "Sweep increment")->capture_default_str();
    sub->add_option("--min-floor-hit", o.min_floor_hit, "Exit 1 if the floor hit rate falls below this");
}

const char* error_type(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const SchemaError*>(&e)) return "schema";
    if (dynamic_cast<const ShapeError*>(&e)) return "shape";
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const NumericError*>(&e)) return "numeric";
    if (dynamic_cast<const IoError*>(&e)) return "io";
    if (dynamic_cast<const GateFailure*>(&e)) return "evaluation";
    return "internal";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"CNN-ELM building and floor classification from Wi-Fi fingerprints"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option defaults (flags override it)");
    bool error_json = false;
    app.add_flag("--error-json", error_json, "Print failures as a JSON object on stdout");

    Common common;
    TrainOptions train_opts;
    const auto add_dataset = [&](CLI::App* sub) {
        sub->add_option("--dataset", common.dataset, "Registered dataset name or manifest.json path")->required();
        sub->add_option("--data-root", common.data_root, "Directory holding <NAME>/manifest.json")
            ->envname(kDataRootEnv);
    };

    auto* ingest = app.add_subcommand("ingest", "Load and validate a dataset; print a summary");
    add_dataset(ingest);

    auto* train = app.add_subcommand("train", "Fit preprocessing, feature block and ELM; write model.json");
    add_dataset(train);
    add_train_flags(train, train_opts);

    std::string model_path, queries, output;
    bool quantized = false;
    double predict_gate = -1.0;
    auto* predict_cmd = app.add_subcommand("predict", "Classify query fingerprints with a saved model");
    predict_cmd->add_option("--model", model_path, "model.json from train")->required();
    predict_cmd->add_option("--queries", queries, "CSV of query fingerprints")->required();
    predict_cmd->add_option("--output", output, "Output CSV (default stdout)");
    predict_cmd->add_flag("--quantized", quantized, "Use the int8 inference path");
    predict_cmd->add_option("--min-floor-hit", predict_gate, "Exit 1 if labelled queries score below this");

    auto* sweep = app.add_subcommand("sweep", "Validation sweep over the hidden-neuron count");
    add_dataset(sweep);
    add_train_flags(sweep, train_opts);

    std::string bench_datasets = "all", bench_approaches = "knn,elm_only,cnn_elm", bench_seeds = "1,2,3,4,5";
    bool end_to_end = false;
    double bench_gate = -1.0;
    auto* bench = app.add_subcommand("benchmark", "Run baseline, ELM and CNN-ELM over datasets and seeds");
    bench->add_option("--datasets", bench_datasets, "Comma-separated names/manifests or 'all'")->capture_default_str();
    bench->add_option("--data-root", common.data_root, "Directory holding <NAME>/manifest.json")->envname(kDataRootEnv);
    bench->add_option("--approaches", bench_approaches, "Comma-separated approaches")->capture_default_str();
    bench->add_option("--seeds", bench_seeds, "Comma-separated seeds")->capture_default_str();
    bench->add_option("--norm-mode", train_opts.norm_mode, "per_feature or per_sample")->capture_default_str();
    bench->add_option("--kernel-size", train_opts.kernel_size, "Odd Conv1D kernel size")->capture_default_str();
    bench->add_option("--output-dir", train_opts.output_dir, "Directory for benchmark.{csv,json,txt}")
        ->capture_default_str();
    bench->add_flag("--end-to-end", end_to_end, "Include preprocessing in the timed phases");
    bench->add_option("--min-floor-hit", bench_gate, "Exit 1 if any averaged floor hit is below this");

    std::string report_input;
    auto* report = app.add_subcommand("report", "Render a benchmark.json as a comparison table");
    report->add_option("--input", report_input, "benchmark.json")->required();

    std::string synth_dir = "synthetic";
    std::uint64_t synth_seed = SyntheticConfig{}.seed;
    auto* synth = app.add_subcommand("synth", "Write the synthetic 3-building radio map as CSV + manifest");
    synth->add_option("--output-dir", synth_dir)->capture_default_str();
    synth->add_option("--seed", synth_seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (error_json)
            out << json{{"error", {{"type", "usage"}, {"message", e.what()}, {"exit_code", int(kInputError)}}}}.dump()
                << '\n';
        else
            err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*ingest) return cmd_ingest(common, out);
        if (*train) return cmd_train(common, train_opts, out);
        if (*predict_cmd) return cmd_predict(model_path, queries, output, quantized, predict_gate, out);
        if (*sweep) return cmd_sweep(common, train_opts, out);
        if (*bench)
            return cmd_benchmark(common, bench_datasets, bench_approaches, bench_seeds, train_opts, end_to_end,
                                 bench_gate, out, err);
        if (*report) return cmd_report(report_input, out);
        if (*synth) return cmd_synth(synth_dir, synth_seed, out);
    } catch (const std::exception& e) {
        const int code = dynamic_cast<const GateFailure*>(&e) ? kEvaluationFailure : kInputError;
        if (error_json)
            out << json{{"error", {{"type", error_type(e)}, {"message", e.what()}, {"exit_code", code}}}}.dump() << '\n';
        else
            err << "error: " << e.what() << '\n';
        return code;
    }
    return kOk;
}

}  // namespace cnnelm::cli
