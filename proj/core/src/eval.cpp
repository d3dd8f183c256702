#include "cnnelm/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "cnnelm/error.hpp"
#include "cnnelm/knn.hpp"
#include "cnnelm/published.hpp"
#include <nlohmann/json.hpp>

namespace cnnelm {

using json = nlohmann::json;

double hit_rate(std::span<const Label> predicted, std::span<const Label> truth, LabelField field) {
    if (predicted.size() != truth.size())
        throw ShapeError("hit rate: " + std::to_string(predicted.size()) + " predictions for " +
                         std::to_string(truth.size()) + " labels");
    if (truth.empty()) throw ConfigError("hit rate of an empty set is undefined");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool ok = field == LabelField::floor ? predicted[i].floor == truth[i].floor
                                                   : predicted[i].building == truth[i].building;
        hits += ok ? 1 : 0;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::optional<double> building_hit_rate(std::span<const Label> predicted, std::span<const Label> truth,
                                        bool multi_building) {
    if (!multi_building) return std::nullopt;
    return hit_rate(predicted, truth, LabelField::building);
}

namespace {

std::optional<double> ratio(const std::optional<double>& value, const std::optional<double>& base) {
    if (!value || !base || *base == 0.0) return std::nullopt;
    return *value / *base;
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
    if (values.empty()) return std::nullopt;
    double s = 0.0;
    for (const auto& v : values) {
        if (!v) return std::nullopt;
        s += *v;
    }
    return s / static_cast<double>(values.size());
}

// Mean over the present entries only; used for the cross-dataset row where
// single-building sets have no building hit.
std::optional<double> mean_present(const std::vector<std::optional<double>>& values) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& v : values)
        if (v) {
            s += *v;
            ++n;
        }
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
}

void log(const BenchmarkOptions& o, const std::string& msg) {
    if (o.log) o.log(msg);
}

}  // namespace

EvalReport normalize(EvalReport report, const EvalReport& baseline) {
    if (report.dataset != baseline.dataset)
        throw ConfigError("cannot normalize " + report.dataset + " against a " + baseline.dataset + " baseline");
    NormalizedMetrics n;
    n.building_hit = ratio(report.building_hit, baseline.building_hit);
    n.floor_hit = ratio(report.floor_hit, baseline.floor_hit);
    n.train_time = ratio(report.train_time, baseline.train_time);
    n.test_time = ratio(report.test_time, baseline.test_time);
    report.normalized = n;
    return report;
}

Timing time_phase(const std::function<void()>& phase, int max_repetitions) {
    using clock = std::chrono::steady_clock;
    std::vector<double> samples;
    const auto once = [&] {
        const auto t0 = clock::now();
        phase();
        const auto t1 = clock::now();
        samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    };
    once();
    if (samples.front() < 0.1)
        while (static_cast<int>(samples.size()) < std::max(1, max_repetitions)) once();
    Timing t;
    t.repetitions = static_cast<int>(samples.size());
    t.min_seconds = *std::min_element(samples.begin(), samples.end());
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    t.seconds = samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
    return t;
}

EvalReport average_reports(std::span<const EvalReport> reports, std::string dataset, std::string approach) {
    if (reports.empty()) throw ConfigError("nothing to average");
    EvalReport avg;
    avg.dataset = std::move(dataset);
    avg.approach = std::move(approach);
    std::vector<std::optional<double>> b, tr, te;
    double floor_sum = 0.0;
    std::string digests;
    for (const auto& r : reports) {
        b.push_back(r.building_hit);
        tr.push_back(r.train_time);
        te.push_back(r.test_time);
        floor_sum += r.floor_hit;
        digests += r.config_digest;
    }
    avg.building_hit = mean_of(b);
    avg.floor_hit = floor_sum / static_cast<double>(reports.size());
    avg.train_time = mean_of(tr);
    avg.test_time = mean_of(te);
    avg.config_digest = reports.size() == 1 ? reports.front().config_digest : fnv1a_hex(digests);
    return avg;
}

BenchmarkTable run_benchmark(std::span<const BenchmarkDataset> datasets, std::span<const Approach> approaches,
                             std::span<const std::uint64_t> seeds, const BenchmarkOptions& options) {
    BenchmarkTable table;
    std::map<std::string, std::vector<EvalReport>> by_approach;
    std::vector<std::string> succeeded;

    for (const auto& ds : datasets) {
        const auto& desc = ds.descriptor;
        std::pair<RadioMap, RadioMap> data;
        try {
            log(options, "loading " + desc.name);
            data = ds.load();
        } catch (const std::exception& e) {
            table.failures.push_back({desc.name, e.what()});
            log(options, "  failed: " + std::string(e.what()));
            continue;
        }
        auto& [train, test] = data;
        train.name = test.name = desc.name;
        const bool multi_building = desc.db_type == DbType::multi_building_multi_floor;

        try {
            const PreprocessParams params = fit_preprocess(train, options.norm_mode);
            const Matrix xtr = transform(train.rss, params);
            const Matrix xte = transform(test.rss, params);

            std::optional<EvalReport> baseline;
            std::vector<EvalReport> dataset_runs;
            std::vector<EvalReport> dataset_avgs;

            for (const Approach approach : approaches) {
                PipelineConfig cfg;
                cfg.approach = approach;
                cfg.hidden_neurons = desc.hidden_neurons;
                cfg.regularization = desc.regularization;
                cfg.norm_mode = options.norm_mode;
                cfg.kernel_size = options.kernel_size;
                cfg.n_filters = options.n_filters;

                std::vector<EvalReport> runs;
                if (approach == Approach::knn) {
                    const KnnIndex index = KnnIndex::build(xtr, train.labels);
                    std::vector<Label> pred;
                    const Timing te = time_phase([&] {
                        if (options.end_to_end_timing)
                            pred = index.classify_all(transform(test.rss, params));
                        else
                            pred = index.classify_all(xte);
                    });
                    EvalReport r;
                    r.dataset = desc.name;
                    r.approach = std::string(to_string(approach));
                    r.building_hit = building_hit_rate(pred, test.labels, multi_building);
                    r.floor_hit = hit_rate(pred, test.labels, LabelField::floor);
                    r.test_time = te.seconds;
                    r.config_digest = config_digest(cfg, desc.name);
                    runs.push_back(r);
                } else {
                    for (const auto seed : seeds) {
                        cfg.seed = seed;
                        PipelineModel model;
                        model.approach = approach;
                        model.preprocess = params;
                        if (approach == Approach::cnn_elm) {
                            FeaturizerOverrides ov;
                            ov.kernel_size = cfg.kernel_size;
                            ov.n_filters = cfg.n_filters;
                            model.featurizer = init_featurizer(featurizer_seed(seed), train.n_aps(), ov);
                        }
                        const ElmConfig ecfg{cfg.hidden_neurons, cfg.regularization, seed};
                        const Timing tr = time_phase([&] {
                            if (options.end_to_end_timing) {
                                const PreprocessParams p = fit_preprocess(train, options.norm_mode);
                                model.elm = train_elm(model_inputs(model, transform(train.rss, p)),
                                                      train.labels, ecfg);
                            } else {
                                model.elm = train_elm(model_inputs(model, xtr), train.labels, ecfg);
                            }
                        });
                        std::vector<Label> pred;
                        const Timing te = time_phase([&] {
                            const Matrix& base = xte;
                            if (options.end_to_end_timing)
                                pred = predict(model_inputs(model, transform(test.rss, params)), model.elm);
                            else
                                pred = predict(model_inputs(model, base), model.elm);
                        });
                        EvalReport r;
                        r.dataset = desc.name;
                        r.approach = std::string(to_string(approach));
                        r.seed = seed;
                        r.building_hit = building_hit_rate(pred, test.labels, multi_building);
                        r.floor_hit = hit_rate(pred, test.labels, LabelField::floor);
                        r.train_time = tr.seconds;
                        r.test_time = te.seconds;
                        r.config_digest = config_digest(cfg, desc.name);
                        runs.push_back(r);
                        char hit[32];
                        std::snprintf(hit, sizeof hit, "%.2f", r.floor_hit);
                        log(options, "  " + desc.name + " " + r.approach + " seed " + std::to_string(seed) +
                                         ": floor " + hit);
                    }
                }
                if (runs.empty()) continue;
                EvalReport avg = average_reports(runs, desc.name, runs.front().approach);
                if (approach == Approach::knn) baseline = avg;
                dataset_runs.insert(dataset_runs.end(), runs.begin(), runs.end());
                dataset_avgs.push_back(avg);
            }

            for (auto& r : dataset_runs) {
                if (baseline) r = normalize(std::move(r), *baseline);
                table.runs.push_back(r);
            }
            for (auto& r : dataset_avgs) {
                if (baseline) r = normalize(std::move(r), *baseline);
                by_approach[r.approach].push_back(r);
                table.averaged.push_back(r);
            }
            succeeded.push_back(desc.name);
        } catch (const std::exception& e) {
            table.failures.push_back({desc.name, e.what()});
            log(options, "  failed: " + std::string(e.what()));
        }
    }

    for (const Approach approach : approaches) {
        const auto it = by_approach.find(std::string(to_string(approach)));
        if (it == by_approach.end()) continue;
        const auto& rows = it->second;
        EvalReport avg;
        avg.dataset = "Avg.";
        avg.approach = it->first;
        std::vector<std::optional<double>> b, tr, te, nb, nf, ntr, nte;
        double floor_sum = 0.0;
        std::string digests;
        bool any_normalized = false;
        for (const auto& r : rows) {
            b.push_back(r.building_hit);
            tr.push_back(r.train_time);
            te.push_back(r.test_time);
            floor_sum += r.floor_hit;
            digests += r.config_digest;
            if (r.normalized) {
                any_normalized = true;
                nb.push_back(r.normalized->building_hit);
                nf.push_back(r.normalized->floor_hit);
                ntr.push_back(r.normalized->train_time);
                nte.push_back(r.normalized->test_time);
            }
        }
        avg.building_hit = mean_present(b);
        avg.floor_hit = floor_sum / static_cast<double>(rows.size());
        avg.train_time = mean_of(tr);
        avg.test_time = mean_of(te);
        if (any_normalized)
            avg.normalized = NormalizedMetrics{mean_present(nb), mean_present(nf), mean_present(ntr),
                                               mean_present(nte)};
        avg.config_digest = fnv1a_hex(digests);
        table.overall.push_back(avg);
    }

    table.published = published_rows(succeeded);
    return table;
}

std::vector<EvalReport> published_rows(std::span<const std::string> datasets) {
    std::vector<EvalReport> out;
    for (const auto& name : datasets) {
        if (const auto* row = published::find(name)) {
            EvalReport r;
            r.dataset = name;
            r.approach = "CNNLoc";
            r.published = true;
            r.floor_hit = row->cnnloc.floor_hit * row->baseline_floor_hit;
            if (row->cnnloc.building_hit && row->baseline_building_hit)
                r.building_hit = *row->cnnloc.building_hit * *row->baseline_building_hit;
            r.normalized = NormalizedMetrics{row->cnnloc.building_hit, row->cnnloc.floor_hit,
                                             row->cnnloc.train_time, row->cnnloc.test_time};
            r.config_digest = "published";
            out.push_back(r);
        }
        for (const auto& a : published::kAbsolute) {
            if (a.approach != "AFARLS" || a.dataset != name) continue;
            EvalReport r;
            r.dataset = name;
            r.approach = "AFARLS";
            r.published = true;
            r.building_hit = a.building_hit;
            r.floor_hit = a.floor_hit;
            r.train_time = a.train_time;
            r.test_time = a.test_time;
            r.config_digest = "published";
            out.push_back(r);
        }
    }
    return out;
}

// --- serialization ----------------------------------------------------------

namespace {

std::string cell(const std::optional<double>& v, const char* fmt) {
    if (!v) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return buf;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
}

json report_json(const EvalReport& r) {
    json j;
    j["dataset"] = r.dataset;
    j["approach"] = r.approach;
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    j["building_hit"] = opt(r.building_hit);
    j["floor_hit"] = r.floor_hit;
    j["train_time"] = opt(r.train_time);
    j["test_time"] = opt(r.test_time);
    if (r.normalized) {
        j["normalized"] = {{"building_hit", opt(r.normalized->building_hit)},
                           {"floor_hit", opt(r.normalized->floor_hit)},
                           {"train_time", opt(r.normalized->train_time)},
                           {"test_time", opt(r.normalized->test_time)}};
    } else {
        j["normalized"] = nullptr;
    }
    j["config_digest"] = r.config_digest;
    j["published"] = r.published;
    return j;
}

EvalReport report_from(const json& j) {
    EvalReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.approach = j.at("approach").get<std::string>();
    if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
    r.building_hit = get_opt(j, "building_hit");
    r.floor_hit = j.at("floor_hit").get<double>();
    r.train_time = get_opt(j, "train_time");
    r.test_time = get_opt(j, "test_time");
    if (j.contains("normalized") && !j["normalized"].is_null()) {
        const auto& n = j["normalized"];
        r.normalized = NormalizedMetrics{get_opt(n, "building_hit"), get_opt(n, "floor_hit"),
                                         get_opt(n, "train_time"), get_opt(n, "test_time")};
    }
    r.config_digest = j.value("config_digest", "");
    r.published = j.value("published", false);
    return r;
}

}  // namespace

std::string report_csv_row(const EvalReport& r) {
    std::string s = r.dataset + "," + r.approach + "," + (r.seed ? std::to_string(*r.seed) : "") + ",";
    s += cell(r.building_hit, "%.2f") + "," + cell(r.floor_hit, "%.2f") + ",";
    s += cell(r.train_time, "%.4f") + "," + cell(r.test_time, "%.4f") + ",";
    const NormalizedMetrics n = r.normalized.value_or(NormalizedMetrics{});
    s += cell(n.building_hit, "%.4f") + "," + cell(n.floor_hit, "%.4f") + "," + cell(n.train_time, "%.4f") +
         "," + cell(n.test_time, "%.4f") + ",";
    s += r.config_digest;
    return s;
}

std::string benchmark_to_csv(const BenchmarkTable& table) {
    std::string out(kReportCsvHeader);
    out += '\n';
    for (const auto* group : {&table.runs, &table.averaged, &table.overall, &table.published})
        for (const auto& r : *group) {
            // Seed-averaged rows are marked "mean" to keep them apart from
            // the single deterministic knn run.
            std::string row = report_csv_row(r);
            if (group == &table.averaged && r.approach != "knn") {
                const auto first = row.find(',');
                const auto second = row.find(',', first + 1);
                row.replace(second + 1, 0, "mean");
            }
            out += row + '\n';
        }
    return out;
}

std::string benchmark_to_json(const BenchmarkTable& table) {
    json j;
    for (const auto& [key, group] : {std::pair{"runs", &table.runs}, std::pair{"averaged", &table.averaged},
                                     std::pair{"overall", &table.overall}, std::pair{"published", &table.published}}) {
        json arr = json::array();
        for (const auto& r : *group) arr.push_back(report_json(r));
        j[key] = arr;
    }
    json failures = json::array();
    for (const auto& f : table.failures) failures.push_back({{"dataset", f.dataset}, {"message", f.message}});
    j["failures"] = failures;
    return j.dump(2);
}

BenchmarkTable benchmark_from_json(std::string_view text) {
    BenchmarkTable t;
    try {
        const auto j = json::parse(text);
        for (const auto& [key, group] : {std::pair{"runs", &t.runs}, std::pair{"averaged", &t.averaged},
                                         std::pair{"overall", &t.overall}, std::pair{"published", &t.published}})
            if (j.contains(key))
                for (const auto& r : j[key]) group->push_back(report_from(r));
        if (j.contains("failures"))
            for (const auto& f : j["failures"])
                t.failures.push_back({f.at("dataset").get<std::string>(), f.at("message").get<std::string>()});
    } catch (const json::exception& e) {
        throw SchemaError(std::string("benchmark report: ") + e.what());
    }
    return t;
}

std::string render_table(const BenchmarkTable& table) {
    std::vector<std::string> approaches;
    for (const auto& r : table.averaged)
        if (r.approach != "knn" && std::find(approaches.begin(), approaches.end(), r.approach) == approaches.end())
            approaches.push_back(r.approach);
    const bool have_cnnloc = std::any_of(table.published.begin(), table.published.end(),
                                         [](const auto& r) { return r.approach == "CNNLoc"; });

    std::vector<std::string> datasets;
    for (const auto& r : table.averaged)
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);

    const auto find = [](const std::vector<EvalReport>& rows, const std::string& ds, const std::string& ap)
        -> const EvalReport* {
        for (const auto& r : rows)
            if (r.dataset == ds && r.approach == ap) return &r;
        return nullptr;
    };
    const auto fmt = [](const std::optional<double>& v, const char* f) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, f, *v);
        return std::string(buf);
    };

    std::ostringstream os;
    char line[64];
    std::snprintf(line, sizeof line, "%-8s", "Database");
    os << line << " | " << "1-NN zeta_b zeta_f  delta_te";
    std::vector<std::string> groups;
    if (have_cnnloc) groups.push_back("CNNLoc*");
    for (const auto& a : approaches) groups.push_back(a);
    for (const auto& g : groups) {
        std::snprintf(line, sizeof line, " | %-34s", (g + " ~zb ~zf ~dtr ~dte").c_str());
        os << line;
    }
    os << '\n';

    const auto emit_norm = [&](const EvalReport* r) {
        if (!r || !r->normalized) {
            std::snprintf(line, sizeof line, " | %-34s", "(n/a)");
            os << line;
            return;
        }
        const auto& n = *r->normalized;
        std::snprintf(line, sizeof line, " | %7s %7s %7s %7s  ", fmt(n.building_hit, "%.4f").c_str(),
                      fmt(n.floor_hit, "%.4f").c_str(), fmt(n.train_time, "%.4f").c_str(),
                      fmt(n.test_time, "%.4f").c_str());
        os << line;
    };

    const auto emit_row = [&](const std::string& ds, const std::vector<EvalReport>& rows) {
        std::snprintf(line, sizeof line, "%-8s", ds.c_str());
        os << line;
        const EvalReport* base = find(rows, ds, "knn");
        if (base) {
            std::snprintf(line, sizeof line, " | %4s %6s %6.2f %9s", "", fmt(base->building_hit, "%.2f").c_str(),
                          base->floor_hit, fmt(base->test_time, "%.4f").c_str());
        } else {
            std::snprintf(line, sizeof line, " | %-28s", "(no baseline)");
        }
        os << line;
        if (have_cnnloc) emit_norm(find(table.published, ds, "CNNLoc"));
        for (const auto& a : approaches) emit_norm(find(rows, ds, a));
        os << '\n';
    };

    for (const auto& ds : datasets) emit_row(ds, table.averaged);
    if (!table.overall.empty()) {
        // The published CNNLoc columns have no measured average; leave them out.
        std::snprintf(line, sizeof line, "%-8s", "Avg.");
        os << line;
        const EvalReport* base = find(table.overall, "Avg.", "knn");
        if (base)
            std::snprintf(line, sizeof line, " | %4s %6s %6.2f %9s", "", fmt(base->building_hit, "%.2f").c_str(),
                          base->floor_hit, fmt(base->test_time, "%.4f").c_str());
        else
            std::snprintf(line, sizeof line, " | %-28s", "(no baseline)");
        os << line;
        if (have_cnnloc) emit_norm(nullptr);
        for (const auto& a : approaches) emit_norm(find(table.overall, "Avg.", a));
        os << '\n';
    }

    bool afarls = false;
    for (const auto& r : table.published) {
        if (r.approach != "AFARLS") continue;
        if (!afarls) os << "\nAFARLS* (absolute): dataset zeta_b zeta_f delta_tr delta_te\n";
        afarls = true;
        os << "  " << r.dataset << ' ' << fmt(r.building_hit, "%.2f") << ' ' << fmt(r.floor_hit, "%.2f") << ' '
           << fmt(r.train_time, "%.2f") << ' ' << fmt(r.test_time, "%.2f") << '\n';
    }
    if (have_cnnloc || afarls) os << "* published, not reproduced\n";
    for (const auto& f : table.failures) os << "FAILED " << f.dataset << ": " << f.message << '\n';
    return os.str();
}

}  // namespace cnnelm
