#include <benchmark/benchmark.h>

#include "cnnelm/elm.hpp"
#include "cnnelm/featurizer.hpp"
#include "cnnelm/knn.hpp"
#include "cnnelm/linalg.hpp"
#include "cnnelm/preprocess.hpp"
#include "cnnelm/rng.hpp"
#include "cnnelm/synthetic.hpp"

using namespace cnnelm;

namespace {

Matrix random(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.uniform(-1.0, 1.0);
    return m;
}

struct Prepared {
    Matrix train;
    Matrix test;
    RadioMap map;
};

const Prepared& synthetic() {
    static const Prepared p = [] {
        auto [train, test] = make_synthetic();
        const auto params = fit_preprocess(train, NormMode::per_feature);
        return Prepared{transform(train.rss, params), transform(test.rss, params), std::move(train)};
    }();
    return p;
}

}  // namespace

static void BM_Matmul(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random(n, 520, 1), b = random(520, 530, 2);
    for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(512);

static void BM_Gram(benchmark::State& state) {
    const auto l = static_cast<std::size_t>(state.range(0));
    const Matrix h = random(2000, l, 3);
    for (auto _ : state) benchmark::DoNotOptimize(gram(h));
}
BENCHMARK(BM_Gram)->Arg(235)->Arg(530);

static void BM_SolveSpd(benchmark::State& state) {
    const auto l = static_cast<std::size_t>(state.range(0));
    Matrix a = gram(random(l + 50, l, 4));
    for (std::size_t i = 0; i < l; ++i) a(i, i) += 10.0;
    const Matrix b = random(l, 12, 5);
    for (auto _ : state) benchmark::DoNotOptimize(solve_spd(a, b));
}
BENCHMARK(BM_SolveSpd)->Arg(235)->Arg(530);

static void BM_Featurize(benchmark::State& state) {
    const Matrix x = random(1000, 520, 6);
    const FeaturizerSpec spec = init_featurizer(7, 520);
    for (auto _ : state) benchmark::DoNotOptimize(featurize(x, spec));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Featurize);

static void BM_KnnClassify(benchmark::State& state) {
    const auto& p = synthetic();
    const KnnIndex index = KnnIndex::build(p.train, p.map.labels);
    for (auto _ : state) benchmark::DoNotOptimize(index.classify_all(p.test));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.test.rows()));
}
BENCHMARK(BM_KnnClassify)->Unit(benchmark::kMillisecond);

static void BM_ElmPredict(benchmark::State& state) {
    const auto& p = synthetic();
    const ElmModel model = train_elm(p.train, p.map.labels, ElmConfig{530, 0.1, 1});
    const bool quantized = state.range(0) != 0;
    const ElmModel q = quantize(model);
    for (auto _ : state) {
        if (quantized)
            benchmark::DoNotOptimize(predict_quantized(p.test, q));
        else
            benchmark::DoNotOptimize(predict(p.test, model));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.test.rows()));
}
BENCHMARK(BM_ElmPredict)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ElmTrain(benchmark::State& state) {
    const auto& p = synthetic();
    for (auto _ : state) benchmark::DoNotOptimize(train_elm(p.train, p.map.labels, ElmConfig{530, 0.1, 1}));
}
BENCHMARK(BM_ElmTrain)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
