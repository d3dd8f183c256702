#include "cnnelm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cnnelm/error.hpp"
#include "cnnelm/rng.hpp"

namespace cnnelm {

namespace {

constexpr double kBuildingWidth = 60.0;
constexpr double kBuildingDepth = 40.0;
constexpr double kBuildingGap = 30.0;
constexpr double kFloorHeight = 4.0;
constexpr double kReferenceLoss = 35.0;
constexpr double kPathLossExponent = 2.6;
constexpr double kExteriorWallLoss = 15.0;

struct Point {
    int building;
    int floor;
    double x, y, z;
};

Point random_point(Rng& rng, int building, int floor) {
    const double x0 = building * (kBuildingWidth + kBuildingGap);
    return {building, floor, x0 + rng.uniform() * kBuildingWidth, rng.uniform() * kBuildingDepth,
            floor * kFloorHeight + 1.2};
}

RadioMap sample(Rng& rng, const std::vector<Point>& aps, const SyntheticConfig& cfg, std::size_t count,
                const char* name) {
    RadioMap map;
    map.name = name;
    map.has_building = true;
    map.rss = Matrix(count, aps.size());
    map.coords = Matrix(count, 3);
    map.labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.buildings)));
        const int f = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.floors)));
        const Point p = random_point(rng, b, f);
        const double device_offset = 3.0 * rng.normal();
        for (std::size_t a = 0; a < aps.size(); ++a) {
            const Point& ap = aps[a];
            const double dx = p.x - ap.x, dy = p.y - ap.y, dz = p.z - ap.z;
            const double d = std::max(1.0, std::sqrt(dx * dx + dy * dy + dz * dz));
            double rss = -kReferenceLoss - 10.0 * kPathLossExponent * std::log10(d) -
                         cfg.floor_loss_db * std::abs(p.floor - ap.floor) + device_offset +
                         cfg.noise_db * rng.normal();
            if (ap.building != p.building) rss -= 2.0 * kExteriorWallLoss;
            rss = std::round(std::min(rss, -1.0));
            map.rss(i, a) = rss < cfg.sensitivity_dbm ? kNotDetected : rss;
        }
        map.coords(i, 0) = p.x;
        map.coords(i, 1) = p.y;
        map.coords(i, 2) = p.z;
        map.labels.push_back({b, f});
    }
    return map;
}

}  // namespace

std::pair<RadioMap, RadioMap> make_synthetic(const SyntheticConfig& cfg) {
    if (cfg.buildings < 1 || cfg.floors < 1 || cfg.aps == 0 || cfg.train_size == 0)
        throw ConfigError("synthetic radio map needs positive sizes");
    Rng rng(cfg.seed);
    std::vector<Point> aps;
    aps.reserve(cfg.aps);
    // APs spread round-robin over every (building, floor) cell.
    const auto cells = static_cast<std::size_t>(cfg.buildings * cfg.floors);
    for (std::size_t a = 0; a < cfg.aps; ++a) {
        const auto cell = static_cast<int>(a % cells);
        aps.push_back(random_point(rng, cell / cfg.floors, cell % cfg.floors));
    }
    RadioMap train = sample(rng, aps, cfg, cfg.train_size, "SYNTH");
    RadioMap test = sample(rng, aps, cfg, cfg.test_size, "SYNTH");
    return {std::move(train), std::move(test)};
}

}  // namespace cnnelm
