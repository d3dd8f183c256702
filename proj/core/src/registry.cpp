#include <algorithm>

#include "cnnelm/dataset.hpp"
#include "cnnelm/error.hpp"

namespace cnnelm {

std::string_view to_string(DbType type) {
    return type == DbType::multi_floor ? "MF" : "MB-MF";
}

DatasetRegistry DatasetRegistry::with_builtins() {
    constexpr auto MF = DbType::multi_floor;
    constexpr auto MB = DbType::multi_building_multi_floor;
    DatasetRegistry r;
    //          name    train   test  APs    L     c
    r.add({"LIB1", 576, 3120, 174, 105, 0.05, MF, 100.0});
    r.add({"LIB2", 576, 3120, 197, 105, 0.01, MF, 100.0});
    r.add({"TUT1", 1476, 490, 309, 75, 0.1, MF, 100.0});
    r.add({"TUT2", 584, 176, 354, 160, 0.01, MF, 100.0});
    r.add({"TUT3", 697, 3951, 992, 235, 0.05, MF, 100.0});
    r.add({"TUT4", 3951, 697, 992, 275, 0.05, MF, 100.0});
    r.add({"TUT5", 446, 982, 489, 195, 0.01, MF, 100.0});
    r.add({"TUT6", 3116, 7269, 652, 450, 0.1, MF, 100.0});
    r.add({"TUT7", 2787, 6504, 801, 200, 1.0, MF, 100.0});
    r.add({"UJI1", 19861, 1111, 520, 530, 0.1, MB, 100.0});
    r.add({"UJI2", 20972, 5179, 520, 215, 0.01, MB, 100.0});
    r.add({"UTS1", 9108, 388, 589, 275, 0.01, MF, 100.0});
    return r;
}

void DatasetRegistry::add(DatasetDescriptor descriptor) {
    if (descriptor.hidden_neurons == 0)
        throw ConfigError("dataset " + descriptor.name + ": hidden neuron count must be positive");
    if (!(descriptor.regularization > 0.0))
        throw ConfigError("dataset " + descriptor.name + ": regularization must be positive");
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.name == descriptor.name; });
    if (it != entries_.end())
        *it = std::move(descriptor);
    else
        entries_.push_back(std::move(descriptor));
}

bool DatasetRegistry::contains(std::string_view name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.name == name; });
}

const DatasetDescriptor& DatasetRegistry::lookup(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    std::string known;
    for (const auto& e : entries_) known += (known.empty() ? "" : ", ") + e.name;
    throw ConfigError("unknown dataset '" + std::string(name) + "'; known datasets: " + known);
}

std::vector<std::string> DatasetRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

}  // namespace cnnelm
