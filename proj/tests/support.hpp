#pragma once

// Shared fixtures: potential tables are expensive, so each is built once per process.

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "cpqr/config.hpp"
#include "cpqr/potential.hpp"

namespace testing {

inline const cpqr::MaterialCatalog& catalog() {
    static const cpqr::MaterialCatalog cat(cpqr::MaterialCatalog::default_data_dir() / "materials");
    return cat;
}

inline cpqr::MirrorSpec mirror(const std::string& name, std::optional<double> slab_nm = std::nullopt,
                               std::optional<double> porosity = std::nullopt) {
    return cpqr::resolve_mirror(catalog(), {name, slab_nm, porosity});
}

/// Table for a named mirror: "perfect_conductor", "silicon", "silica", "silica_slab_5nm",
/// "graphene", "diamond_95", "silicon_95", "silica_98", or "silica_<porosity in %>".
inline const cpqr::PotentialTable& table(const std::string& key) {
    static std::map<std::string, cpqr::PotentialTable> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    cpqr::MirrorSpec m = cpqr::MirrorSpec::perfect_conductor();
    if (key == "silica_slab_5nm") {
        m = mirror("silica", 5.0);
    } else if (const auto us = key.find('_'); key != "perfect_conductor" && us != std::string::npos) {
        m = mirror(key.substr(0, us), std::nullopt, std::stod(key.substr(us + 1)) / 100.0);
    } else {
        m = mirror(key);
    }
    return cache.emplace(key, cpqr::PotentialTable::from_mirror(m, cpqr::TableOptions::for_mirror(m))).first->second;
}

inline cpqr::PotentialTable power_law(double coefficient, int n, double z_lo = 0.1, double z_hi = 1e7,
                                      std::size_t points = 400) {
    return cpqr::PotentialTable::from_function(
        "-" + std::to_string(coefficient) + "/z^" + std::to_string(n),
        [=](double z) { return -coefficient / std::pow(z, n); }, z_lo, z_hi, points);
}

}  // namespace testing
