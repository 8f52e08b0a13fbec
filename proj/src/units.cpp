#include "cpqr/units.hpp"

#include <cmath>
#include <utility>

#include "cpqr/error.hpp"

namespace cpqr {

const PhysicalConstants& constants() {
    static const PhysicalConstants kConstants{};
    return kConstants;
}

namespace {

// Dimension as (energy exponent, length exponent) plus the factor that takes a
// value in this unit to atomic units.
struct UnitInfo {
    int energy_power;
    int length_power;
    double to_au;
};

UnitInfo info(Unit unit) {
    const auto& k = constants();
    const double nm = 1.0 / k.bohr_nm();  // a0 per nm
    const double neV = 1.0 / k.hartree_neV();
    switch (unit) {
        case Unit::BohrRadius: return {0, 1, 1.0};
        case Unit::Nanometer: return {0, 1, nm};
        case Unit::Meter: return {0, 1, 1.0 / k.bohr_m()};
        case Unit::Hartree: return {1, 0, 1.0};
        case Unit::NanoElectronVolt: return {1, 0, neV};
        case Unit::HartreeBohr3: return {1, 3, 1.0};
        case Unit::NeVNm3: return {1, 3, neV * std::pow(nm, 3)};
        case Unit::HartreeBohr4: return {1, 4, 1.0};
        case Unit::NeVNm4: return {1, 4, neV * std::pow(nm, 4)};
        case Unit::HartreeBohr5: return {1, 5, 1.0};
        case Unit::NeVNm5: return {1, 5, neV * std::pow(nm, 5)};
    }
    throw ConfigError("unknown unit");
}

}  // namespace

std::string_view unit_symbol(Unit unit) {
    switch (unit) {
        case Unit::BohrRadius: return "a0";
        case Unit::Nanometer: return "nm";
        case Unit::Meter: return "m";
        case Unit::Hartree: return "Eh";
        case Unit::NanoElectronVolt: return "neV";
        case Unit::HartreeBohr3: return "Eh.a0^3";
        case Unit::NeVNm3: return "neV.nm^3";
        case Unit::HartreeBohr4: return "Eh.a0^4";
        case Unit::NeVNm4: return "neV.nm^4";
        case Unit::HartreeBohr5: return "Eh.a0^5";
        case Unit::NeVNm5: return "neV.nm^5";
    }
    return "?";
}

Quantity convert(Quantity q, Unit target) {
    const UnitInfo from = info(q.unit);
    const UnitInfo to = info(target);
    if (from.energy_power != to.energy_power || from.length_power != to.length_power) {
        throw ConfigError(std::string("cannot convert ") + std::string(unit_symbol(q.unit)) +
                          " to " + std::string(unit_symbol(target)));
    }
    if (q.unit == target) return q;
    return {q.value * from.to_au / to.to_au, target};
}

double energy_from_height_neV(double height_m) {
    if (!(height_m >= 0.0)) throw ConfigError("fall height must be non-negative");
    return constants().mg_neV_per_m * height_m;
}

double energy_from_height_au(double height_m) {
    return neV_to_au(energy_from_height_neV(height_m));
}

double height_from_energy_m(double energy_au) {
    return au_to_neV(energy_au) / constants().mg_neV_per_m;
}

}  // namespace cpqr
