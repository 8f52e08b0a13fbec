#pragma once

// Physical constants and unit conversions.
//
// Everything inside the library is computed in Hartree atomic units
// (hbar = m_e = e = 4 pi eps0 = 1). Lengths are in Bohr radii (a0), energies
// in Hartree (Eh), imaginary frequencies in Eh/hbar, polarizabilities in a0^3.
// The neV/nm system is used for everything a user sees next to the atomic value.

#include <string>
#include <string_view>

namespace cpqr {

struct PhysicalConstants {
    double hbar_si = 1.054571817e-34;       // J s
    double speed_of_light = 137.035999084;  // a0 Eh / hbar (= 1 / fine_structure)
    double fine_structure = 1.0 / 137.035999084;
    double atom_mass_kg = 1.6735e-27;       // hydrogen atom; antihydrogen assumed equal
    double electron_mass_kg = 9.1093837015e-31;
    double gravity = 9.806;                 // m / s^2
    double mg_neV_per_m = 102.5;            // weight per unit height, pinned to the printed value
    double hartree_aJ = 4.3597;
    double bohr_pm = 52.917;
    double electron_volt_aJ = 0.1602176634;

    /// Atom mass in electron masses.
    [[nodiscard]] double mass_au() const { return atom_mass_kg / electron_mass_kg; }
    [[nodiscard]] double hartree_neV() const { return hartree_aJ / electron_volt_aJ * 1e9; }
    [[nodiscard]] double bohr_nm() const { return bohr_pm * 1e-3; }
    [[nodiscard]] double bohr_m() const { return bohr_pm * 1e-12; }
    /// mg in Eh / a0.
    [[nodiscard]] double mg_au() const { return mg_neV_per_m * bohr_m() / hartree_neV(); }
    /// Atomic unit of time hbar / Eh, in seconds.
    [[nodiscard]] double time_au_s() const { return hbar_si / (hartree_aJ * 1e-18); }
};

/// The constants used throughout the library.
const PhysicalConstants& constants();

enum class Unit {
    BohrRadius,
    Nanometer,
    Meter,
    Hartree,
    NanoElectronVolt,
    HartreeBohr3,   // C3, atomic
    NeVNm3,         // C3, neV nm^3
    HartreeBohr4,
    NeVNm4,
    HartreeBohr5,
    NeVNm5,
};

struct Quantity {
    double value = 0.0;
    Unit unit = Unit::Hartree;
};

/// Converts between compatible units; throws ConfigError on a dimension mismatch.
Quantity convert(Quantity q, Unit target);

std::string_view unit_symbol(Unit unit);

/// E = m g h in neV. Rejects negative heights.
double energy_from_height_neV(double height_m);

/// E = m g h in Hartree.
double energy_from_height_au(double height_m);

double height_from_energy_m(double energy_au);

inline double neV_to_au(double e) { return e / constants().hartree_neV(); }
inline double au_to_neV(double e) { return e * constants().hartree_neV(); }
inline double nm_to_au(double l) { return l / constants().bohr_nm(); }
inline double au_to_nm(double l) { return l * constants().bohr_nm(); }

}  // namespace cpqr
