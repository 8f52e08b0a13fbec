#include <cmath>
#include <random>

#include "doctest.h"

#include "cpqr/error.hpp"
#include "cpqr/units.hpp"

using namespace cpqr;

TEST_SUITE("units") {

TEST_CASE("energy from fall height uses mg = 102.5 neV/m") {
    CHECK(energy_from_height_neV(0.30) == doctest::Approx(30.75).epsilon(1e-12));
    CHECK(energy_from_height_neV(0.10) == doctest::Approx(10.25).epsilon(1e-12));
    CHECK(energy_from_height_neV(0.0) == 0.0);
    CHECK_THROWS_AS(energy_from_height_neV(-0.1), ConfigError);
    CHECK(height_from_energy_m(energy_from_height_au(0.42)) == doctest::Approx(0.42).epsilon(1e-12));
}

TEST_CASE("pinned mg agrees with m g from SI values") {
    // 1.6735e-27 kg * 9.806 m/s^2 expressed in neV per metre.
    const double mg_si = 1.6735e-27 * 9.806 / 1.602176634e-19 * 1e9;
    CHECK(std::abs(constants().mg_neV_per_m / mg_si - 1.0) < 2e-3);
}

TEST_CASE("Hartree and Bohr take the printed values") {
    CHECK(constants().hartree_aJ == 4.3597);
    CHECK(constants().bohr_pm == 52.917);
    CHECK(constants().hartree_neV() == doctest::Approx(4.3597e-18 / 1.602176634e-19 * 1e9).epsilon(1e-14));
    CHECK(au_to_nm(1.0) == doctest::Approx(0.052917).epsilon(1e-14));
}

TEST_CASE("coefficient conversions match the dual-unit table columns") {
    // Perfect-conductor row: 0.25 Eh a0^3 = 1.01e6 neV nm^3, 73.6 Eh a0^4 = 1.57e7 neV nm^4.
    const double c3 = convert({0.25, Unit::HartreeBohr3}, Unit::NeVNm3).value;
    CHECK(c3 == doctest::Approx(1.01e6).epsilon(5e-3));
    const double c4 = convert({73.6, Unit::HartreeBohr4}, Unit::NeVNm4).value;
    CHECK(c4 == doctest::Approx(1.57e7).epsilon(5e-3));
    // Hand evaluation: Eh = 27.2111 eV, a0 = 0.052917 nm.
    const double eh_nev = 4.3597e-18 / 1.602176634e-19 * 1e9;
    CHECK(c3 == doctest::Approx(0.25 * eh_nev * std::pow(0.052917, 3)).epsilon(1e-12));
    CHECK(convert({1.0, Unit::HartreeBohr3}, Unit::HartreeBohr3).value == 1.0);
}

TEST_CASE("incompatible units are rejected") {
    CHECK_THROWS_AS(convert({1.0, Unit::HartreeBohr3}, Unit::NeVNm4), ConfigError);
    CHECK_THROWS_AS(convert({1.0, Unit::Hartree}, Unit::Nanometer), ConfigError);
    CHECK_THROWS_AS(convert({1.0, Unit::Meter}, Unit::NanoElectronVolt), ConfigError);
}

TEST_CASE("round trips are exact to 1e-12 for every compatible pair") {
    const std::vector<std::vector<Unit>> families{
        {Unit::BohrRadius, Unit::Nanometer, Unit::Meter},
        {Unit::Hartree, Unit::NanoElectronVolt},
        {Unit::HartreeBohr3, Unit::NeVNm3},
        {Unit::HartreeBohr4, Unit::NeVNm4},
        {Unit::HartreeBohr5, Unit::NeVNm5},
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> expo(-12.0, 12.0);
    for (const auto& fam : families) {
        for (Unit a : fam) {
            for (Unit b : fam) {
                for (int i = 0; i < 50; ++i) {
                    const double v = std::pow(10.0, expo(rng)) * (i % 2 ? -1.0 : 1.0);
                    const Quantity back = convert(convert({v, a}, b), a);
                    CHECK(back.unit == a);
                    CHECK(std::abs(back.value / v - 1.0) < 1e-12);
                }
            }
            // Composition: a -> b -> c equals a -> c.
            for (Unit b : fam) {
                for (Unit c : fam) {
                    const double direct = convert({3.7, a}, c).value;
                    const double via = convert(convert({3.7, a}, b), c).value;
                    CHECK(std::abs(via / direct - 1.0) < 1e-12);
                }
            }
        }
    }
}

}
