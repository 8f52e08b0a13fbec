#include <cmath>
#include <limits>

#include "doctest.h"

#include "cpqr/error.hpp"
#include "cpqr/gqs.hpp"
#include "cpqr/units.hpp"
#include "oracles/numerov.hpp"
#include "support.hpp"

using namespace cpqr;
using testing::table;

namespace {

const double kMass = constants().mass_au();

// k -> 0 limit of -ln|r|^2 / 4k from the Numerov oracle, linear in k.
double numerov_im_a(const PotentialTable& t, double h1, double h2) {
    double est[2], k[2];
    int i = 0;
    for (double h : {h1, h2}) {
        const double e = energy_from_height_au(h);
        k[i] = std::sqrt(2.0 * kMass * e);
        const double r = oracle::numerov_reflection(t, e).abs_r;
        est[i] = std::log(r * r) / (4.0 * k[i]);
        ++i;
    }
    return (k[1] * est[0] - k[0] * est[1]) / (k[1] - k[0]);
}

}  // namespace

TEST_SUITE("gqs") {

TEST_CASE("pure retarded tail: Numerov oracle and the exact -i beta4") {
    const double c4 = 73.6;
    const auto t = testing::power_law(c4, 4);
    const ScatteringLength a = scattering_length(t);
    CHECK(a.absorbing);
    CHECK(a.a.imag() < 0.0);
    CHECK(a.a.imag() == doctest::Approx(numerov_im_a(t, 1e-9, 4e-9)).epsilon(0.01));
    // Full absorption on -C4/z^4 gives a = -i sqrt(2 m C4) exactly.
    const double beta4 = std::sqrt(2.0 * kMass * c4);
    CHECK(a.a.imag() == doctest::Approx(-beta4).epsilon(1e-4));
    CHECK(std::abs(a.a.real()) < 1e-3 * beta4);
}

TEST_CASE("free space: no absorption, infinite lifetime") {
    const ScatteringLength a = scattering_length(PotentialTable::zero());
    CHECK_FALSE(a.absorbing);
    CHECK(a.a.imag() == 0.0);
    CHECK(a.loss1 == 0.0);
    CHECK(std::isinf(gqs_lifetime_or_infinite(a).tau_s));
    CHECK_THROWS_AS(gqs_lifetime(a), ConfigError);
    ScatteringLength positive;
    positive.a = {0.0, 1.0};
    CHECK_THROWS_AS(gqs_lifetime(positive), ConfigError);
}

TEST_CASE("lifetimes of bulk and porous mirrors") {
    const auto pc = mirror_lifetime(table("perfect_conductor"));
    CHECK(pc.tau_s == doctest::Approx(0.11).epsilon(0.20));
    CHECK(pc.tau_s > 0.0);
    const auto sio2 = mirror_lifetime(table("silica"));
    CHECK(sio2.tau_s == doctest::Approx(0.22).epsilon(0.25));
    const auto aerogel = mirror_lifetime(table("silica_98"));
    CHECK(aerogel.tau_s == doctest::Approx(4.6).epsilon(0.40));
    CHECK(aerogel.porosity == doctest::Approx(0.98));
    // tau = hbar / (2 m g |Im a|), checked in SI.
    const double im_a_m = std::abs(pc.a.imag()) * constants().bohr_m();
    const double mg_si = constants().mg_neV_per_m * 1e-9 * 1.602176634e-19;
    CHECK(pc.tau_s == doctest::Approx(1.054571817e-34 / (2.0 * mg_si * im_a_m)).epsilon(1e-9));
}

TEST_CASE("linearity: 1 - |r|^2 = 4k|Im a| at both extraction energies") {
    for (const char* key : {"perfect_conductor", "silicon", "silica_slab_5nm"}) {
        const ScatteringLength a = scattering_length(table(key));
        CHECK(a.linearity < 0.05);
        const double k1 = std::sqrt(2.0 * kMass * a.energy1);
        CHECK(4.0 * k1 * std::abs(a.a.imag()) < 1e-3);
        CHECK(a.loss1 == doctest::Approx(4.0 * k1 * std::abs(a.a.imag())).epsilon(0.05));
    }
}

TEST_CASE("non-linear regime is retried and then reported") {
    ScatteringOptions strict;
    strict.linear_tol = 1e-13;
    strict.max_retries = 1;
    CHECK_THROWS_AS(scattering_length(table("perfect_conductor"), strict), NumericalError);
    ScatteringOptions same;
    same.height2_m = same.height1_m;
    CHECK_THROWS_AS(scattering_length(table("perfect_conductor"), same), ConfigError);
}

TEST_CASE("lifetime grows with porosity") {
    double prev = mirror_lifetime(table("silica")).tau_s;
    for (const char* key : {"silica_50", "silica_80", "silica_90", "silica_95", "silica_98"}) {
        const double tau = mirror_lifetime(table(key)).tau_s;
        CHECK(tau > prev);
        prev = tau;
    }
}

TEST_CASE("material ordering of lifetimes") {
    double prev = 0.0;
    for (const char* key : {"perfect_conductor", "silicon", "silica", "silica_slab_5nm", "graphene"}) {
        const double tau = mirror_lifetime(table(key)).tau_s;
        CHECK(tau > prev);
        prev = tau;
    }
}

}
