#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cpqr/error.hpp"
#include "cpqr/optical.hpp"
#include "cpqr/units.hpp"
#include "support.hpp"

using namespace cpqr;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("cpqr_test_" + name + ".mat");
    std::ofstream(path) << body;
    return path;
}

int parse_error_line(const std::filesystem::path& path) {
    try {
        read_material_file(path);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

// Textbook form of the Fresnel amplitudes, kept as an independent reference for the stable form.
Reflection fresnel_textbook(double eps, double kappa) {
    const double s = std::sqrt(kappa * kappa - 1.0 + eps);
    return {(eps * kappa - s) / (eps * kappa + s), (kappa - s) / (kappa + s)};
}

}  // namespace

TEST_SUITE("optical") {

TEST_CASE("dielectric function of a single oscillator") {
    const DielectricModel m("one", {{10.0, 1.0, 0.0}});
    CHECK(m.epsilon(0.0) == doctest::Approx(11.0).epsilon(1e-15));
    CHECK(m.epsilon(1e8) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.epsilon(1.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(m.characteristic_wavelength() == doctest::Approx(constants().speed_of_light));
}

TEST_CASE("shipped silicon reaches its static target") {
    const DielectricModel si = load_material_file(testing::catalog().dir() / "silicon.mat");
    CHECK(std::abs(si.static_epsilon() / 11.87 - 1.0) < 0.02);
    CHECK(si.epsilon(1e6) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hydrogen polarizability anchors") {
    const Polarizability a = Polarizability::hydrogen();
    CHECK(a(0.0) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(a(0.4444) == doctest::Approx(2.25).epsilon(1e-14));
    // (1/4 pi) int alpha d xi by Simpson in theta, xi = w tan(theta): 0.25 Eh a0^3.
    const int n = 2000;
    const double w = 0.4444, top = std::numbers::pi / 2.0;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double th = top * i / n;
        const double f = i == n ? 4.5 * w : a(w * std::tan(th)) * w / (std::cos(th) * std::cos(th));
        sum += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    const double c3 = sum * top / n / 3.0 / (4.0 * std::numbers::pi);
    CHECK(c3 == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("Fresnel amplitudes") {
    const Reflection pc = fresnel(std::numeric_limits<double>::infinity(), 1.7);
    CHECK(pc.tm == 1.0);
    CHECK(pc.te == -1.0);
    const Reflection vac = fresnel(1.0, 2.3);
    CHECK(vac.tm == 0.0);
    CHECK(vac.te == 0.0);
    const Reflection two = fresnel(2.0, 1.0);
    CHECK(two.tm == doctest::Approx((2.0 - std::sqrt(2.0)) / (2.0 + std::sqrt(2.0))).epsilon(1e-14));
    CHECK(two.tm == doctest::Approx(0.17157).epsilon(1e-4));
    CHECK(two.te == doctest::Approx(-0.17157).epsilon(1e-4));
}

TEST_CASE("Fresnel: stable form equals the textbook form and obeys the bounds") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> le(0.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        const double eps = 1.0 + std::pow(10.0, le(rng) - 3.0);
        const double kappa = 1.0 + std::pow(10.0, le(rng) - 3.0);
        const Reflection r = fresnel(eps, kappa);
        const Reflection t = fresnel_textbook(eps, kappa);
        // The textbook form cancels to ~1e-16 absolute as eps -> 1.
        CHECK(std::abs(r.tm - t.tm) <= 1e-9 * std::abs(t.tm) + 1e-14);
        CHECK(std::abs(r.te - t.te) <= 1e-9 * std::abs(t.te) + 1e-14);
        CHECK(r.tm >= 0.0);
        CHECK(r.tm <= 1.0);
        CHECK(r.te <= 0.0);
        CHECK(r.te >= -1.0);
    }
    // Grazing evanescent waves stay finite where the textbook form overflows.
    const Reflection far = fresnel(3.0, 1e200);
    CHECK(std::isfinite(far.tm));
    CHECK(std::isfinite(far.te));
}

TEST_CASE("slab reflection limits and slab <= bulk") {
    const DielectricModel silica = load_material_file(testing::catalog().dir() / "silica.mat");
    const double xi = 0.3, kappa = 1.4;
    const double eps = silica.epsilon(xi);
    const Reflection bulk = fresnel(eps, kappa);
    const Reflection thick = slab_reflection(silica, 1e9, xi, kappa);
    CHECK(thick.tm == doctest::Approx(bulk.tm).epsilon(1e-12));
    CHECK(thick.te == doctest::Approx(bulk.te).epsilon(1e-12));
    const Reflection thin = slab_reflection(silica, 1e-12, xi, kappa);
    CHECK(std::abs(thin.tm) < 1e-10);
    CHECK(std::abs(thin.te) < 1e-10);
    CHECK_THROWS_AS(slab_reflection(silica, 0.0, xi, kappa), ConfigError);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 3000; ++i) {
        const double x = std::pow(10.0, u(rng));
        const double k = 1.0 + std::pow(10.0, u(rng));
        const double d = std::pow(10.0, u(rng) + 2.0);
        const Reflection b = fresnel(silica.epsilon(x), k);
        const Reflection s = slab_reflection(silica, d, x, k);
        CHECK(std::abs(s.tm) <= std::abs(b.tm) * (1.0 + 1e-14));
        CHECK(std::abs(s.te) <= std::abs(b.te) * (1.0 + 1e-14));
    }
}

TEST_CASE("constant-conductivity sheet") {
    const Reflection none = sheet_reflection({0.0}, 1.0);
    CHECK(none.tm == 0.0);
    CHECK(none.te == 0.0);
    const SheetModel g = SheetModel::graphene();
    CHECK(g.eta == doctest::Approx(std::numbers::pi / 137.035999084).epsilon(1e-14));
    CHECK(g.eta == doctest::Approx(0.02293).epsilon(1e-3));
    const Reflection one = sheet_reflection(g, 1.0);
    CHECK(one.tm == doctest::Approx(0.011335).epsilon(5e-4));
    CHECK(one.tm == doctest::Approx(0.5 * g.eta / (1.0 + 0.5 * g.eta)).epsilon(1e-15));
    CHECK(sheet_reflection(g, 1e12).tm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Bruggeman mixing") {
    CHECK(bruggeman_mix(3.0, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(bruggeman_mix(3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bruggeman_mix(3.0, 0.5) == doctest::Approx((1.0 + std::sqrt(7.0)) / 2.0).epsilon(1e-14));
    CHECK(bruggeman_mix(3.0, 0.5) == doctest::Approx(1.8229).epsilon(1e-4));
    CHECK_THROWS_AS(bruggeman_mix(3.0, -0.01), ConfigError);
    CHECK_THROWS_AS(bruggeman_mix(3.0, 1.01), ConfigError);

    for (double em : {1.0, 1.5, 3.0, 5.7, 11.87, 1e3}) {
        double prev = em;
        for (int i = 0; i <= 200; ++i) {
            const double f = i / 200.0;
            const double e = bruggeman_mix(em, f);
            // Self-consistency of the mixing equation.
            const double residual = (1.0 - f) * (em - e) / (em + 2.0 * e) + f * (1.0 - e) / (1.0 + 2.0 * e);
            CHECK(std::abs(residual) < 1e-12);
            CHECK(e >= 1.0);
            CHECK(e <= em);
            CHECK(e <= prev * (1.0 + 1e-15));
            CHECK(std::abs(e - prev) < 0.2 * em);  // continuity at this sampling
            prev = e;
        }
    }
}

TEST_CASE("monotone response on the imaginary axis") {
    const Polarizability alpha = Polarizability::hydrogen();
    for (const auto& name : testing::catalog().names()) {
        const MaterialRecord rec = testing::catalog().get(name);
        if (rec.kind != MaterialKind::Dielectric) continue;
        double prev_eps = rec.model.epsilon(0.0);
        double prev_alpha = alpha(0.0);
        for (int i = 1; i <= 400; ++i) {
            const double xi = std::pow(10.0, -6.0 + 12.0 * i / 400.0);
            const double e = rec.model.epsilon(xi);
            CHECK(e <= prev_eps);
            CHECK(e >= 1.0);
            CHECK(alpha(xi) <= prev_alpha);
            CHECK(alpha(xi) > 0.0);
            prev_eps = e;
            prev_alpha = alpha(xi);
        }
    }
}

TEST_CASE("material files") {
    const auto ok = write_temp("ok", "# test\nname = toy\nosc = 10, 1\nosc = 2, 4, 0.5  # damped\n");
    const DielectricModel toy = load_material_file(ok);
    CHECK(toy.name() == "toy");
    REQUIRE(toy.oscillators().size() == 2);
    CHECK(toy.static_epsilon() == doctest::Approx(11.5));
    CHECK(toy.oscillators()[1].damping == 0.5);

    const DielectricModel vac = load_material_file(write_temp("vac", "name = nothing\n"));
    CHECK(vac.is_vacuum());
    CHECK(vac.epsilon(0.0) == 1.0);
    CHECK(vac.epsilon(3.0) == 1.0);

    CHECK(parse_error_line(write_temp("negw0", "name = bad\nosc = 1, 1\nosc = 1, -2\n")) == 3);
    CHECK(parse_error_line(write_temp("negs", "name = bad\n\nosc = -1, 1\n")) == 3);
    CHECK(parse_error_line(write_temp("nan", "name = bad\nosc = 1, x\n")) == 2);
    CHECK(parse_error_line(write_temp("key", "name = bad\ncolour = red\n")) == 2);
    CHECK(parse_error_line(write_temp("noeq", "name = bad\nosc 1 2\n")) == 2);
    CHECK(parse_error_line(write_temp("noname", "osc = 1, 1\n")) > 0);
    CHECK(parse_error_line(write_temp("sheet", "name = s\nkind = sheet\n")) > 0);
    CHECK_THROWS_AS(load_material_file("/nonexistent/none.mat"), ConfigError);
    CHECK_THROWS_AS(load_material_file(testing::catalog().dir() / "perfect_conductor.mat"), ConfigError);
}

TEST_CASE("catalog") {
    const auto names = testing::catalog().names();
    for (const char* n : {"diamond", "graphene", "perfect_conductor", "silica", "silicon"}) {
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    }
    CHECK(testing::catalog().get("graphene").kind == MaterialKind::Sheet);
    CHECK(testing::catalog().get("perfect_conductor").kind == MaterialKind::PerfectConductor);
    CHECK_THROWS_AS(static_cast<void>(testing::catalog().get("unobtainium")), ConfigError);
    CHECK_THROWS_AS(MaterialCatalog("/nonexistent/dir"), ConfigError);
}

}
