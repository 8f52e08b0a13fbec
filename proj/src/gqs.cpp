#include "cpqr/gqs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpqr/error.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

namespace {

double wavenumber(double energy) { return std::sqrt(2.0 * constants().mass_au() * energy); }

}  // namespace

complex scattering_length_estimate(const ReflectionResult& result) {
    const double k = wavenumber(result.energy);
    // log1p keeps the small loss exact: ln|r|^2 = ln(1 - loss).
    const double im = std::log1p(-result.loss) / (4.0 * k);
    const double re = -std::arg(-result.r_plane) / (2.0 * k);
    return {re, im};
}

ScatteringLength scattering_length(const PotentialTable& table, const ScatteringOptions& opts) {
    if (!(opts.height1_m > 0.0) || !(opts.height2_m > 0.0) || opts.height1_m == opts.height2_m) {
        throw ConfigError("scattering length needs two distinct positive heights");
    }
    if (!(opts.linear_tol > 0.0)) throw ConfigError("linearity tolerance must be positive");
    ScatteringLength out;
    if (table.is_zero()) {
        out.absorbing = false;
        out.energy1 = energy_from_height_au(opts.height1_m);
        out.energy2 = energy_from_height_au(opts.height2_m);
        return out;
    }

    double scale = 1.0;
    double mismatch = 0.0;
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt, scale *= 0.1) {
        const double e1 = energy_from_height_au(opts.height1_m * scale);
        const double e2 = energy_from_height_au(opts.height2_m * scale);
        const ReflectionResult r1 = solve_reflection(table, e1, opts.solver);
        const ReflectionResult r2 = solve_reflection(table, e2, opts.solver);
        const complex a1 = scattering_length_estimate(r1);
        const complex a2 = scattering_length_estimate(r2);
        mismatch = std::abs(a1.imag() - a2.imag()) / std::max(std::abs(a1.imag()), std::abs(a2.imag()));
        if (!(mismatch <= opts.linear_tol)) continue;

        const double k1 = wavenumber(e1);
        const double k2 = wavenumber(e2);
        out.a = (k2 * a1 - k1 * a2) / (k2 - k1);
        out.energy1 = e1;
        out.energy2 = e2;
        out.loss1 = r1.loss;
        out.loss2 = r2.loss;
        const double im = std::abs(out.a.imag());
        out.linearity = std::max(std::abs(r1.loss / (4.0 * k1 * im) - 1.0),
                                 std::abs(r2.loss / (4.0 * k2 * im) - 1.0));
        if (!(out.a.imag() < 0.0)) {
            throw NumericalError("extrapolated Im a is not negative for " + table.label());
        }
        return out;
    }
    std::ostringstream os;
    os << "scattering length for " << table.label() << " not in the linear regime: |Im a| estimates differ by "
       << mismatch * 100.0 << "% after " << opts.max_retries << " retries";
    throw NumericalError(os.str());
}

LifetimeResult gqs_lifetime(const ScatteringLength& a, const std::string& mirror, double porosity) {
    if (!(a.a.imag() < 0.0)) throw ConfigError("lifetime needs Im a < 0 (an absorbing mirror)");
    const PhysicalConstants& c = constants();
    LifetimeResult out;
    out.tau_s = c.time_au_s() / (2.0 * c.mg_au() * std::abs(a.a.imag()));
    out.mirror = mirror;
    out.porosity = porosity;
    out.a = a.a;
    return out;
}

LifetimeResult gqs_lifetime_or_infinite(const ScatteringLength& a, const std::string& mirror,
                                        double porosity) {
    if (a.absorbing) return gqs_lifetime(a, mirror, porosity);
    return {std::numeric_limits<double>::infinity(), mirror, porosity, a.a};
}

LifetimeResult mirror_lifetime(const PotentialTable& table, const ScatteringOptions& opts) {
    const ScatteringLength a = scattering_length(table, opts);
    const auto& m = table.mirror();
    return gqs_lifetime_or_infinite(a, m ? m->material() : table.label(), m ? m->porosity() : 0.0);
}

}  // namespace cpqr
