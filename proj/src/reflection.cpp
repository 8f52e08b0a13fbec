#include "cpqr/reflection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cpqr/error.hpp"
#include "cpqr/parallel.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr complex kI{0.0, 1.0};
// Dressing of the incoming wave is first order in p'/p^2; keep it below this at both ends.
constexpr double kMaxAdiabaticity = 1e-3;

}  // namespace

double local_momentum(double energy, double v, double mass) {
    if (!(energy > 0.0)) throw ConfigError("energy must be positive");
    const double kinetic = energy - v;
    if (!(kinetic > 0.0)) throw ConfigError("classically forbidden point: E - V <= 0");
    return std::sqrt(2.0 * mass * kinetic);
}

MomentumSample momentum(const PotentialTable& table, double energy, double z, double mass) {
    const PotentialSample s = table.sample(z);
    const double p = std::sqrt(2.0 * mass * (energy - s.v));
    const double dp = -mass * s.dv / p;
    const double d2p = -(mass * s.d2v + dp * dp) / p;
    return {p, dp, d2p};
}

double badlands(const PotentialTable& table, double energy, double z, double mass) {
    if (table.is_zero()) return 0.0;
    const MomentumSample m = momentum(table, energy, z, mass);
    const double ratio = m.dp / m.p;
    const double schwarzian = m.d2p / m.p - 1.5 * ratio * ratio;
    return schwarzian / (2.0 * m.p * m.p);
}

BadlandsProfile badlands_profile(const PotentialTable& table, double energy) {
    return badlands_profile(table, energy, table.z());
}

BadlandsProfile badlands_profile(const PotentialTable& table, double energy,
                                 const std::vector<double>& z_grid) {
    if (!(energy > 0.0)) throw ConfigError("energy must be positive");
    const double mass = constants().mass_au();
    BadlandsProfile out;
    out.z = z_grid;
    out.q.resize(z_grid.size());
    for (std::size_t i = 0; i < z_grid.size(); ++i) out.q[i] = badlands(table, energy, z_grid[i], mass);
    if (table.is_zero() || z_grid.empty()) return out;

    std::size_t best = 0;
    for (std::size_t i = 1; i < out.q.size(); ++i) {
        if (std::abs(out.q[i]) > std::abs(out.q[best])) best = i;
    }
    out.peak_z = z_grid[best];
    out.peak_q = out.q[best];
    if (best == 0 || best + 1 == z_grid.size()) return out;

    // Golden-section refinement of |Q| in ln z between the neighbouring nodes.
    auto f = [&](double x) { return -std::abs(badlands(table, energy, std::exp(x), mass)); };
    double a = std::log(z_grid[best - 1]);
    double b = std::log(z_grid[best + 1]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-10; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    out.peak_z = std::exp(0.5 * (a + b));
    out.peak_q = badlands(table, energy, out.peak_z, mass);
    return out;
}

double crossing_distance(const PotentialTable& table, double energy) {
    if (!(energy > 0.0)) throw ConfigError("energy must be positive");
    if (table.is_zero()) throw ConfigError("free space has no |V| = E crossing");
    double a = std::log(table.z_lo()) - 40.0;
    double b = std::log(table.z_hi()) + 40.0;
    auto g = [&](double x) { return std::log(-table.value(std::exp(x))) - std::log(energy); };
    if (g(a) < 0.0 || g(b) > 0.0) throw NumericalError("|V| = E crossing outside the extrapolated range");
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        (g(m) > 0.0 ? a : b) = m;
    }
    return std::exp(0.5 * (a + b));
}

namespace {

struct State {
    complex cp;
    complex cm;
    double phase;  // WKB phase accumulated from z_start
};

State operator+(const State& a, const State& b) { return {a.cp + b.cp, a.cm + b.cm, a.phase + b.phase}; }
State operator*(double s, const State& a) { return {s * a.cp, s * a.cm, s * a.phase}; }

class AmplitudeSystem {
public:
    AmplitudeSystem(const PotentialTable& table, double energy, double mass, double phase0)
        : table_(table), energy_(energy), mass_(mass), phase0_(phase0) {}

    // Derivatives with respect to x = ln z.
    [[nodiscard]] State rhs(double x, const State& y) const {
        const double z = std::exp(x);
        const MomentumSample m = momentum(table_, energy_, z, mass_);
        const double coupling = z * m.dp / (2.0 * m.p);
        const complex rot = std::polar(1.0, -2.0 * (phase0_ + y.phase));
        return {coupling * rot * y.cm, coupling * std::conj(rot) * y.cp, z * m.p};
    }

    [[nodiscard]] double max_step(double x) const {
        const double z = std::exp(x);
        const MomentumSample m = momentum(table_, energy_, z, mass_);
        return kPi / (m.p * z);
    }

    // Adiabatic dressing of the incoming wave: c+ = i p'/(4 p^2) e^{-2 i phi} c-.
    [[nodiscard]] complex dressing(double z, double phase) const {
        const MomentumSample m = momentum(table_, energy_, z, mass_);
        return kI * m.dp / (4.0 * m.p * m.p) * std::polar(1.0, -2.0 * (phase0_ + phase));
    }

private:
    const PotentialTable& table_;
    double energy_;
    double mass_;
    double phase0_;
};

// Dormand-Prince 5(4) with FSAL and a standard PI-free controller.
class Integrator {
public:
    Integrator(const AmplitudeSystem& sys, const SolverOptions& opts) : sys_(sys), opts_(opts) {}

    void advance(double& x, State& y, double x_target, std::size_t& steps) {
        if (h_ <= 0.0) h_ = std::min(x_target - x, opts_.max_phase_step * sys_.max_step(x));
        State k1 = sys_.rhs(x, y);
        while (x < x_target) {
            const double h_cap = opts_.max_phase_step * sys_.max_step(x);
            double h = std::min({h_, h_cap, x_target - x});
            if (++steps > opts_.max_steps) throw NumericalError("amplitude integration exceeded step budget");
            const State k2 = sys_.rhs(x + h * (1.0 / 5), y + h * (1.0 / 5) * k1);
            const State k3 = sys_.rhs(x + h * (3.0 / 10), y + h * ((3.0 / 40) * k1 + (9.0 / 40) * k2));
            const State k4 = sys_.rhs(x + h * (4.0 / 5),
                                      y + h * ((44.0 / 45) * k1 + (-56.0 / 15) * k2 + (32.0 / 9) * k3));
            const State k5 = sys_.rhs(
                x + h * (8.0 / 9),
                y + h * ((19372.0 / 6561) * k1 + (-25360.0 / 2187) * k2 + (64448.0 / 6561) * k3 +
                         (-212.0 / 729) * k4));
            const State k6 = sys_.rhs(
                x + h, y + h * ((9017.0 / 3168) * k1 + (-355.0 / 33) * k2 + (46732.0 / 5247) * k3 +
                                (49.0 / 176) * k4 + (-5103.0 / 18656) * k5));
            const State y5 = y + h * ((35.0 / 384) * k1 + (500.0 / 1113) * k3 + (125.0 / 192) * k4 +
                                      (-2187.0 / 6784) * k5 + (11.0 / 84) * k6);
            const State k7 = sys_.rhs(x + h, y5);
            const State err = h * ((71.0 / 57600) * k1 + (-71.0 / 16695) * k3 + (71.0 / 1920) * k4 +
                                   (-17253.0 / 339200) * k5 + (22.0 / 525) * k6 + (-1.0 / 40) * k7);
            // Complex magnitudes keep the error norm invariant under a global phase rotation.
            const double scale_c = opts_.rk_abs_tol + opts_.rk_rel_tol * std::max(std::abs(y.cm), std::abs(y5.cm));
            const double scale_phi = opts_.rk_abs_tol + opts_.rk_rel_tol * std::abs(y5.phase);
            const double e = std::max({std::abs(err.cp) / scale_c, std::abs(err.cm) / scale_c,
                                       std::abs(err.phase) / scale_phi});
            if (e <= 1.0 || h <= 1e-14) {
                x += h;
                y = y5;
                k1 = k7;
                const double grow = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
                h_ = h * grow;
            } else {
                h_ = h * std::clamp(0.9 * std::pow(e, -0.25), 0.1, 0.9);
            }
        }
    }

private:
    const AmplitudeSystem& sys_;
    const SolverOptions& opts_;
    double h_ = 0.0;
};

bool wkb_exact(const PotentialTable& table, double energy, double z, double mass, double tol) {
    const MomentumSample m = momentum(table, energy, z, mass);
    return std::abs(badlands(table, energy, z, mass)) < tol &&
           std::abs(m.dp) / (m.p * m.p) < kMaxAdiabaticity;
}

// Walks from the badlands peak by factor `step` until the WKB criteria hold over two decades.
double find_edge(const PotentialTable& table, double energy, double mass, double tol, double z_peak,
                 double step) {
    double z = z_peak;
    for (int it = 0; it < 4000; ++it) {
        z *= step;
        const double probe = step < 1.0 ? 0.1 : 10.0;
        if (wkb_exact(table, energy, z, mass, tol) && wkb_exact(table, energy, z * probe, mass, tol) &&
            wkb_exact(table, energy, z * probe * probe, mass, tol)) {
            return z;
        }
    }
    throw NumericalError("could not find a WKB-exact integration edge for " + table.label());
}

double phase_integral(const PotentialTable& table, double energy, double mass, double a, double b) {
    // int_a^b p dz in ln z with composite Simpson; only used for the z0 reference.
    if (a == b) return 0.0;
    const double sign = b > a ? 1.0 : -1.0;
    const double la = std::log(std::min(a, b));
    const double lb = std::log(std::max(a, b));
    const std::size_t n = 20000;
    const double h = (lb - la) / n;
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = la + h * static_cast<double>(i);
        const double z = std::exp(x);
        const double f = z * std::sqrt(2.0 * mass * (energy - table.value(z)));
        sum += f * (i == 0 || i == n ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
    }
    return sign * sum * h / 3.0;
}

double tail_phase(const PotentialTable& table, double energy, double mass, double z_end) {
    // int_{z_end}^inf (p - k) dz, written as 2m|V|/(p + k) to avoid cancellation.
    const double k = std::sqrt(2.0 * mass * energy);
    auto f = [&](double z) {
        const double v = table.value(z);
        const double p = std::sqrt(2.0 * mass * (energy - v));
        return -2.0 * mass * v / (p + k);
    };
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate(f, z_end, std::numeric_limits<double>::infinity(), 1e-12);
}

}  // namespace

ReflectionResult solve_reflection(const PotentialTable& table, double energy, const SolverOptions& opts) {
    if (!(energy > 0.0) || !std::isfinite(energy)) throw ConfigError("energy must be positive");
    if (!(opts.edge_tol > 0.0) || !(opts.r_tol > 0.0) || !(opts.z_start_scale > 0.0) ||
        !(opts.z_end_scale > 0.0)) {
        throw ConfigError("solver tolerances and scales must be positive");
    }
    const double mass = constants().mass_au();
    ReflectionResult out;
    out.energy = energy;
    if (table.is_zero()) {
        out.probability = 0.0;
        out.loss = 1.0;
        return out;
    }

    // Locate the badlands on a wide grid that includes the extrapolated tails.
    const auto probe_grid = log_grid(table.z_lo() * 1e-6, table.z_hi() * 1e3, 600);
    const BadlandsProfile peak = badlands_profile(table, energy, probe_grid);
    const double z_start = find_edge(table, energy, mass, opts.edge_tol, peak.peak_z, 1.0 / 1.1) *
                           opts.z_start_scale;
    const double z_edge = find_edge(table, energy, mass, opts.edge_tol, peak.peak_z, 1.1) * opts.z_end_scale;
    const double z_end = 10.0 * z_edge;

    const double phase0 =
        opts.phase_origin ? phase_integral(table, energy, mass, *opts.phase_origin, z_start) : 0.0;
    const AmplitudeSystem sys(table, energy, mass, phase0);

    State y{opts.dressed_start ? sys.dressing(z_start, 0.0) : complex{0.0, 0.0}, complex{1.0, 0.0}, 0.0};
    const double flux0 = std::norm(y.cm) - std::norm(y.cp);
    double x = std::log(z_start);
    std::size_t steps = 0;
    Integrator rk(sys, opts);

    auto undressed_ratio = [&](const State& s, double z) {
        const complex cp = s.cp - sys.dressing(z, s.phase) * s.cm;
        return std::abs(cp / s.cm);
    };

    rk.advance(x, y, std::log(z_edge), steps);
    const double r_mid = undressed_ratio(y, z_edge);
    rk.advance(x, y, std::log(z_end), steps);

    const complex cp_end = y.cp - sys.dressing(z_end, y.phase) * y.cm;
    const double flux = std::norm(y.cm) - std::norm(y.cp);
    const double phase_end = phase0 + y.phase;

    out.c_plus = y.cp;
    out.c_minus = y.cm;
    out.r = cp_end / y.cm * std::polar(1.0, 2.0 * phase_end);
    const double k = std::sqrt(2.0 * mass * energy);
    const double tail = tail_phase(table, energy, mass, z_end);
    out.r_plane = out.r * std::polar(1.0, 2.0 * (tail - k * z_end));
    const double norm_m = std::norm(y.cm);
    out.probability = std::norm(cp_end) / norm_m;
    out.loss = (norm_m - std::norm(cp_end)) / norm_m;

    auto& d = out.diagnostics;
    d.z_start = z_start;
    d.z_end = z_end;
    d.steps = steps;
    d.flux_drift = std::abs(flux - flux0) / std::abs(flux0);
    const double r_abs = std::abs(out.r);
    d.r_change = std::abs(r_abs - r_mid) / std::max(r_abs, 1e-300);
    d.q_start = badlands(table, energy, z_start, mass);
    d.q_end = badlands(table, energy, z_end, mass);

    if (d.flux_drift > opts.flux_tol) {
        std::ostringstream os;
        os << "flux drift " << d.flux_drift << " above tolerance " << opts.flux_tol << " for "
           << table.label();
        throw NumericalError(os.str());
    }
    if (std::abs(r_abs - r_mid) > opts.r_tol * r_abs + 1e-10) {
        std::ostringstream os;
        os << "reflection amplitude not converged over the last decade (relative change " << d.r_change
           << ") for " << table.label();
        throw NumericalError(os.str());
    }
    return out;
}

std::vector<SweepEntry> reflection_sweep(const PotentialTable& table, const std::vector<double>& energies,
                                         const SolverOptions& opts) {
    std::vector<SweepEntry> out(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) {
        out[i].energy = energies[i];
        try {
            out[i].result = solve_reflection(table, energies[i], opts);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

std::vector<double> energies_from_heights(const std::vector<double>& heights_m) {
    std::vector<double> out;
    out.reserve(heights_m.size());
    for (double h : heights_m) {
        if (!(h > 0.0)) throw ConfigError("fall heights must be positive");
        out.push_back(energy_from_height_au(h));
    }
    return out;
}

}  // namespace cpqr
