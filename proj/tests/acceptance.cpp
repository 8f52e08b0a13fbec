// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cpqr/gqs.hpp"
#include "cpqr/reproduce.hpp"
#include "cpqr/units.hpp"
#include "oracles/numerov.hpp"
#include "support.hpp"

using namespace cpqr;

namespace {

// Pinned tolerances.
constexpr double kAnchorTol = 0.01;
constexpr double kBulkCoeffTol = 0.25;
constexpr double kOracleTol = 1e-4;
constexpr double kFluxTol = 1e-6;
constexpr double kPhaseOriginTol = 1e-10;
constexpr double kBoundaryTol = 1e-4;
constexpr double kThresholdTol = 0.05;
constexpr double kBadlandsSlopeTol = 0.01;
constexpr double kCrossingFactor = 2.0;

struct Expect {
    const char* key;
    double value;
    double tol;
    bool relative;
};

// Published reflection probabilities (E = mg x 30 cm) and lifetimes.
const std::vector<Expect> kReflection{
    {"perfect_conductor", 0.05, 0.01, false}, {"silicon", 0.09, 0.02, false}, {"silica", 0.18, 0.03, false},
    {"silica_slab_5nm", 0.27, 0.04, false},   {"graphene", 0.44, 0.10, false},
};
const std::vector<Expect> kLifetime{
    {"perfect_conductor", 0.11, 0.20, true}, {"silicon", 0.14, 0.25, true},     {"silica", 0.22, 0.25, true},
    {"silica_slab_5nm", 0.33, 0.30, true},   {"graphene", 0.55, 0.50, true},    {"diamond_95", 0.89, 0.50, true},
    {"silicon_95", 0.94, 0.50, true},        {"silica_98", 4.6, 0.40, true},
};
const std::vector<std::string> kTable2{"perfect_conductor", "silicon",    "silica",     "silica_slab_5nm",
                                       "graphene",          "diamond_95", "silicon_95", "silica_98"};

bool within(double v, const Expect& e) {
    return std::abs(v - e.value) <= (e.relative ? e.tol * e.value : e.tol) * (1.0 + 1e-12);
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

const double kE30 = energy_from_height_au(0.30);
double g_max_flux = 0.0;
std::size_t g_solves = 0;

ReflectionResult solve(const PotentialTable& t, double e, const SolverOptions& opts = {}) {
    ReflectionResult r = solve_reflection(t, e, opts);
    g_max_flux = std::max(g_max_flux, r.diagnostics.flux_drift);
    ++g_solves;
    return r;
}

int g_failures = 0;

void report(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& check) {
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = check();
    } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
    }
    if (!ok) ++g_failures;
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    using testing::table;

    report(1, "perfect-conductor anchors", [] {
        const auto& a = table("perfect_conductor").asymptotics();
        const double c3 = a.c3.value_or(NAN), c4 = a.c4.value_or(NAN);
        const bool ok = std::abs(c3 / 0.25 - 1.0) <= kAnchorTol && std::abs(c4 / 73.6 - 1.0) <= kAnchorTol;
        return std::pair{ok, "C3 = " + fmt(c3) + " (0.25), C4 = " + fmt(c4) + " (73.6), tol 1%"};
    });

    report(2, "bulk silicon and silica coefficients", [] {
        bool ok = true;
        std::string d;
        for (auto [key, c3p, c4p] : {std::tuple{"silicon", 0.10, 50.3}, std::tuple{"silica", 0.05, 28.1}}) {
            const auto& a = table(key).asymptotics();
            const double c3 = a.c3.value_or(NAN), c4 = a.c4.value_or(NAN);
            ok = ok && std::abs(c3 / c3p - 1.0) <= kBulkCoeffTol && std::abs(c4 / c4p - 1.0) <= kBulkCoeffTol;
            d += std::string(key) + " C3 = " + fmt(c3) + " (" + fmt(c3p) + "), C4 = " + fmt(c4) + " (" + fmt(c4p) + "); ";
        }
        return std::pair{ok, d + "tol 25%"};
    });

    report(3, "reflection probabilities at mg x 30 cm", [] {
        bool ok = true;
        std::string d;
        for (const auto& e : kReflection) {
            const double p = solve(table(e.key), kE30).probability;
            ok = ok && within(p, e);
            d += std::string(e.key) + " " + fmt(p, 3) + " (" + fmt(e.value) + "±" + fmt(e.tol) + ") ";
        }
        return std::pair{ok, d + "[graphene: constant-conductivity sheet]"};
    });

    std::vector<double> lifetimes;
    report(4, "gravitational-state lifetimes", [&] {
        bool ok = true;
        std::string d;
        for (const auto& e : kLifetime) {
            const double tau = mirror_lifetime(table(e.key)).tau_s;
            lifetimes.push_back(tau);
            ok = ok && within(tau, e);
            d += std::string(e.key) + " " + fmt(tau, 3) + " s (" + fmt(e.value) + "±" + fmt(e.tol * 100) + "%) ";
        }
        return std::pair{ok, d};
    });

    report(5, "ordering of potentials, reflection and lifetimes", [&] {
        const auto& pc = table("perfect_conductor");
        const auto& si = table("silicon");
        const auto& sio2 = table("silica");
        int v_bad = 0;
        for (double z : pc.z()) {
            if (std::abs(pc.value(z)) < std::abs(si.value(z)) || std::abs(si.value(z)) < std::abs(sio2.value(z))) ++v_bad;
        }
        const auto hs = log_grid(0.01, 1.0, 21);
        int r_bad = 0;
        for (double h : hs) {
            const double e = energy_from_height_au(h);
            const double a = solve(pc, e).probability, b = solve(si, e).probability, c = solve(sio2, e).probability;
            if (!(a < b && b < c)) ++r_bad;
        }
        bool tau_sorted = lifetimes.size() == kLifetime.size();
        for (std::size_t i = 1; tau_sorted && i < lifetimes.size(); ++i) tau_sorted = lifetimes[i] > lifetimes[i - 1];
        return std::pair{v_bad == 0 && r_bad == 0 && tau_sorted,
                         "|V| violations " + std::to_string(v_bad) + "/" + std::to_string(pc.z().size()) +
                             ", |r|^2 violations " + std::to_string(r_bad) + "/" + std::to_string(hs.size()) +
                             " heights in [1, 100] cm, lifetime column " + (tau_sorted ? "ordered" : "NOT ordered")};
    });

    report(6, "amplitude equations vs Numerov oracle", [] {
        const auto vdw = testing::power_law(0.25, 3);
        const auto retarded = testing::power_law(73.6, 4);
        std::vector<std::pair<std::string, const PotentialTable*>> cases{{"-C3/z^3", &vdw}, {"-C4/z^4", &retarded}};
        for (const auto& k : kTable2) cases.emplace_back(k, &table(k));
        double worst = 0.0;
        std::string worst_name;
        for (const auto& [name, t] : cases) {
            const double diff = std::abs(std::abs(solve(*t, kE30).r) - oracle::numerov_reflection(*t, kE30).abs_r);
            if (diff > worst) {
                worst = diff;
                worst_name = name;
            }
        }
        return std::pair{worst < kOracleTol, "max | |r| - |r|_Numerov | = " + fmt(worst, 3) + " (" + worst_name +
                                                 ") over " + std::to_string(cases.size()) + " potentials, tol 1e-4"};
    });

    report(7, "flux conservation, z0 invariance, boundary robustness", [] {
        double phase_dev = 0.0, bound_dev = 0.0;
        for (const auto& k : kTable2) {
            const auto& t = table(k);
            const auto base = solve(t, kE30);
            SolverOptions shifted;
            shifted.phase_origin = 5.0 * base.diagnostics.z_start;
            const auto s = solve(t, kE30, shifted);
            phase_dev = std::max(phase_dev, std::abs(std::abs(s.r) - std::abs(base.r)));
            phase_dev = std::max(phase_dev, std::abs(std::abs(s.c_plus / s.c_minus) - std::abs(base.c_plus / base.c_minus)));
            SolverOptions lo;
            lo.z_start_scale = 0.5;
            SolverOptions hi;
            hi.z_end_scale = 2.0;
            bound_dev = std::max(bound_dev, std::abs(solve(t, kE30, lo).probability - base.probability));
            bound_dev = std::max(bound_dev, std::abs(solve(t, kE30, hi).probability - base.probability));
        }
        const bool ok = g_max_flux < kFluxTol && phase_dev < kPhaseOriginTol && bound_dev < kBoundaryTol;
        return std::pair{ok, "max flux drift " + fmt(g_max_flux, 2) + " over " + std::to_string(g_solves) +
                                 " solves, z0 shift " + fmt(phase_dev, 2) + ", edge change " + fmt(bound_dev, 2)};
    });

    report(8, "threshold law 1 - |r|^2 ~ sqrt(E)", [] {
        const auto& t = table("perfect_conductor");
        const auto hs = log_grid(1e-11, 1e-9, 9);  // the two lowest sampled decades
        std::vector<double> slope;
        for (double h : hs) {
            const auto r = solve(t, energy_from_height_au(h));
            slope.push_back(r.loss / std::sqrt(r.energy));
        }
        const auto [mn, mx] = std::minmax_element(slope.begin(), slope.end());
        const double spread = *mx / *mn - 1.0;
        const double predicted = 4.0 * std::abs(scattering_length(t).a.imag()) * std::sqrt(2.0 * constants().mass_au());
        const double mismatch = std::abs(slope.front() / predicted - 1.0);
        return std::pair{spread < kThresholdTol && mismatch < kThresholdTol,
                         "spread of (1-|r|^2)/sqrt(E) " + fmt(spread, 2) + ", vs 4|Im a|sqrt(2m) " + fmt(mismatch, 2) +
                             ", h in [1e-11, 1e-9] m, tol 5%"};
    });

    report(9, "badlands structure", [] {
        const double m = constants().mass_au();
        const auto free = badlands_profile(PotentialTable::zero(), kE30);
        const bool zero_ok = std::all_of(free.q.begin(), free.q.end(), [](double q) { return q == 0.0; });
        const auto vdw = testing::power_law(0.25, 3);
        double slope_dev = 0.0;
        for (double z : {1e-3, 1e-2, 0.1, 1.0}) {
            slope_dev = std::max(slope_dev, std::abs(badlands(vdw, kE30, z, m) / (3.0 * z / (32.0 * m * 0.25)) - 1.0));
        }
        const auto& pc = table("perfect_conductor");
        double worst_cross = 1.0;
        std::vector<BadlandsProfile> by_h;
        for (double h : {0.10, 0.30, 0.50}) {
            const double e = energy_from_height_au(h);
            by_h.push_back(badlands_profile(pc, e));
            const double ratio = by_h.back().peak_z / crossing_distance(pc, e);
            worst_cross = std::max({worst_cross, ratio, 1.0 / ratio});
        }
        const bool height_down = std::abs(by_h[0].peak_q) > std::abs(by_h[1].peak_q) &&
                                 std::abs(by_h[1].peak_q) > std::abs(by_h[2].peak_q);
        const double e10 = energy_from_height_au(0.10);
        const double z_pc = by_h[0].peak_z;
        const double z_si = badlands_profile(table("silicon"), e10).peak_z;
        const double z_sio2 = badlands_profile(table("silica"), e10).peak_z;
        const bool inward = z_pc > z_si && z_si > z_sio2;
        const bool ok = zero_ok && slope_dev < kBadlandsSlopeTol && worst_cross < kCrossingFactor && height_down && inward;
        return std::pair{ok, std::string("Q=0 for V=0 ") + (zero_ok ? "yes" : "no") + ", C3 slope dev " +
                                 fmt(slope_dev, 2) + ", peak/crossing " + fmt(worst_cross, 3) + ", |Q*| 10/30/50 cm " +
                                 fmt(std::abs(by_h[0].peak_q), 3) + "/" + fmt(std::abs(by_h[1].peak_q), 3) + "/" +
                                 fmt(std::abs(by_h[2].peak_q), 3) + ", z* PC/Si/silica " + fmt(au_to_nm(z_pc), 3) + "/" +
                                 fmt(au_to_nm(z_si), 3) + "/" + fmt(au_to_nm(z_sio2), 3) + " nm"};
    });

    std::printf("%d of 9 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
