#pragma once

// Quantum reflection on a tabulated attractive potential.
//
// The wavefunction is expanded on WKB waves,
//   psi = [c+ e^{i phi} + c- e^{-i phi}] / sqrt(p),   phi = int_{z0}^{z} p dz' / hbar,
// and the amplitudes obey c+-' = e^{-+2 i phi} (p'/2p) c-+. Annihilation on contact
// means no outgoing wave at the surface; r = c+/c- far from it.

#include <complex>
#include <optional>
#include <vector>

#include "cpqr/potential.hpp"

namespace cpqr {

using complex = std::complex<double>;

/// Semiclassical momentum sqrt(2 m (E - V)) in atomic units.
double local_momentum(double energy, double v, double mass);

/// p, p', p'' at z for energy E.
struct MomentumSample {
    double p;
    double dp;
    double d2p;
};
MomentumSample momentum(const PotentialTable& table, double energy, double z, double mass);

/// Badlands function Q = hbar^2 S[phi] / 2p^2 with S[phi] = p''/p - 3/2 (p'/p)^2.
double badlands(const PotentialTable& table, double energy, double z, double mass);

struct BadlandsProfile {
    std::vector<double> z;  // a0
    std::vector<double> q;
    double peak_z = 0.0;
    double peak_q = 0.0;  // signed value at the peak of |Q|
};

/// Q sampled on the table grid; the peak is refined between grid nodes.
BadlandsProfile badlands_profile(const PotentialTable& table, double energy);
BadlandsProfile badlands_profile(const PotentialTable& table, double energy,
                                 const std::vector<double>& z_grid);

/// Distance at which |V(z)| = E (bisection on the interpolant, extrapolated ends).
double crossing_distance(const PotentialTable& table, double energy);

struct SolverOptions {
    double edge_tol = 1e-8;        // |Q| bound at both integration ends
    double r_tol = 1e-4;           // relative change of |r| over the last decade
    double rk_rel_tol = 1e-11;
    double rk_abs_tol = 1e-14;
    double max_phase_step = 0.25;  // step <= this fraction of the local period pi hbar / p
    double flux_tol = 1e-6;
    double z_start_scale = 1.0;    // multiply the automatically chosen z_start
    double z_end_scale = 1.0;      // multiply the automatically chosen z_end
    /// Lower limit z0 of the WKB phase; defaults to z_start.
    std::optional<double> phase_origin;
    /// Start from the dressed incoming wave (c+ = i p'/4p^2 e^{-2 i phi}) instead of c+ = 0.
    bool dressed_start = true;
    std::size_t max_steps = 20'000'000;
};

struct SolverDiagnostics {
    double z_start = 0.0;
    double z_end = 0.0;
    double flux_drift = 0.0;  // relative change of |c-|^2 - |c+|^2
    std::size_t steps = 0;
    double r_change = 0.0;    // relative change of |r| over the last decade
    double q_start = 0.0;
    double q_end = 0.0;
};

struct ReflectionResult {
    double energy = 0.0;       // Eh
    complex r{0.0, 0.0};       // c+/c- at z_end, WKB phase referenced to z0 = z_end
    complex r_plane{0.0, 0.0}; // amplitude of e^{ikz} against e^{-ikz} far from the mirror
    double probability = 0.0;
    double loss = 0.0;
    complex c_plus{0.0, 0.0};  // raw amplitudes at z_end (phase origin as configured)
    complex c_minus{1.0, 0.0};
    SolverDiagnostics diagnostics;
};

/// Integrates the amplitude equations outward from z_start with the absorbing
/// condition. Throws ConfigError for E <= 0 and NumericalError for non-convergence
/// or flux drift above tolerance.
ReflectionResult solve_reflection(const PotentialTable& table, double energy,
                                  const SolverOptions& opts = {});

struct SweepEntry {
    double energy = 0.0;
    std::optional<ReflectionResult> result;
    std::string error;  // set when result is empty
};

/// Independent solves in input order; failures are reported per point.
std::vector<SweepEntry> reflection_sweep(const PotentialTable& table,
                                         const std::vector<double>& energies,
                                         const SolverOptions& opts = {});

/// Energies mg h for each height (m).
std::vector<double> energies_from_heights(const std::vector<double>& heights_m);

}  // namespace cpqr
