#pragma once

// Low-energy scattering length on an absorbing mirror and the lifetime of
// gravitational quantum states it bounds.
//
// Far from the mirror psi ~ e^{-ikz} + r e^{ikz} with r = -e^{-2ika}; at threshold
// 1 - |r|^2 = 4k|Im a| + O(k^2).

#include <string>

#include "cpqr/reflection.hpp"

namespace cpqr {

struct ScatteringOptions {
    double height1_m = 1e-9;  // extraction fall heights; 4k|Im a| stays below 1e-3
    double height2_m = 4e-9;
    double linear_tol = 0.05;  // allowed relative disagreement of the two |Im a| estimates
    int max_retries = 3;       // each retry lowers both energies tenfold
    SolverOptions solver;
};

struct ScatteringLength {
    complex a{0.0, 0.0};  // a0
    double energy1 = 0.0; // Eh
    double energy2 = 0.0;
    double loss1 = 0.0;   // 1 - |r|^2 at energy1
    double loss2 = 0.0;
    /// Largest relative mismatch between 1 - |r|^2 and 4k|Im a| at the two energies.
    double linearity = 0.0;
    /// False for free space: no surface, nothing absorbed, Im a = 0.
    bool absorbing = true;
};

/// Richardson-extrapolates a(k) to k -> 0 from two solves. Throws NumericalError
/// if the two |Im a| estimates still disagree after the retries.
ScatteringLength scattering_length(const PotentialTable& table, const ScatteringOptions& opts = {});

/// Estimate of a from a single reflection result.
complex scattering_length_estimate(const ReflectionResult& result);

struct LifetimeResult {
    double tau_s = 0.0;
    std::string mirror;
    double porosity = 0.0;
    complex a{0.0, 0.0};
};

/// tau = hbar / (2 m g |Im a|). Throws ConfigError unless Im a < 0.
LifetimeResult gqs_lifetime(const ScatteringLength& a, const std::string& mirror = {},
                            double porosity = 0.0);

/// As gqs_lifetime, but returns an infinite lifetime for a non-absorbing result.
LifetimeResult gqs_lifetime_or_infinite(const ScatteringLength& a, const std::string& mirror = {},
                                        double porosity = 0.0);

/// Convenience: scattering length and lifetime for a tabulated mirror.
LifetimeResult mirror_lifetime(const PotentialTable& table, const ScatteringOptions& opts = {});

}  // namespace cpqr
