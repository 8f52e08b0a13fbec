#pragma once

// Zero-temperature Casimir-Polder potential of an atom above a planar mirror.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cpqr/mirror.hpp"
#include "cpqr/optical.hpp"
#include "cpqr/spline.hpp"

namespace cpqr {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    /// Accepted a-posteriori error relative to |V| before reporting failure.
    double fail_tol = 1e-5;
};

struct PotentialPoint {
    double value = 0.0;  // Eh
    double error = 0.0;  // quadrature estimate, Eh
};

/// V(z) in Eh at distance z (a0), by double quadrature over imaginary frequency
/// and evanescent wave vector. Throws NumericalError on non-convergence.
PotentialPoint cp_potential_point(const MirrorSpec& mirror, double z,
                                  const Polarizability& alpha = Polarizability::hydrogen(),
                                  const QuadratureOptions& opts = {});

/// C4* = 3 hbar c alpha(0) / 8 pi, the retarded coefficient of a perfect conductor.
double c4_star(const Polarizability& alpha = Polarizability::hydrogen());

/// V*(z) = -C4* / z^4.
double retarded_reference(double z, const Polarizability& alpha = Polarizability::hydrogen());

/// Van der Waals coefficient by the single-frequency-integral route,
/// C3 = (1/4 pi) int alpha(i xi) (eps - 1)/(eps + 1) d xi.
double c3_closed_form(const MirrorSpec& mirror,
                      const Polarizability& alpha = Polarizability::hydrogen());

struct Asymptotics {
    std::optional<double> c3;  // Eh a0^3
    std::optional<double> c4;  // Eh a0^4
    std::optional<double> c5;  // Eh a0^5
    double small_exponent = 0.0;  // fitted -dln|V|/dln z over the lowest decade
    double large_exponent = 0.0;  // same over the highest decade
};

struct TableOptions {
    double z_lo = 0.1;
    double z_hi = 1e7;
    std::size_t n_points = 400;
    Polarizability alpha = Polarizability::hydrogen();
    QuadratureOptions quadrature;

    /// Default grid for a mirror. Sheets start at 0.01 a0: their z^-3 regime sets in
    /// only well below 1 a0.
    static TableOptions for_mirror(const MirrorSpec& mirror);
};

/// Value and z-derivatives of an interpolated potential.
struct PotentialSample {
    double v = 0.0;
    double dv = 0.0;
    double d2v = 0.0;
};

/// Log-spaced tabulation of V(z) < 0 with a cubic spline of ln|V| against ln z.
/// Outside the grid the spline continues as the end power laws.
class PotentialTable {
public:
    /// Tabulates a mirror's CP potential and extracts its asymptotic coefficients.
    static PotentialTable from_mirror(const MirrorSpec& mirror, const TableOptions& opts = {});
    /// Tabulates an arbitrary attractive potential (all values must be negative).
    static PotentialTable from_function(std::string label, const std::function<double(double)>& v,
                                        double z_lo, double z_hi, std::size_t n_points);
    /// Tabulates raw values. Used by the loaders and by tests.
    static PotentialTable from_values(std::string label, std::vector<double> z, std::vector<double> v);
    /// Free space, V = 0 everywhere.
    static PotentialTable zero(double z_lo = 0.1, double z_hi = 1e7, std::size_t n_points = 16);

    [[nodiscard]] double value(double z) const;
    [[nodiscard]] PotentialSample sample(double z) const;

    [[nodiscard]] const std::vector<double>& z() const { return z_; }
    [[nodiscard]] const std::vector<double>& v() const { return v_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] const std::optional<MirrorSpec>& mirror() const { return mirror_; }
    [[nodiscard]] const Asymptotics& asymptotics() const { return asymptotics_; }
    [[nodiscard]] bool is_zero() const { return zero_; }
    [[nodiscard]] double z_lo() const { return z_.front(); }
    [[nodiscard]] double z_hi() const { return z_.back(); }
    /// Largest quadrature error estimate relative to |V| over the grid.
    [[nodiscard]] double max_quadrature_error() const { return max_quad_error_; }

private:
    PotentialTable() = default;
    void finish(bool strict);

    std::string label_;
    std::optional<MirrorSpec> mirror_;
    std::vector<double> z_, v_;
    CubicSpline log_spline_;
    Asymptotics asymptotics_;
    bool zero_ = false;
    double max_quad_error_ = 0.0;
};

PotentialTable build_potential_table(const MirrorSpec& mirror, double z_lo, double z_hi,
                                     std::size_t n_points,
                                     const Polarizability& alpha = Polarizability::hydrogen());

/// Power-law fits over the extreme decades of the table.
/// strict: throw NumericalError unless the small end scales as z^-3 and the large
/// end as z^-4 or z^-5 (within 0.05). Otherwise only matching coefficients are set.
Asymptotics extract_asymptotics(const PotentialTable& table, bool strict = true);

/// -d ln|V| / d ln z from the interpolant.
double local_exponent(const PotentialTable& table, double z);

/// Log-spaced grid of n points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace cpqr
