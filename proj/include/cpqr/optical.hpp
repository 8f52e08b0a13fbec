#pragma once

// Electromagnetic response on the imaginary frequency axis (omega = i xi).
//
// All response functions here are real, smooth and decreasing in xi. Frequencies
// and oscillator parameters are in Hartree atomic units.

#include <filesystem>
#include <string>
#include <vector>

namespace cpqr {

/// One Lorentz term: strength / (resonance^2 + xi^2 + damping * xi).
struct Oscillator {
    double strength = 0.0;      // plasma-strength wp^2 (Eh^2), or a0^3 Eh^2 for atoms
    double resonance_sq = 0.0;  // w0^2 (Eh^2)
    double damping = 0.0;       // gamma (Eh)
};

class DielectricModel {
public:
    DielectricModel() = default;
    DielectricModel(std::string name, std::vector<Oscillator> oscillators);

    /// eps(i xi) = 1 + sum wp^2 / (w0^2 + xi^2 + gamma xi).
    [[nodiscard]] double epsilon(double xi) const;
    [[nodiscard]] double static_epsilon() const { return epsilon(0.0); }
    /// c / w0 of the oscillator contributing most to eps(0), in a0. Zero for vacuum.
    [[nodiscard]] double characteristic_wavelength() const;
    [[nodiscard]] bool is_vacuum() const { return oscillators_.empty(); }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<Oscillator>& oscillators() const { return oscillators_; }

private:
    std::string name_ = "vacuum";
    std::vector<Oscillator> oscillators_;
};

class Polarizability {
public:
    Polarizability() = default;
    explicit Polarizability(std::vector<Oscillator> oscillators);

    /// Single-oscillator ground-state hydrogen: alpha(0) = 4.5 a0^3, w_a = 0.4444 Eh.
    static Polarizability hydrogen();
    static Polarizability single(double alpha0, double resonance);

    /// alpha(i xi) in a0^3.
    [[nodiscard]] double operator()(double xi) const;
    [[nodiscard]] double static_value() const { return (*this)(0.0); }
    [[nodiscard]] const std::vector<Oscillator>& oscillators() const { return oscillators_; }

private:
    std::vector<Oscillator> oscillators_;
};

/// 2D sheet with constant conductivity; eta = sigma / (eps0 c).
struct SheetModel {
    double eta = 0.0;

    /// Universal conductivity e^2 / 4 hbar of undoped graphene, eta = pi alpha.
    static SheetModel graphene();
};

struct PorousSpec {
    DielectricModel host;
    double porosity = 0.0;
};

/// Reflection amplitudes of a planar mirror for one evanescent wave.
struct Reflection {
    double tm = 0.0;
    double te = 0.0;
};

/// Fresnel amplitudes of a bulk with permittivity eps; kappa = c k_z / xi >= 1.
Reflection fresnel(double eps, double kappa);

/// Slab of thickness d (a0) on vacuum; eps is eps(i xi).
Reflection slab_reflection(double eps, double thickness, double xi, double kappa);
Reflection slab_reflection(const DielectricModel& model, double thickness, double xi, double kappa);

Reflection sheet_reflection(const SheetModel& sheet, double kappa);

/// Bruggeman effective permittivity of host eps_m with vacuum volume fraction f.
double bruggeman_mix(double eps_host, double porosity);
double bruggeman_mix(const PorousSpec& spec, double xi);

// Material files ---------------------------------------------------------------

enum class MaterialKind { Dielectric, PerfectConductor, Sheet };

struct MaterialRecord {
    std::string name;
    MaterialKind kind = MaterialKind::Dielectric;
    DielectricModel model;  // Dielectric only
    SheetModel sheet;       // Sheet only
    std::filesystem::path source;
};

/// Parses any material file (dielectric, perfect-conductor sentinel, sheet).
MaterialRecord read_material_file(const std::filesystem::path& path);

/// Parses a dielectric material file; rejects sentinel kinds.
DielectricModel load_material_file(const std::filesystem::path& path);

/// Atom polarizability file: same syntax, `osc = <strength a0^3 Eh^2>, <w0^2 Eh^2>`.
Polarizability load_polarizability_file(const std::filesystem::path& path);

/// Directory of `<name>.mat` files.
class MaterialCatalog {
public:
    explicit MaterialCatalog(std::filesystem::path dir);

    /// Compiled-in data directory, overridable with CPQR_DATA_DIR.
    static std::filesystem::path default_data_dir();

    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] MaterialRecord get(const std::string& name) const;
    [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace cpqr
