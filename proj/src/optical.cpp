#include "cpqr/optical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cpqr/error.hpp"
#include "cpqr/units.hpp"

#ifndef CPQR_DATA_DIR
#define CPQR_DATA_DIR "data"
#endif

namespace cpqr {

DielectricModel::DielectricModel(std::string name, std::vector<Oscillator> oscillators)
    : name_(std::move(name)), oscillators_(std::move(oscillators)) {
    for (const auto& osc : oscillators_) {
        if (!(osc.strength >= 0.0) || !(osc.resonance_sq > 0.0) || !(osc.damping >= 0.0)) {
            throw ConfigError("dielectric model '" + name_ +
                              "': oscillators need strength >= 0, w0^2 > 0, gamma >= 0");
        }
    }
}

double DielectricModel::epsilon(double xi) const {
    double eps = 1.0;
    for (const auto& osc : oscillators_) {
        eps += osc.strength / (osc.resonance_sq + xi * xi + osc.damping * xi);
    }
    return eps;
}

double DielectricModel::characteristic_wavelength() const {
    const Oscillator* dominant = nullptr;
    double best = -1.0;
    for (const auto& osc : oscillators_) {
        const double weight = osc.strength / osc.resonance_sq;
        if (weight > best) {
            best = weight;
            dominant = &osc;
        }
    }
    if (dominant == nullptr) return 0.0;
    return constants().speed_of_light / std::sqrt(dominant->resonance_sq);
}

Polarizability::Polarizability(std::vector<Oscillator> oscillators)
    : oscillators_(std::move(oscillators)) {
    if (oscillators_.empty()) throw ConfigError("polarizability needs at least one oscillator");
    for (const auto& osc : oscillators_) {
        if (!(osc.strength > 0.0) || !(osc.resonance_sq > 0.0) || !(osc.damping >= 0.0)) {
            throw ConfigError("polarizability oscillators need strength > 0, w0^2 > 0");
        }
    }
}

Polarizability Polarizability::single(double alpha0, double resonance) {
    const double w2 = resonance * resonance;
    return Polarizability({Oscillator{alpha0 * w2, w2, 0.0}});
}

Polarizability Polarizability::hydrogen() { return single(4.5, 0.4444); }

double Polarizability::operator()(double xi) const {
    double alpha = 0.0;
    for (const auto& osc : oscillators_) {
        alpha += osc.strength / (osc.resonance_sq + xi * xi + osc.damping * xi);
    }
    return alpha;
}

SheetModel SheetModel::graphene() { return {std::numbers::pi * constants().fine_structure}; }

Reflection fresnel(double eps, double kappa) {
    if (std::isinf(eps)) return {1.0, -1.0};
    // q = sqrt(kappa^2 - 1 + eps) / kappa, written to stay finite for grazing kappa.
    const double x = (eps - 1.0) / (kappa * kappa);
    const double q = std::sqrt(1.0 + x);
    return {(eps - q) / (eps + q), -x / ((1.0 + q) * (1.0 + q))};
}

Reflection slab_reflection(double eps, double thickness, double xi, double kappa) {
    const Reflection bulk = fresnel(eps, kappa);
    const double s = std::sqrt(kappa * kappa - 1.0 + eps);
    const double delta = xi * thickness / constants().speed_of_light * s;
    const double attenuation = std::exp(-2.0 * delta);
    const double transmitted = -std::expm1(-2.0 * delta);
    auto layer = [&](double r) { return r * transmitted / (1.0 - r * r * attenuation); };
    return {layer(bulk.tm), layer(bulk.te)};
}

Reflection slab_reflection(const DielectricModel& model, double thickness, double xi,
                           double kappa) {
    if (!(thickness > 0.0)) throw ConfigError("slab thickness must be positive");
    return slab_reflection(model.epsilon(xi), thickness, xi, kappa);
}

Reflection sheet_reflection(const SheetModel& sheet, double kappa) {
    const double tm = 0.5 * sheet.eta * kappa;
    const double te = 0.5 * sheet.eta / kappa;
    return {tm / (1.0 + tm), -te / (1.0 + te)};
}

double bruggeman_mix(double eps_host, double porosity) {
    if (!(porosity >= 0.0 && porosity <= 1.0)) {
        throw ConfigError("porosity must lie in [0, 1]");
    }
    // (1-f)(em - e)/(em + 2e) + f(1 - e)/(1 + 2e) = 0  <=>  2e^2 - b e - em = 0
    const double f = porosity;
    const double b = (1.0 - f) * (2.0 * eps_host - 1.0) + f * (2.0 - eps_host);
    const double root = (b + std::sqrt(b * b + 8.0 * eps_host)) / 4.0;
    const double lo = std::min(1.0, eps_host);
    const double hi = std::max(1.0, eps_host);
    if (!(root >= lo * (1.0 - 1e-12) && root <= hi * (1.0 + 1e-12))) {
        throw NumericalError("Bruggeman mixing produced no physical root");
    }
    return std::clamp(root, lo, hi);
}

double bruggeman_mix(const PorousSpec& spec, double xi) {
    return bruggeman_mix(spec.host.epsilon(xi), spec.porosity);
}

// Material files ---------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<double> parse_numbers(const std::string& value, const std::string& file, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string token = trim(item);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw ParseError(file, line, "not a number: '" + token + "'");
        }
        out.push_back(v);
    }
    return out;
}

struct RawFile {
    std::string name;
    std::string kind = "dielectric";
    std::vector<Oscillator> oscillators;
    std::vector<int> oscillator_lines;
    double eta = -1.0;
    int eta_line = 0;
};

RawFile parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open material file " + path.string());
    const std::string file = path.string();
    RawFile raw;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        const std::string stripped = trim(text);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ParseError(file, line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "name") {
            raw.name = value;
        } else if (key == "kind") {
            if (value != "dielectric" && value != "perfect_conductor" && value != "sheet") {
                throw ParseError(file, line, "unknown kind '" + value + "'");
            }
            raw.kind = value;
        } else if (key == "osc") {
            const auto nums = parse_numbers(value, file, line);
            if (nums.size() < 2 || nums.size() > 3) {
                throw ParseError(file, line, "osc takes 'wp^2, w0^2[, gamma]'");
            }
            raw.oscillators.push_back({nums[0], nums[1], nums.size() == 3 ? nums[2] : 0.0});
            raw.oscillator_lines.push_back(line);
        } else if (key == "eta") {
            const auto nums = parse_numbers(value, file, line);
            if (nums.size() != 1) throw ParseError(file, line, "eta takes one number");
            raw.eta = nums[0];
            raw.eta_line = line;
        } else {
            throw ParseError(file, line, "unknown key '" + key + "'");
        }
    }
    if (raw.name.empty()) throw ParseError(file, line, "missing 'name'");
    for (std::size_t i = 0; i < raw.oscillators.size(); ++i) {
        const auto& osc = raw.oscillators[i];
        if (osc.strength < 0.0) {
            throw ParseError(file, raw.oscillator_lines[i], "negative oscillator strength");
        }
        if (!(osc.resonance_sq > 0.0)) {
            throw ParseError(file, raw.oscillator_lines[i], "resonance w0^2 must be positive");
        }
        if (osc.damping < 0.0) throw ParseError(file, raw.oscillator_lines[i], "negative damping");
    }
    if (raw.kind == "sheet" && raw.eta < 0.0) {
        throw ParseError(file, raw.eta_line > 0 ? raw.eta_line : line,
                         "sheet needs a non-negative 'eta'");
    }
    return raw;
}

}  // namespace

MaterialRecord read_material_file(const std::filesystem::path& path) {
    RawFile raw = parse_file(path);
    MaterialRecord rec;
    rec.name = raw.name;
    rec.source = path;
    if (raw.kind == "perfect_conductor") {
        rec.kind = MaterialKind::PerfectConductor;
    } else if (raw.kind == "sheet") {
        rec.kind = MaterialKind::Sheet;
        rec.sheet = SheetModel{raw.eta};
    } else {
        rec.kind = MaterialKind::Dielectric;
        rec.model = DielectricModel(raw.name, std::move(raw.oscillators));
    }
    return rec;
}

DielectricModel load_material_file(const std::filesystem::path& path) {
    MaterialRecord rec = read_material_file(path);
    if (rec.kind != MaterialKind::Dielectric) {
        throw ConfigError(path.string() + ": '" + rec.name + "' is not a dielectric");
    }
    return rec.model;
}

Polarizability load_polarizability_file(const std::filesystem::path& path) {
    RawFile raw = parse_file(path);
    return Polarizability(std::move(raw.oscillators));
}

MaterialCatalog::MaterialCatalog(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::is_directory(dir_)) {
        throw ConfigError("material directory not found: " + dir_.string());
    }
}

std::filesystem::path MaterialCatalog::default_data_dir() {
    if (const char* env = std::getenv("CPQR_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return CPQR_DATA_DIR;
}

std::vector<std::string> MaterialCatalog::names() const {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() == ".mat") out.push_back(entry.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

MaterialRecord MaterialCatalog::get(const std::string& name) const {
    const auto path = dir_ / (name + ".mat");
    if (!std::filesystem::exists(path)) {
        throw ConfigError("unknown material '" + name + "' (no " + path.string() + ")");
    }
    return read_material_file(path);
}

}  // namespace cpqr
