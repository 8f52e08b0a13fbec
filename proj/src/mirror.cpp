#include "cpqr/mirror.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cpqr/error.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_g(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

MirrorSpec::MirrorSpec(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const PerfectConductor&) {},
                   [](const BulkMirror& b) {
                       if (b.model.is_vacuum()) throw ConfigError("vacuum is not a mirror");
                   },
                   [](const SlabMirror& s) {
                       if (s.model.is_vacuum()) throw ConfigError("vacuum is not a mirror");
                       if (!(s.thickness > 0.0) || !std::isfinite(s.thickness)) {
                           throw ConfigError("slab thickness must be positive");
                       }
                   },
                   [](const SheetMirror& s) {
                       if (!(s.sheet.eta > 0.0)) throw ConfigError("sheet needs eta > 0");
                   },
                   [](const PorousMirror& p) {
                       if (p.spec.host.is_vacuum()) throw ConfigError("vacuum is not a mirror");
                       if (!(p.spec.porosity >= 0.0 && p.spec.porosity < 1.0)) {
                           throw ConfigError("porosity must lie in [0, 1)");
                       }
                   },
               },
               v_);
}

std::string MirrorSpec::label() const {
    return std::visit(
        overloaded{
            [](const PerfectConductor&) { return std::string("perfect_conductor"); },
            [](const BulkMirror& b) { return "bulk(" + b.model.name() + ")"; },
            [](const SlabMirror& s) {
                return "slab(" + s.model.name() + ", d=" + fmt_g(au_to_nm(s.thickness)) + " nm)";
            },
            [](const SheetMirror& s) { return "sheet(" + s.name + ", eta=" + fmt_g(s.sheet.eta) + ")"; },
            [](const PorousMirror& p) {
                return "porous(" + p.spec.host.name() + ", f=" + fmt_g(p.spec.porosity) + ")";
            },
        },
        v_);
}

std::string MirrorSpec::material() const {
    return std::visit(overloaded{
                          [](const PerfectConductor&) { return std::string("perfect_conductor"); },
                          [](const BulkMirror& b) { return b.model.name(); },
                          [](const SlabMirror& s) { return s.model.name(); },
                          [](const SheetMirror& s) { return s.name; },
                          [](const PorousMirror& p) { return p.spec.host.name(); },
                      },
                      v_);
}

double MirrorSpec::porosity() const {
    if (const auto* p = std::get_if<PorousMirror>(&v_)) return p->spec.porosity;
    return 0.0;
}

double MirrorSpec::characteristic_wavelength() const {
    return std::visit(overloaded{
                          [](const PerfectConductor&) { return 0.0; },
                          [](const BulkMirror& b) { return b.model.characteristic_wavelength(); },
                          [](const SlabMirror& s) { return s.model.characteristic_wavelength(); },
                          [](const SheetMirror&) { return 0.0; },
                          [](const PorousMirror& p) { return p.spec.host.characteristic_wavelength(); },
                      },
                      v_);
}

MirrorSpec::AtFrequency MirrorSpec::at(double xi) const {
    AtFrequency r;
    r.mirror_ = this;
    r.xi_ = xi;
    r.eps_ = std::visit(overloaded{
                            [](const PerfectConductor&) { return std::numeric_limits<double>::infinity(); },
                            [xi](const BulkMirror& b) { return b.model.epsilon(xi); },
                            [xi](const SlabMirror& s) { return s.model.epsilon(xi); },
                            [](const SheetMirror&) { return 1.0; },
                            [xi](const PorousMirror& p) { return bruggeman_mix(p.spec, xi); },
                        },
                        v_);
    return r;
}

Reflection MirrorSpec::AtFrequency::reflection(double kappa) const {
    return std::visit(overloaded{
                          [](const PerfectConductor&) { return Reflection{1.0, -1.0}; },
                          [&](const BulkMirror&) { return fresnel(eps_, kappa); },
                          [&](const SlabMirror& s) {
                              return slab_reflection(eps_, s.thickness, xi_, kappa);
                          },
                          [&](const SheetMirror& s) { return sheet_reflection(s.sheet, kappa); },
                          [&](const PorousMirror&) { return fresnel(eps_, kappa); },
                      },
                      mirror_->v_);
}

}  // namespace cpqr
