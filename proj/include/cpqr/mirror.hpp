#pragma once

#include <string>
#include <variant>

#include "cpqr/optical.hpp"

namespace cpqr {

struct PerfectConductor {};
struct BulkMirror {
    DielectricModel model;
};
struct SlabMirror {
    DielectricModel model;
    double thickness = 0.0;  // a0
};
struct SheetMirror {
    SheetModel sheet;
    std::string name = "sheet";
};
struct PorousMirror {
    PorousSpec spec;
};

/// A planar mirror facing the atom.
class MirrorSpec {
public:
    using Variant = std::variant<PerfectConductor, BulkMirror, SlabMirror, SheetMirror, PorousMirror>;

    /// Validates the variant's invariants; throws ConfigError.
    explicit MirrorSpec(Variant v);

    static MirrorSpec perfect_conductor() { return MirrorSpec(PerfectConductor{}); }
    static MirrorSpec bulk(DielectricModel m) { return MirrorSpec(BulkMirror{std::move(m)}); }
    static MirrorSpec slab(DielectricModel m, double thickness_a0) {
        return MirrorSpec(SlabMirror{std::move(m), thickness_a0});
    }
    static MirrorSpec sheet(SheetModel s, std::string name = "sheet") {
        return MirrorSpec(SheetMirror{s, std::move(name)});
    }
    static MirrorSpec porous(DielectricModel host, double porosity) {
        return MirrorSpec(PorousMirror{PorousSpec{std::move(host), porosity}});
    }

    [[nodiscard]] const Variant& variant() const { return v_; }
    [[nodiscard]] bool is_perfect_conductor() const {
        return std::holds_alternative<PerfectConductor>(v_);
    }
    /// Finite-thickness mirrors (slab) whose retarded tail falls faster than z^-4.
    [[nodiscard]] bool is_thin() const { return std::holds_alternative<SlabMirror>(v_); }

    /// Human-readable one-line description, e.g. "slab(silica, d=5 nm)".
    [[nodiscard]] std::string label() const;
    /// Short material name ("silica", "graphene", ...).
    [[nodiscard]] std::string material() const;
    /// Porosity for porous mirrors, 0 otherwise.
    [[nodiscard]] double porosity() const;
    /// Characteristic optical wavelength in a0 (0 when undefined).
    [[nodiscard]] double characteristic_wavelength() const;

    /// Response frozen at one imaginary frequency; reflection() then only varies kappa.
    class AtFrequency {
    public:
        [[nodiscard]] Reflection reflection(double kappa) const;
        [[nodiscard]] double epsilon() const { return eps_; }

    private:
        friend class MirrorSpec;
        const MirrorSpec* mirror_ = nullptr;
        double xi_ = 0.0;
        double eps_ = 1.0;
    };

    [[nodiscard]] AtFrequency at(double xi) const;
    [[nodiscard]] Reflection reflection(double xi, double kappa) const { return at(xi).reflection(kappa); }

private:
    Variant v_;
};

}  // namespace cpqr
