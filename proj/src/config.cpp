#include "cpqr/config.hpp"

#include "cpqr/error.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

MirrorSpec resolve_mirror(const MaterialCatalog& catalog, const MirrorRequest& request) {
    if (request.material.empty()) throw ConfigError("no mirror selected (use --mirror)");
    if (request.material == "vacuum") throw ConfigError("vacuum is not a mirror");
    if (request.slab_nm && request.porosity) {
        throw ConfigError("--slab-nm and --porosity select different mirror variants; choose one");
    }
    const std::filesystem::path as_path(request.material);
    const MaterialRecord rec = as_path.extension() == ".mat" ? read_material_file(as_path)
                                                              : catalog.get(request.material);
    switch (rec.kind) {
        case MaterialKind::PerfectConductor:
            if (request.slab_nm || request.porosity) {
                throw ConfigError("the perfect conductor has no slab or porous variant");
            }
            return MirrorSpec::perfect_conductor();
        case MaterialKind::Sheet:
            if (request.slab_nm || request.porosity) {
                throw ConfigError("sheet '" + rec.name + "' has no slab or porous variant");
            }
            return MirrorSpec::sheet(rec.sheet, rec.name);
        case MaterialKind::Dielectric:
            break;
    }
    if (rec.model.is_vacuum()) throw ConfigError("material '" + rec.name + "' is vacuum, not a mirror");
    if (request.slab_nm) {
        if (!(*request.slab_nm > 0.0)) throw ConfigError("slab thickness must be positive");
        return MirrorSpec::slab(rec.model, nm_to_au(*request.slab_nm));
    }
    if (request.porosity) return MirrorSpec::porous(rec.model, *request.porosity);
    return MirrorSpec::bulk(rec.model);
}

TableOptions RunConfig::table_options(const MirrorSpec& mirror) const {
    TableOptions opts = TableOptions::for_mirror(mirror);
    if (z_lo) opts.z_lo = *z_lo;
    if (z_hi) opts.z_hi = *z_hi;
    if (points) opts.n_points = *points;
    if (polarizability_file) opts.alpha = load_polarizability_file(*polarizability_file);
    return opts;
}

void RunConfig::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    };
    if (z_lo) positive(*z_lo, "z-lo");
    if (z_hi) positive(*z_hi, "z-hi");
    if (z_lo && z_hi && !(*z_lo < *z_hi)) throw ConfigError("z-lo must be below z-hi");
    if (points && *points < 16) throw ConfigError("a potential table needs at least 16 points");
    positive(solver.edge_tol, "edge-tol");
    positive(solver.r_tol, "r-tol");
    positive(solver.rk_rel_tol, "rk-tol");
    positive(solver.flux_tol, "flux-tol");
    positive(scattering.height1_m, "scattering height h1");
    positive(scattering.height2_m, "scattering height h2");
    positive(scattering.linear_tol, "linear-tol");
}

}  // namespace cpqr
