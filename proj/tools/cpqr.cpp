// cpqr: Casimir-Polder potentials, quantum reflection and gravitational-state
// lifetimes for (anti)hydrogen above planar mirrors.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cpqr/config.hpp"
#include "cpqr/error.hpp"
#include "cpqr/io.hpp"
#include "cpqr/reproduce.hpp"
#include "cpqr/units.hpp"

namespace {

using namespace cpqr;

struct Globals {
    RunConfig run;
    std::string format = "csv";
    std::string out;
    std::vector<double> heights_cm;
    std::string data_dir;
    bool no_timestamp = false;
    std::optional<double> slab_nm;
    std::optional<double> porosity;
    std::optional<std::string> polarizability;
    std::optional<double> z_lo, z_hi;
    std::optional<std::size_t> points;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

MaterialCatalog catalog(const Globals& g) {
    const std::filesystem::path root = g.data_dir.empty() ? MaterialCatalog::default_data_dir()
                                                          : std::filesystem::path(g.data_dir);
    return MaterialCatalog(root / "materials");
}

RunConfig finalize(Globals& g) {
    RunConfig cfg = g.run;
    cfg.mirror.slab_nm = g.slab_nm;
    cfg.mirror.porosity = g.porosity;
    cfg.z_lo = g.z_lo;
    cfg.z_hi = g.z_hi;
    cfg.points = g.points;
    if (g.polarizability) cfg.polarizability_file = *g.polarizability;
    cfg.format = parse_format(g.format);
    cfg.timestamp = !g.no_timestamp;
    cfg.validate();
    return cfg;
}

std::vector<double> heights_m(const Globals& g, std::vector<double> defaults_cm) {
    const auto& cm = g.heights_cm.empty() ? defaults_cm : g.heights_cm;
    std::vector<double> out;
    for (double h : cm) {
        if (!(h > 0.0)) throw ConfigError("--height-cm must be positive");
        out.push_back(h * 1e-2);
    }
    return out;
}

PotentialTable build_table(const RunConfig& cfg, const MirrorSpec& mirror) {
    return PotentialTable::from_mirror(mirror, cfg.table_options(mirror));
}

int cmd_material_list(Globals& g) {
    const MaterialCatalog cat = catalog(g);
    Output out(g.out);
    std::ostream& os = out.stream();
    os << "name,kind,static_epsilon,wavelength_nm,source\n";
    for (const auto& name : cat.names()) {
        const MaterialRecord rec = cat.get(name);
        os << name << ",";
        switch (rec.kind) {
            case MaterialKind::PerfectConductor: os << "perfect_conductor,inf,,"; break;
            case MaterialKind::Sheet: os << "sheet,,,"; break;
            case MaterialKind::Dielectric:
                os << "dielectric," << rec.model.static_epsilon() << ","
                   << au_to_nm(rec.model.characteristic_wavelength()) << ",";
                break;
        }
        os << rec.source.filename().string() << "\n";
    }
    return 0;
}

int cmd_material_show(Globals& g, const std::string& name) {
    const MaterialCatalog cat = catalog(g);
    const std::filesystem::path as_path(name);
    const MaterialRecord rec = as_path.extension() == ".mat" ? read_material_file(as_path) : cat.get(name);
    Output out(g.out);
    std::ostream& os = out.stream();
    os << "name = " << rec.name << "\nsource = " << rec.source.string() << "\n";
    switch (rec.kind) {
        case MaterialKind::PerfectConductor: os << "kind = perfect_conductor\n"; break;
        case MaterialKind::Sheet: os << "kind = sheet\neta = " << rec.sheet.eta << "\n"; break;
        case MaterialKind::Dielectric:
            os << "kind = dielectric\n";
            for (const auto& o : rec.model.oscillators()) {
                os << "osc = " << o.strength << ", " << o.resonance_sq << ", " << o.damping << "\n";
            }
            os << "static_epsilon = " << rec.model.static_epsilon() << "\nwavelength_nm = "
               << au_to_nm(rec.model.characteristic_wavelength()) << "\n";
            break;
    }
    return 0;
}

int cmd_potential(Globals& g) {
    const RunConfig cfg = finalize(g);
    const MirrorSpec mirror = resolve_mirror(catalog(g), cfg.mirror);
    const PotentialTable table = build_table(cfg, mirror);
    Output out(g.out);
    write_potential(out.stream(), table, {cfg.format, cfg.timestamp});
    return 0;
}

int cmd_reflect(Globals& g) {
    const RunConfig cfg = finalize(g);
    const auto hs = heights_m(g, {30.0});
    const MirrorSpec mirror = resolve_mirror(catalog(g), cfg.mirror);
    const PotentialTable table = build_table(cfg, mirror);
    const auto sweep = reflection_sweep(table, energies_from_heights(hs), cfg.solver);
    Output out(g.out);
    write_sweep(out.stream(), mirror.label(), hs, sweep, {cfg.format, cfg.timestamp});
    int status = 0;
    for (const auto& e : sweep) {
        if (!e.result) {
            std::cerr << "cpqr: " << e.error << "\n";
            status = 1;
        }
    }
    return status;
}

int cmd_badlands(Globals& g) {
    const RunConfig cfg = finalize(g);
    const auto hs = heights_m(g, {10.0, 30.0, 50.0});
    const MirrorSpec mirror = resolve_mirror(catalog(g), cfg.mirror);
    const PotentialTable table = build_table(cfg, mirror);
    std::vector<BadlandsRun> runs;
    for (double h : hs) {
        const double e = energy_from_height_au(h);
        runs.push_back({h, badlands_profile(table, e), crossing_distance(table, e)});
    }
    Output out(g.out);
    write_badlands(out.stream(), mirror.label(), runs, {cfg.format, cfg.timestamp});
    return 0;
}

int cmd_lifetime(Globals& g) {
    const RunConfig cfg = finalize(g);
    const MirrorSpec mirror = resolve_mirror(catalog(g), cfg.mirror);
    const PotentialTable table = build_table(cfg, mirror);
    const ScatteringLength a = scattering_length(table, cfg.scattering);
    const LifetimeResult life = gqs_lifetime_or_infinite(a, mirror.label(), mirror.porosity());
    Output out(g.out);
    write_lifetimes(out.stream(), {{life, a}}, {cfg.format, cfg.timestamp});
    return 0;
}

int cmd_reproduce(Globals& g, const std::string& target, const std::string& data_path,
                  const std::string& tolerance_path) {
    const RunConfig cfg = finalize(g);
    const MaterialCatalog cat = catalog(g);
    Report report;
    if (target == "table1" || target == "table2") {
        const std::filesystem::path tol_file =
            !tolerance_path.empty() ? std::filesystem::path(tolerance_path)
            : g.data_dir.empty()    ? ToleranceTable::default_path()
                                    : std::filesystem::path(g.data_dir) / "tolerances.txt";
        const ToleranceTable tol = ToleranceTable::load(tol_file);
        report = target == "table1" ? reproduce_table1(cat, tol, cfg) : reproduce_table2(cat, tol, cfg);
    } else if (target == "fig1") {
        report = reproduce_fig1(cat, cfg);
    } else {
        report = reproduce_fig2(cat, cfg);
    }
    const OutputOptions opts{cfg.format, cfg.timestamp};
    {
        Output out(g.out);
        write_report(out.stream(), report, opts);
    }
    if (!data_path.empty()) {
        Output data(data_path);
        write_series(data.stream(), report, opts);
    }
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir-Polder potentials, quantum reflection and gravitational-state lifetimes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read `key = value` settings; command-line flags take precedence");
    Globals g;

    app.add_option("--mirror", g.run.mirror.material, "Material name from the catalog, or a .mat file");
    app.add_option("--slab-nm", g.slab_nm, "Finite slab of this thickness (nm)");
    app.add_option("--porosity", g.porosity, "Vacuum fraction of a Bruggeman porous medium");
    app.add_option("--height-cm", g.heights_cm, "Fall height in cm (repeatable)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "Output file (default: stdout)");
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp line for byte-identical output");
    app.add_option("--data-dir", g.data_dir, "Directory with materials/ and tolerances.txt");
    app.add_option("--z-lo", g.z_lo, "Smallest tabulated distance (a0)");
    app.add_option("--z-hi", g.z_hi, "Largest tabulated distance (a0)");
    app.add_option("--points", g.points, "Number of tabulated distances");
    app.add_option("--polarizability", g.polarizability, "Atom polarizability file (oscillator format)");
    app.add_option("--edge-tol", g.run.solver.edge_tol, "|Q| bound at the integration edges");
    app.add_option("--r-tol", g.run.solver.r_tol, "Relative change of |r| accepted over the last decade");
    app.add_option("--rk-tol", g.run.solver.rk_rel_tol, "Relative tolerance of the Runge-Kutta steps");
    app.add_option("--flux-tol", g.run.solver.flux_tol, "Accepted relative flux drift");
    app.add_option("--h1-m", g.run.scattering.height1_m, "First scattering-length extraction height (m)");
    app.add_option("--h2-m", g.run.scattering.height2_m, "Second scattering-length extraction height (m)");

    auto* material = app.add_subcommand("material", "List or inspect material files")->require_subcommand(1);
    auto* mat_list = material->add_subcommand("list", "List shipped materials");
    std::string show_name;
    auto* mat_show = material->add_subcommand("show", "Print one material");
    mat_show->add_option("name", show_name, "Material name or .mat file")->required();
    auto* potential = app.add_subcommand("potential", "Tabulate V(z) and fit its asymptotic coefficients");
    auto* reflect = app.add_subcommand("reflect", "Quantum reflection probability for each fall height");
    auto* badlands = app.add_subcommand("badlands", "Badlands function Q(z) for each fall height");
    auto* lifetime = app.add_subcommand("lifetime", "Scattering length and gravitational-state lifetime");
    auto* reproduce = app.add_subcommand("reproduce", "Recompute a published table or figure and compare");
    std::string target, data_path, tolerance_path;
    reproduce->add_option("target", target, "table1 | table2 | fig1 | fig2")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "fig1", "fig2"}));
    reproduce->add_option("--data", data_path, "Also write plot-ready series (panel,series,x,y)");
    reproduce->add_option("--tolerances", tolerance_path, "Tolerance file (default: shipped tolerances.txt)");
    for (auto* sub : {material, potential, reflect, badlands, lifetime, reproduce}) sub->fallthrough();
    for (auto* sub : {mat_list, mat_show}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*mat_list) return cmd_material_list(g);
        if (*mat_show) return cmd_material_show(g, show_name);
        if (*potential) return cmd_potential(g);
        if (*reflect) return cmd_reflect(g);
        if (*badlands) return cmd_badlands(g);
        if (*lifetime) return cmd_lifetime(g);
        if (*reproduce) return cmd_reproduce(g, target, data_path, tolerance_path);
    } catch (const ConfigError& e) {
        std::cerr << "cpqr: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "cpqr: numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "cpqr: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
