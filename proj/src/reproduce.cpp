#include "cpqr/reproduce.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cpqr/error.hpp"
#include "cpqr/reflection.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::string format_number(double v, int digits = 3) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

ReportCell compare(std::string item, std::string quantity, std::string unit, double computed,
                   const Tolerance& tol, std::string note = {}) {
    ReportCell cell{std::move(item), std::move(quantity), std::move(unit), computed, tol.reference,
                    tol.describe(), tol.accepts(computed) ? "pass" : "fail", std::move(note)};
    return cell;
}

ReportCell failure(std::string item, std::string quantity, std::string unit, const Tolerance& tol,
                   const std::exception& e) {
    return {std::move(item), std::move(quantity), std::move(unit), std::nullopt, tol.reference,
            tol.describe(), "fail", e.what()};
}

ReportCell structural(std::string item, std::string quantity, double computed, bool ok, std::string note) {
    return {std::move(item), std::move(quantity), "", computed, std::nullopt, "", ok ? "pass" : "fail",
            std::move(note)};
}

MirrorSpec bulk_of(const MaterialCatalog& catalog, const std::string& name) {
    return resolve_mirror(catalog, {name, std::nullopt, std::nullopt});
}

}  // namespace

bool Tolerance::accepts(double value) const {
    const double bound = relative ? tol * std::abs(reference) : tol;
    return std::abs(value - reference) <= bound * (1.0 + 1e-12);
}

std::string Tolerance::describe() const {
    return relative ? "±" + format_number(tol * 100.0) + "%" : "±" + format_number(tol);
}

ToleranceTable ToleranceTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tolerance file " + path.string());
    ToleranceTable table;
    table.source_ = path;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        const std::string stripped = trim(text);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ParseError(path.string(), line, "expected 'key = value, tol, rel|abs'");
        std::vector<std::string> fields;
        std::stringstream ss(stripped.substr(eq + 1));
        for (std::string item; std::getline(ss, item, ',');) fields.push_back(trim(item));
        if (fields.size() != 3 || (fields[2] != "rel" && fields[2] != "abs")) {
            throw ParseError(path.string(), line, "expected 'value, tol, rel|abs'");
        }
        Tolerance t;
        try {
            std::size_t used = 0;
            t.reference = std::stod(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("trailing");
            t.tol = std::stod(fields[1], &used);
            if (used != fields[1].size() || !(t.tol > 0.0)) throw std::invalid_argument("tol");
        } catch (const std::logic_error&) {
            throw ParseError(path.string(), line, "bad number or non-positive tolerance");
        }
        t.relative = fields[2] == "rel";
        table.entries_[trim(stripped.substr(0, eq))] = t;
    }
    return table;
}

std::filesystem::path ToleranceTable::default_path() {
    return MaterialCatalog::default_data_dir() / "tolerances.txt";
}

const Tolerance& ToleranceTable::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("tolerance '" + key + "' missing from " + source_.string());
    return it->second;
}

bool Report::all_pass() const {
    for (const auto& c : cells) {
        if (c.status == "fail") return false;
    }
    return true;
}

std::vector<ReferenceMirror> table1_mirrors(const MaterialCatalog& catalog) {
    return {
        {"perfect_conductor", "perfect conductor", MirrorSpec::perfect_conductor()},
        {"silicon", "bulk silicon", bulk_of(catalog, "silicon")},
        {"silica", "bulk silica", bulk_of(catalog, "silica")},
    };
}

std::vector<ReferenceMirror> table2_mirrors(const MaterialCatalog& catalog) {
    auto mirrors = table1_mirrors(catalog);
    mirrors.push_back({"silica_slab_5nm", "5 nm silica slab",
                       resolve_mirror(catalog, {"silica", 5.0, std::nullopt})});
    mirrors.push_back({"graphene", "graphene", resolve_mirror(catalog, {"graphene", std::nullopt, std::nullopt}),
                       true, true});
    mirrors.push_back({"nanodiamond_95", "nanodiamond powder (porosity 95%)",
                       resolve_mirror(catalog, {"diamond", std::nullopt, 0.95}), false});
    mirrors.push_back({"porous_silicon_95", "porous silicon (porosity 95%)",
                       resolve_mirror(catalog, {"silicon", std::nullopt, 0.95}), false});
    mirrors.push_back({"silica_aerogel_98", "silica aerogel (porosity 98%)",
                       resolve_mirror(catalog, {"silica", std::nullopt, 0.98}), false});
    return mirrors;
}

Report reproduce_table1(const MaterialCatalog& catalog, const ToleranceTable& tol, const RunConfig& cfg) {
    Report report{"table1", {}, {}};
    for (const auto& pm : table1_mirrors(catalog)) {
        const Tolerance& t3 = tol.get("table1." + pm.key + ".c3");
        const Tolerance& t4 = tol.get("table1." + pm.key + ".c4");
        try {
            const auto table = PotentialTable::from_mirror(pm.mirror, cfg.table_options(pm.mirror));
            const auto& a = table.asymptotics();
            const double c3 = a.c3.value_or(NAN);
            const double c4 = a.c4.value_or(NAN);
            report.cells.push_back(compare(pm.display, "C3", "Eh a0^3", c3, t3,
                                           format_number(convert({c3, Unit::HartreeBohr3}, Unit::NeVNm3).value * 1e-6) +
                                               "e6 neV nm^3"));
            report.cells.push_back(compare(pm.display, "C4", "Eh a0^4", c4, t4,
                                           format_number(convert({c4, Unit::HartreeBohr4}, Unit::NeVNm4).value * 1e-7) +
                                               "e7 neV nm^4"));
        } catch (const NumericalError& e) {
            report.cells.push_back(failure(pm.display, "C3", "Eh a0^3", t3, e));
            report.cells.push_back(failure(pm.display, "C4", "Eh a0^4", t4, e));
        }
    }
    return report;
}

Report reproduce_table2(const MaterialCatalog& catalog, const ToleranceTable& tol, const RunConfig& cfg) {
    Report report{"table2", {}, {}};
    const double energy = energy_from_height_au(0.30);
    for (const auto& pm : table2_mirrors(catalog)) {
        const Tolerance& tl = tol.get("table2." + pm.key + ".lifetime");
        std::optional<PotentialTable> table;
        try {
            table = PotentialTable::from_mirror(pm.mirror, cfg.table_options(pm.mirror));
        } catch (const NumericalError& e) {
            if (pm.reflection_reported) {
                report.cells.push_back(failure(pm.display, "reflection probability", "", tol.get("table2." + pm.key + ".refl"), e));
            }
            report.cells.push_back(failure(pm.display, "lifetime", "s", tl, e));
            continue;
        }
        if (pm.reflection_reported) {
            const Tolerance& tr = tol.get("table2." + pm.key + ".refl");
            try {
                const auto r = solve_reflection(*table, energy, cfg.solver);
                report.cells.push_back(compare(pm.display, "reflection probability", "", r.probability, tr,
                                               pm.model_substituted ? "model-substituted" : ""));
            } catch (const NumericalError& e) {
                report.cells.push_back(failure(pm.display, "reflection probability", "", tr, e));
            }
        } else {
            report.cells.push_back({pm.display, "reflection probability", "", std::nullopt, std::nullopt, "", "n/a",
                                    "effective medium not valid at this energy"});
        }
        try {
            const auto life = mirror_lifetime(*table, cfg.scattering);
            report.cells.push_back(compare(pm.display, "lifetime", "s", life.tau_s, tl,
                                           pm.model_substituted ? "model-substituted" : ""));
        } catch (const NumericalError& e) {
            report.cells.push_back(failure(pm.display, "lifetime", "s", tl, e));
        }
    }
    return report;
}

Report reproduce_fig1(const MaterialCatalog& catalog, const RunConfig& cfg) {
    Report report{"fig1", {}, {}};
    std::vector<ReferenceMirror> mirrors = table1_mirrors(catalog);
    std::vector<PotentialTable> tables;
    for (const auto& pm : mirrors) tables.push_back(PotentialTable::from_mirror(pm.mirror, cfg.table_options(pm.mirror)));

    // Left panel and inset: V(z) and V/V*.
    const auto& zs = tables[0].z();
    int order_violations = 0;
    for (double z : zs) {
        const double vpc = std::abs(tables[0].value(z));
        const double vsi = std::abs(tables[1].value(z));
        const double vsio2 = std::abs(tables[2].value(z));
        if (vpc < vsi || vsi < vsio2) ++order_violations;
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const double v = tables[i].value(z);
            report.data.push_back({"potential", mirrors[i].key, au_to_nm(z), au_to_neV(v)});
            report.data.push_back({"ratio", mirrors[i].key, au_to_nm(z), v / retarded_reference(z)});
        }
    }
    report.cells.push_back(structural("|V_PC| >= |V_Si| >= |V_silica|", "violations", order_violations,
                                      order_violations == 0, std::to_string(zs.size()) + " grid points"));
    const double ratio_far = tables[0].value(zs.back()) / retarded_reference(zs.back());
    report.cells.push_back(structural("perfect conductor V/V* at largest z", "ratio", ratio_far,
                                      std::abs(ratio_far - 1.0) < 0.01, "approaches 1"));
    const double z0 = zs.front();
    const double ratio_near = tables[0].value(z0) / retarded_reference(z0) / (0.25 * z0 / c4_star());
    report.cells.push_back(structural("perfect conductor V/V* at smallest z over C3 z/C4*", "ratio", ratio_near,
                                      std::abs(ratio_near - 1.0) < 0.02, "van der Waals limit"));

    // Right panel: |r|^2 against fall height.
    const auto heights = log_grid(1e-8, 1.0, 33);
    std::vector<std::vector<double>> probs(tables.size());
    int sweep_failures = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto sweep = reflection_sweep(tables[i], energies_from_heights(heights), cfg.solver);
        for (std::size_t j = 0; j < sweep.size(); ++j) {
            const double pr = sweep[j].result ? sweep[j].result->probability : NAN;
            if (!sweep[j].result) ++sweep_failures;
            probs[i].push_back(pr);
            report.data.push_back({"reflection", mirrors[i].key, heights[j], pr});
        }
    }
    int refl_order = 0, refl_mono = 0, compared = 0;
    for (std::size_t j = 0; j < heights.size(); ++j) {
        if (heights[j] >= 0.01 * (1 - 1e-12) && heights[j] <= 1.0 * (1 + 1e-12)) {
            ++compared;
            if (!(probs[0][j] < probs[1][j] && probs[1][j] < probs[2][j])) ++refl_order;
        }
        if (j > 0) {
            for (const auto& p : probs) {
                if (!(p[j] < p[j - 1])) ++refl_mono;
            }
        }
    }
    report.cells.push_back(structural("|r|^2 PC < Si < silica for h in [1, 100] cm", "violations", refl_order,
                                      refl_order == 0 && sweep_failures == 0, std::to_string(compared) + " heights"));
    report.cells.push_back(structural("|r|^2 decreasing with h in [1e-8, 1] m", "violations", refl_mono,
                                      refl_mono == 0 && sweep_failures == 0,
                                      std::to_string(sweep_failures) + " failed solves"));
    return report;
}

Report reproduce_fig2(const MaterialCatalog& catalog, const RunConfig& cfg) {
    Report report{"fig2", {}, {}};
    std::vector<ReferenceMirror> mirrors = table1_mirrors(catalog);
    std::vector<PotentialTable> tables;
    for (const auto& pm : mirrors) tables.push_back(PotentialTable::from_mirror(pm.mirror, cfg.table_options(pm.mirror)));
    const auto grid = log_grid(1.0, 1e5, 301);

    // Left panel: the three bulks at h = 10 cm.
    const double e10 = energy_from_height_au(0.10);
    std::vector<BadlandsProfile> left;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        left.push_back(badlands_profile(tables[i], e10, grid));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            report.data.push_back({"bulks_h10cm", mirrors[i].key, au_to_nm(grid[k]), left.back().q[k]});
        }
    }
    const bool pos_order = left[0].peak_z > left[1].peak_z && left[1].peak_z > left[2].peak_z;
    report.cells.push_back(structural("peak position PC > Si > silica at h = 10 cm", "PC peak z (nm)",
                                      au_to_nm(left[0].peak_z), pos_order,
                                      "Si " + format_number(au_to_nm(left[1].peak_z)) + " nm, silica " +
                                          format_number(au_to_nm(left[2].peak_z)) + " nm"));

    // Right panel: perfect conductor at three heights.
    std::vector<BadlandsProfile> right;
    double worst_crossing = 1.0;
    for (double h : {0.10, 0.30, 0.50}) {
        const double e = energy_from_height_au(h);
        right.push_back(badlands_profile(tables[0], e, grid));
        const std::string series = "h" + format_number(h * 100.0) + "cm";
        for (std::size_t k = 0; k < grid.size(); ++k) {
            report.data.push_back({"perfect_conductor", series, au_to_nm(grid[k]), right.back().q[k]});
        }
        const double ratio = right.back().peak_z / crossing_distance(tables[0], e);
        worst_crossing = std::max({worst_crossing, ratio, 1.0 / ratio});
    }
    const bool heights_down = std::abs(right[0].peak_q) > std::abs(right[1].peak_q) &&
                              std::abs(right[1].peak_q) > std::abs(right[2].peak_q);
    report.cells.push_back(structural("PC peak |Q| decreasing for h = 10, 30, 50 cm", "|Q*| at 10 cm",
                                      std::abs(right[0].peak_q), heights_down,
                                      "30 cm " + format_number(std::abs(right[1].peak_q)) + ", 50 cm " +
                                          format_number(std::abs(right[2].peak_q))));
    const bool moves_in = right[0].peak_z > right[1].peak_z && right[1].peak_z > right[2].peak_z;
    report.cells.push_back(structural("PC peak moves toward the surface as h grows", "z* at 10 cm (nm)",
                                      au_to_nm(right[0].peak_z), moves_in,
                                      "50 cm " + format_number(au_to_nm(right[2].peak_z)) + " nm"));
    report.cells.push_back(structural("peak within a factor 2 of |V(z)| = E", "worst ratio", worst_crossing,
                                      worst_crossing < 2.0, ""));
    return report;
}

}  // namespace cpqr
