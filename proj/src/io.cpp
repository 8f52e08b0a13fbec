#include "cpqr/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "cpqr/units.hpp"

namespace cpqr {

namespace {

using nlohmann::ordered_json;

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json jopt(const std::optional<double>& v) { return v ? jnum(*v) : ordered_json(nullptr); }

void csv_preamble(std::ostream& os, const std::string& kind, const OutputOptions& opts) {
    os << "# cpqr " << kind << "\n";
    if (opts.timestamp) os << "# generated: " << utc_now() << "\n";
}

ordered_json json_preamble(const std::string& kind, const OutputOptions& opts) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    if (opts.timestamp) j["generated"] = utc_now();
    return j;
}

void coefficient_line(std::ostream& os, const char* name, const std::optional<double>& c, Unit atomic, Unit nev) {
    os << "# " << name << ": ";
    if (c) {
        os << num(*c) << " " << unit_symbol(atomic) << " = " << num(convert({*c, atomic}, nev).value) << " "
           << unit_symbol(nev) << "\n";
    } else {
        os << "n/a\n";
    }
}

ordered_json coefficient_json(const std::optional<double>& c, Unit atomic, Unit nev) {
    if (!c) return nullptr;
    return {{std::string(unit_symbol(atomic)), *c}, {std::string(unit_symbol(nev)), convert({*c, atomic}, nev).value}};
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

}  // namespace

std::string height_label(double height_m) {
    std::ostringstream os;
    os << "h" << std::setprecision(6) << height_m * 100.0 << "cm";
    return os.str();
}

void write_potential(std::ostream& os, const PotentialTable& table, const OutputOptions& opts) {
    const Asymptotics& a = table.asymptotics();
    const auto& z = table.z();
    const auto& v = table.v();
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("potential", opts);
        j["mirror"] = table.label();
        j["coefficients"] = {{"C3", coefficient_json(a.c3, Unit::HartreeBohr3, Unit::NeVNm3)},
                             {"C4", coefficient_json(a.c4, Unit::HartreeBohr4, Unit::NeVNm4)},
                             {"C5", coefficient_json(a.c5, Unit::HartreeBohr5, Unit::NeVNm5)},
                             {"small_z_exponent", a.small_exponent},
                             {"large_z_exponent", a.large_exponent}};
        j["C4_star_Eh_a0^4"] = c4_star();
        j["max_quadrature_error"] = table.max_quadrature_error();
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < z.size(); ++i) {
            rows.push_back({{"z_a0", z[i]}, {"z_nm", au_to_nm(z[i])}, {"V_Eh", v[i]}, {"V_neV", au_to_neV(v[i])},
                            {"V_over_Vstar", v[i] / retarded_reference(z[i])}});
        }
        j["rows"] = std::move(rows);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "potential", opts);
    os << "# mirror: " << table.label() << "\n";
    os << "# grid: " << z.size() << " points, z = " << num(table.z_lo()) << " .. " << num(table.z_hi()) << " a0\n";
    coefficient_line(os, "C3", a.c3, Unit::HartreeBohr3, Unit::NeVNm3);
    coefficient_line(os, "C4", a.c4, Unit::HartreeBohr4, Unit::NeVNm4);
    coefficient_line(os, "C5", a.c5, Unit::HartreeBohr5, Unit::NeVNm5);
    os << "# local exponent: small z " << num(a.small_exponent) << ", large z " << num(a.large_exponent) << "\n";
    os << "# V* = -C4*/z^4 with C4* = " << num(c4_star()) << " Eh a0^4\n";
    os << "# max quadrature error: " << num(table.max_quadrature_error()) << "\n";
    os << "z_a0,z_nm,V_Eh,V_neV,V_over_Vstar\n";
    for (std::size_t i = 0; i < z.size(); ++i) {
        os << num(z[i]) << "," << num(au_to_nm(z[i])) << "," << num(v[i]) << "," << num(au_to_neV(v[i])) << ","
           << num(v[i] / retarded_reference(z[i])) << "\n";
    }
}

void write_sweep(std::ostream& os, const std::string& mirror, const std::vector<double>& heights_m,
                 const std::vector<SweepEntry>& sweep, const OutputOptions& opts) {
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("reflection_sweep", opts);
        j["mirror"] = mirror;
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            ordered_json row{{"h_m", heights_m[i]}, {"E_neV", au_to_neV(sweep[i].energy)}};
            if (const auto& r = sweep[i].result) {
                row["refl_prob"] = r->probability;
                row["loss"] = r->loss;
                row["re_r"] = r->r.real();
                row["im_r"] = r->r.imag();
                row["flux_drift"] = r->diagnostics.flux_drift;
                row["z_start_a0"] = r->diagnostics.z_start;
                row["z_end_a0"] = r->diagnostics.z_end;
                row["steps"] = r->diagnostics.steps;
            } else {
                row["error"] = sweep[i].error;
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "reflection sweep", opts);
    os << "# mirror: " << mirror << "\n";
    os << "# r = c+/c- with the WKB phase referenced to z_end\n";
    os << "h_m,E_neV,refl_prob,loss,re_r,im_r,flux_drift\n";
    std::vector<std::string> errors;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        os << num(heights_m[i]) << "," << num(au_to_neV(sweep[i].energy)) << ",";
        if (const auto& r = sweep[i].result) {
            os << num(r->probability) << "," << num(r->loss) << "," << num(r->r.real()) << "," << num(r->r.imag())
               << "," << num(r->diagnostics.flux_drift) << "\n";
        } else {
            os << "nan,nan,nan,nan,nan\n";
            errors.push_back("# error at h_m=" + num(heights_m[i]) + ": " + sweep[i].error);
        }
    }
    for (const auto& e : errors) os << e << "\n";
}

void write_badlands(std::ostream& os, const std::string& mirror, const std::vector<BadlandsRun>& runs,
                    const OutputOptions& opts) {
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("badlands", opts);
        j["mirror"] = mirror;
        j["z_a0"] = runs.empty() ? std::vector<double>{} : runs.front().profile.z;
        ordered_json profiles = ordered_json::array();
        for (const auto& run : runs) {
            profiles.push_back({{"h_m", run.height_m},
                                {"E_neV", energy_from_height_neV(run.height_m)},
                                {"peak_z_a0", run.profile.peak_z},
                                {"peak_z_nm", au_to_nm(run.profile.peak_z)},
                                {"peak_Q", run.profile.peak_q},
                                {"crossing_z_a0", run.crossing_z},
                                {"Q", run.profile.q}});
        }
        j["profiles"] = std::move(profiles);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "badlands", opts);
    os << "# mirror: " << mirror << "\n";
    for (const auto& run : runs) {
        os << "# peak " << height_label(run.height_m) << ": z_a0=" << num(run.profile.peak_z)
           << " z_nm=" << num(au_to_nm(run.profile.peak_z)) << " Q=" << num(run.profile.peak_q)
           << " crossing_z_a0=" << num(run.crossing_z) << "\n";
    }
    os << "z_a0,z_nm";
    for (const auto& run : runs) os << ",Q_" << height_label(run.height_m);
    os << "\n";
    if (runs.empty()) return;
    const auto& z = runs.front().profile.z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        os << num(z[i]) << "," << num(au_to_nm(z[i]));
        for (const auto& run : runs) os << "," << num(run.profile.q[i]);
        os << "\n";
    }
}

void write_lifetimes(std::ostream& os, const std::vector<LifetimeRow>& rows, const OutputOptions& opts) {
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("lifetime", opts);
        ordered_json out = ordered_json::array();
        for (const auto& row : rows) {
            const auto& s = row.scattering;
            out.push_back({{"material", row.lifetime.mirror},
                           {"porosity", row.lifetime.porosity},
                           {"re_a_nm", au_to_nm(s.a.real())},
                           {"im_a_nm", au_to_nm(s.a.imag())},
                           {"lifetime_s", jnum(row.lifetime.tau_s)},
                           {"absorbing", s.absorbing},
                           {"E1_neV", au_to_neV(s.energy1)},
                           {"E2_neV", au_to_neV(s.energy2)},
                           {"linearity", s.linearity}});
        }
        j["rows"] = std::move(out);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "lifetime", opts);
    os << "# tau = hbar / (2 m g |Im a|), mg = " << num(constants().mg_neV_per_m) << " neV/m\n";
    for (const auto& row : rows) {
        const auto& s = row.scattering;
        os << "# " << row.lifetime.mirror << ": Re a = " << num(au_to_nm(s.a.real())) << " nm, E1 = "
           << num(au_to_neV(s.energy1)) << " neV, E2 = " << num(au_to_neV(s.energy2))
           << " neV, linearity = " << num(s.linearity) << (s.absorbing ? "" : ", no absorption") << "\n";
    }
    os << "material,porosity,im_a_nm,lifetime_s\n";
    for (const auto& row : rows) {
        os << quoted(row.lifetime.mirror) << "," << num(row.lifetime.porosity) << ","
           << num(au_to_nm(row.scattering.a.imag())) << "," << num(row.lifetime.tau_s) << "\n";
    }
}

void write_report(std::ostream& os, const Report& report, const OutputOptions& opts) {
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("reproduce", opts);
        j["target"] = report.target;
        j["all_pass"] = report.all_pass();
        ordered_json cells = ordered_json::array();
        for (const auto& c : report.cells) {
            cells.push_back({{"item", c.item},
                             {"quantity", c.quantity},
                             {"unit", c.unit},
                             {"computed", jopt(c.computed)},
                             {"reference", jopt(c.reference)},
                             {"tolerance", c.tolerance},
                             {"status", c.status},
                             {"note", c.note}});
        }
        j["cells"] = std::move(cells);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "reproduce " + report.target, opts);
    os << "# overall: " << (report.all_pass() ? "pass" : "fail") << "\n";
    os << "item,quantity,unit,computed,reference,tolerance,status,note\n";
    for (const auto& c : report.cells) {
        os << quoted(c.item) << "," << quoted(c.quantity) << "," << quoted(c.unit) << ","
           << (c.computed ? num(*c.computed) : "n/a") << "," << (c.reference ? num(*c.reference) : "") << ","
           << c.tolerance << "," << c.status << "," << quoted(c.note) << "\n";
    }
}

void write_series(std::ostream& os, const Report& report, const OutputOptions& opts) {
    if (opts.format == Format::Json) {
        ordered_json j = json_preamble("series", opts);
        j["target"] = report.target;
        ordered_json rows = ordered_json::array();
        for (const auto& p : report.data) {
            rows.push_back({{"panel", p.panel}, {"series", p.series}, {"x", jnum(p.x)}, {"y", jnum(p.y)}});
        }
        j["rows"] = std::move(rows);
        os << j.dump(2) << "\n";
        return;
    }
    csv_preamble(os, "series " + report.target, opts);
    os << "panel,series,x,y\n";
    for (const auto& p : report.data) os << p.panel << "," << p.series << "," << num(p.x) << "," << num(p.y) << "\n";
}

}  // namespace cpqr
