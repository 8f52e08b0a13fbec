#pragma once

// Recomputes the published tables and figure data and compares them with the
// reference values in a tolerance file.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpqr/config.hpp"

namespace cpqr {

struct Tolerance {
    double reference = 0.0;
    double tol = 0.0;
    bool relative = true;

    [[nodiscard]] bool accepts(double value) const;
    /// "±1%" or "±0.01".
    [[nodiscard]] std::string describe() const;
};

class ToleranceTable {
public:
    /// `key = value, tol, rel|abs` lines with `#` comments.
    static ToleranceTable load(const std::filesystem::path& path);
    static std::filesystem::path default_path();

    [[nodiscard]] const Tolerance& get(const std::string& key) const;

private:
    std::map<std::string, Tolerance> entries_;
    std::filesystem::path source_;
};

struct ReportCell {
    std::string item;
    std::string quantity;
    std::string unit;
    std::optional<double> computed;
    std::optional<double> reference;
    std::string tolerance;
    std::string status;  // pass | fail | n/a
    std::string note;
};

/// One sample of plot-ready data.
struct SeriesPoint {
    std::string panel;
    std::string series;
    double x = 0.0;
    double y = 0.0;
};

struct Report {
    std::string target;
    std::vector<ReportCell> cells;
    std::vector<SeriesPoint> data;

    [[nodiscard]] bool all_pass() const;
};

/// A mirror of the published material list.
struct ReferenceMirror {
    std::string key;      // tolerance-file key, e.g. "silica_slab_5nm"
    std::string display;  // row label
    MirrorSpec mirror;
    bool reflection_reported = true;  // false for effective-medium mirrors
    bool model_substituted = false;
};

std::vector<ReferenceMirror> table1_mirrors(const MaterialCatalog& catalog);
std::vector<ReferenceMirror> table2_mirrors(const MaterialCatalog& catalog);

Report reproduce_table1(const MaterialCatalog& catalog, const ToleranceTable& tol, const RunConfig& cfg);
Report reproduce_table2(const MaterialCatalog& catalog, const ToleranceTable& tol, const RunConfig& cfg);
Report reproduce_fig1(const MaterialCatalog& catalog, const RunConfig& cfg);
Report reproduce_fig2(const MaterialCatalog& catalog, const RunConfig& cfg);

}  // namespace cpqr
