#pragma once

// CSV and JSON writers for every product of the command-line tool.
//
// CSV files start with `#` comment lines (mirror, fitted coefficients, ...), then a
// header row and data rows. JSON documents carry `schema_version`. The only
// run-dependent line is the timestamp, which can be switched off.

#include <ostream>
#include <string>
#include <vector>

#include "cpqr/config.hpp"
#include "cpqr/gqs.hpp"
#include "cpqr/reproduce.hpp"

namespace cpqr {

inline constexpr int kSchemaVersion = 1;

struct OutputOptions {
    Format format = Format::Csv;
    bool timestamp = true;
};

void write_potential(std::ostream& os, const PotentialTable& table, const OutputOptions& opts);

void write_sweep(std::ostream& os, const std::string& mirror, const std::vector<double>& heights_m,
                 const std::vector<SweepEntry>& sweep, const OutputOptions& opts);

struct BadlandsRun {
    double height_m = 0.0;
    BadlandsProfile profile;
    double crossing_z = 0.0;  // |V| = E distance, a0 (0 for free space)
};

void write_badlands(std::ostream& os, const std::string& mirror, const std::vector<BadlandsRun>& runs,
                    const OutputOptions& opts);

struct LifetimeRow {
    LifetimeResult lifetime;
    ScatteringLength scattering;
};

void write_lifetimes(std::ostream& os, const std::vector<LifetimeRow>& rows, const OutputOptions& opts);

void write_report(std::ostream& os, const Report& report, const OutputOptions& opts);

/// Long-format plot data `panel,series,x,y`.
void write_series(std::ostream& os, const Report& report, const OutputOptions& opts);

/// Label for a height in cm, e.g. "h10cm", "h0.5cm".
std::string height_label(double height_m);

}  // namespace cpqr
