#pragma once

// Mirror selection and run settings shared by the command-line front end.

#include <filesystem>
#include <optional>
#include <string>

#include "cpqr/gqs.hpp"
#include "cpqr/mirror.hpp"
#include "cpqr/potential.hpp"

namespace cpqr {

enum class Format { Csv, Json };

Format parse_format(const std::string& s);

struct MirrorRequest {
    std::string material;           // catalog name or path to a .mat file
    std::optional<double> slab_nm;  // finite slab of this thickness
    std::optional<double> porosity; // Bruggeman mix with vacuum
};

/// Builds the mirror variant selected by a request. Throws ConfigError for unknown
/// materials, vacuum, or a combination that is not exactly one variant.
MirrorSpec resolve_mirror(const MaterialCatalog& catalog, const MirrorRequest& request);

struct RunConfig {
    MirrorRequest mirror;
    std::optional<double> z_lo;
    std::optional<double> z_hi;
    std::optional<std::size_t> points;
    std::optional<std::filesystem::path> polarizability_file;
    SolverOptions solver;
    ScatteringOptions scattering;
    Format format = Format::Csv;
    bool timestamp = true;

    /// Table grid for the mirror: its defaults with any overrides applied.
    [[nodiscard]] TableOptions table_options(const MirrorSpec& mirror) const;
    /// Throws ConfigError unless every tolerance and grid override is positive.
    void validate() const;
};

}  // namespace cpqr
