#pragma once

#include "floq/observables.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace floq {

/// Fixed 12-significant-digit formatting; identical configs therefore
/// produce byte-identical files.
std::string fmt12(double v);

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series);

void write_map_csv(const std::filesystem::path& path, const SusceptibilityMap& map);

void write_peaks_json(const std::filesystem::path& path, const SusceptibilityMap& map,
                      const std::vector<Peak>& peaks);

/// Residual ladder from the averaged-Hamiltonian check: one row per J0.
struct MagnusCheckRow {
    double exchange;
    double residual;
    bool effective_empty;
};
void write_magnus_csv(const std::filesystem::path& path, const std::vector<MagnusCheckRow>& rows);

/// Self-contained SVG heatmap (no external assets); values are mapped with
/// a monotone dark-to-bright ramp.
void svg_heatmap(const std::filesystem::path& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& values /* [x][y] row-major */);

struct LineSeries {
    std::string name;
    std::vector<double> ys;
};

/// Self-contained SVG multi-line plot with a shared x axis.
void svg_lines(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<double>& xs, const std::vector<LineSeries>& series);

} // namespace floq
