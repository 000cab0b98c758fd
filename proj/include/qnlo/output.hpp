#pragma once

#include <string>
#include <vector>

#include "qnlo/observables.hpp"
#include "qnlo/runner.hpp"

namespace qnlo::output {

inline constexpr const char* kVersion = "qnlo 0.1.0";

/// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

/// `# key=value` metadata lines echoing the run configuration.
std::vector<std::string> config_metadata(const RunConfig& cfg);

void write_series_csv(const std::string& path, const RunConfig& cfg,
                      const std::vector<const TimeSeries*>& columns);
void write_grid_csv(const std::string& path, const RunConfig& cfg, const WignerGrid& grid,
                    double t_pi);
void write_bundle_json(const std::string& path, const ResultBundle& bundle);

void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::vector<const TimeSeries*>& curves);
void write_heatmap_svg(const std::string& path, const std::string& title,
                       const WignerGrid& grid);

}  // namespace qnlo::output
