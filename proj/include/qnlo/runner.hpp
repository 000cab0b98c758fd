#pragma once

#include <string>
#include <vector>

#include "qnlo/config.hpp"
#include "qnlo/evolve.hpp"
#include "qnlo/observables.hpp"

namespace qnlo {

struct GridEntry {
    std::string name;  // wigner_osc | wigner_up | wigner_down | wigner_prod
    double t_pi;
    WignerGrid grid;
};

struct WpEntry {
    double t_pi;
    double grid_value;   // Riemann sum of W_up * W_down
    double exact_value;  // Tr(rho_up rho_down) / pi
};

/// Everything a run produced. Time axes are in units of pi throughout (the
/// figure convention). wall_seconds is runtime metadata and is never written
/// into data files, which keeps re-runs byte-identical.
struct ResultBundle {
    RunConfig config;
    std::vector<std::string> warnings;
    std::vector<TimeSeries> series;
    std::vector<GridEntry> grids;
    std::vector<WpEntry> wp;
    bool plateau_computed = false;
    PlateauReport plateau;
    ValidityReport validity{0.0, 0.1, true};
    std::vector<SampleDiagnostics> diagnostics;
    double wall_seconds = 0.0;
};

/// Deterministic compute phase: no files are touched.
ResultBundle run_experiment(const RunConfig& cfg);

/// Output-directory resolution order: config.out_dir, then the QNLO_OUT_DIR
/// environment variable, then ./qnlo-out.
std::string resolve_out_dir(const RunConfig& cfg);

/// Writes CSV (or a single JSON document) plus optional SVG plots under
/// <out_dir>/. Returns the paths written.
std::vector<std::string> write_bundle(const ResultBundle& bundle, const std::string& out_dir);

}  // namespace qnlo
