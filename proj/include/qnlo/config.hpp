#pragma once

#include <string>
#include <vector>

#include "qnlo/evolve.hpp"
#include "qnlo/hamiltonians.hpp"
#include "qnlo/observables.hpp"

namespace qnlo {

enum class ModelKind { Full, LadderNumberState, LadderTwoPhonon, Rwa, Linear };
enum class OutputFormat { Csv, Json };

struct WignerConfig {
    WignerGridSpec grid;
    std::vector<double> times_pi;  // snapshot times, units of pi
    WignerConvention convention = WignerConvention::AlphaPlane;
};

/// One fully-specified, deterministic run. Every field has a documented
/// default; parse_config rejects unknown keys.
struct RunConfig {
    double k = 0.5;
    double delta = 0.01;
    cd alpha = cd(2.0, 0.0);
    double gamma = 0.0;

    int n_max = 80;
    int margin = 5;
    double tail_tol = 1e-9;

    double t_start_pi = 0.0;
    double t_end_pi = 2.0;
    int samples = 0;  // 0: auto, 400 per 2 pi interval (+ endpoint)

    ModelKind model = ModelKind::Full;
    std::vector<std::string> observables = {"negativity"};

    WignerConfig wigner;
    StepControl lindblad;
    double plateau_window_pi = 2.0;
    double plateau_threshold = 0.05;

    std::string label = "run";
    OutputFormat format = OutputFormat::Csv;
    bool emit_plots = false;
    std::string out_dir;  // empty: QNLO_OUT_DIR env var, then ./qnlo-out

    ScaledParams scaled() const { return {k, delta, alpha, gamma}; }
    FockTruncation truncation() const { return FockTruncation(n_max, tail_tol, margin); }
    int resolved_samples() const;
    TimeGrid time_grid() const;
    bool wants(const std::string& observable) const;
};

struct ParsedConfig {
    RunConfig config;
    std::vector<std::string> warnings;
};

/// Parse a JSON config (an empty document means all defaults). Throws
/// ConfigError naming the offending field.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config_file(const std::string& path);

/// Canonical JSON form; serialize(parse(x)) is idempotent.
std::string serialize_config(const RunConfig& c);

/// Physics sanity warnings (validity-condition pre-check and friends).
std::vector<std::string> physics_warnings(const RunConfig& c);

std::string model_name(ModelKind m);

}  // namespace qnlo
