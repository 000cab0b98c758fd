#include <cstdio>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnlo/presets.hpp"
#include "qnlo/runner.hpp"

namespace {

struct Overrides {
    std::string out_dir;
    int n_max = -1;
    double t_end_pi = -1.0;
    int samples = -1;
    std::string format;
    bool emit_plots = false;
};

void add_override_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--out", ov.out_dir, "output directory (default: QNLO_OUT_DIR or ./qnlo-out)");
    cmd->add_option("--n-max", ov.n_max, "override Fock truncation n_max");
    cmd->add_option("--t-end-pi", ov.t_end_pi, "override horizon, in units of pi");
    cmd->add_option("--samples", ov.samples, "override sample count (0 = automatic)");
    cmd->add_option("--format", ov.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--emit-plots", ov.emit_plots, "also write standalone SVG plots");
}

qnlo::RunConfig apply_overrides(qnlo::RunConfig cfg, const Overrides& ov) {
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (ov.n_max >= 0) cfg.n_max = ov.n_max;
    if (ov.t_end_pi > 0) {
        cfg.t_end_pi = ov.t_end_pi;
        if (ov.samples < 0) cfg.samples = 0;  // rescale sampling with the new horizon
    }
    if (ov.samples >= 0) cfg.samples = ov.samples;
    if (ov.format == "csv") cfg.format = qnlo::OutputFormat::Csv;
    if (ov.format == "json") cfg.format = qnlo::OutputFormat::Json;
    if (ov.emit_plots) cfg.emit_plots = true;
    // re-validate through the canonical parser
    return qnlo::parse_config(qnlo::serialize_config(cfg)).config;
}

void report_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run_one(const qnlo::RunConfig& cfg) {
    qnlo::ResultBundle bundle = qnlo::run_experiment(cfg);
    report_warnings(bundle.warnings);
    const auto files = qnlo::write_bundle(bundle, qnlo::resolve_out_dir(cfg));
    std::cerr << cfg.label << ": done in " << bundle.wall_seconds << " s\n";
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

int run_preset(const qnlo::Preset& preset, const Overrides& ov) {
    std::vector<qnlo::RunConfig> cfgs;
    for (const auto& run : preset.runs) cfgs.push_back(apply_overrides(run, ov));

    // independent runs; keep at most two in flight (results are written
    // in order afterwards, so the output is deterministic)
    std::vector<std::future<qnlo::ResultBundle>> futures(cfgs.size());
    std::size_t next = 0, in_flight = 0, done = 0;
    std::vector<qnlo::ResultBundle> bundles(cfgs.size());
    std::vector<bool> ready(cfgs.size(), false);
    while (done < cfgs.size()) {
        while (next < cfgs.size() && in_flight < 2) {
            futures[next] = std::async(std::launch::async,
                                       [&cfgs, next] { return qnlo::run_experiment(cfgs[next]); });
            ++next;
            ++in_flight;
        }
        for (std::size_t i = 0; i < next; ++i) {
            if (!ready[i] && futures[i].valid()) {
                bundles[i] = futures[i].get();  // blocks on the oldest pending run
                futures[i] = {};
                ready[i] = true;
                --in_flight;
                ++done;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        report_warnings(bundles[i].warnings);
        const auto files = qnlo::write_bundle(bundles[i], qnlo::resolve_out_dir(cfgs[i]));
        std::cerr << cfgs[i].label << ": done in " << bundles[i].wall_seconds << " s\n";
        for (const auto& f : files) std::cout << f << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qnlo: qubit + quartic nonlinear oscillator dynamics"};
    app.require_subcommand(1);

    std::string config_path, preset_name;
    Overrides ov;

    auto* cmd_run = app.add_subcommand("run", "run a JSON config file");
    cmd_run->add_option("config", config_path, "path to the config file")->required();
    add_override_options(cmd_run, ov);

    auto* cmd_preset = app.add_subcommand("preset", "run a named figure preset");
    cmd_preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
    add_override_options(cmd_preset, ov);

    auto* cmd_list = app.add_subcommand("list-presets", "list available presets");

    auto* cmd_validate = app.add_subcommand("validate", "validate a config file");
    cmd_validate->add_option("config", config_path, "path to the config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_list->parsed()) {
            for (const auto& p : qnlo::preset_registry()) {
                std::printf("%-8s %zu run(s)  %s\n", p.name.c_str(), p.runs.size(),
                            p.description.c_str());
            }
            return 0;
        }
        if (cmd_validate->parsed()) {
            const auto parsed = qnlo::load_config_file(config_path);
            report_warnings(parsed.warnings);
            std::cout << qnlo::serialize_config(parsed.config);
            return 0;
        }
        if (cmd_run->parsed()) {
            auto parsed = qnlo::load_config_file(config_path);
            report_warnings(parsed.warnings);
            return run_one(apply_overrides(parsed.config, ov));
        }
        if (cmd_preset->parsed()) {
            return run_preset(qnlo::find_preset(preset_name), ov);
        }
    } catch (const qnlo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qnlo::TruncationBreached& e) {
        std::cerr << "truncation breached: " << e.what() << "\n";
        return 3;
    } catch (const qnlo::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
