#include "qnlo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "qnlo/analytic.hpp"
#include "qnlo/output.hpp"

namespace qnlo {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Accumulates the requested per-sample observables into TimeSeries columns.
class Collector {
public:
    Collector(const RunConfig& cfg, int n_samples) : cfg_(cfg) {
        auto add = [&](const char* name) {
            TimeSeries s;
            s.name = name;
            s.t.reserve(n_samples);
            s.v.reserve(n_samples);
            series_.push_back(std::move(s));
            return series_.size() - 1;
        };
        if (cfg.wants("negativity") || cfg.wants("plateau")) {
            i_neg_raw_ = add("negativity_raw");
            i_neg_norm_ = add("negativity_norm");
        }
        if (cfg.wants("bloch")) {
            i_sx_ = add("sx");
            i_sy_ = add("sy");
            i_sz_ = add("sz");
        }
        if (cfg.wants("coherence")) i_coh_ = add("qubit_coherence");
        if (cfg.wants("squeezing")) {
            i_phi_ = add("phi_star");
            i_vx_ = add("var_x_norm");
            i_vy_ = add("var_y_norm");
            i_up_ = add("uncertainty_product_norm");
        }
    }

    template <typename State>
    void collect(double t, const State& state) {
        const double t_pi = t / kPi;
        for (auto& s : series_) s.t.push_back(t_pi);
        if (i_neg_raw_ >= 0) {
            const double raw = negativity(state);
            series_[i_neg_raw_].v.push_back(raw);
            series_[i_neg_norm_].v.push_back(2.0 * raw);
        }
        if (i_sx_ >= 0 || i_coh_ >= 0) {
            const CMat q = reduce_qubit(state);
            if (i_sx_ >= 0) {
                const auto b = bloch_vector(q);
                series_[i_sx_].v.push_back(b[0]);
                series_[i_sy_].v.push_back(b[1]);
                series_[i_sz_].v.push_back(b[2]);
            }
            if (i_coh_ >= 0) series_[i_coh_].v.push_back(std::abs(q(0, 1)));
        }
        if (i_phi_ >= 0) {
            const auto rec = squeezing_scan(reduce_osc(state), t);
            series_[i_phi_].v.push_back(rec.phi_star);
            series_[i_vx_].v.push_back(rec.var_x_norm);
            series_[i_vy_].v.push_back(rec.var_y_norm);
            series_[i_up_].v.push_back(rec.uncertainty_product_norm);
        }
    }

    std::vector<TimeSeries> take() { return std::move(series_); }
    const TimeSeries* find(const std::string& name) const {
        for (const auto& s : series_)
            if (s.name == name) return &s;
        return nullptr;
    }

private:
    const RunConfig& cfg_;
    std::vector<TimeSeries> series_;
    int i_neg_raw_ = -1, i_neg_norm_ = -1;
    int i_sx_ = -1, i_sy_ = -1, i_sz_ = -1;
    int i_coh_ = -1;
    int i_phi_ = -1, i_vx_ = -1, i_vy_ = -1, i_up_ = -1;
};

template <typename State>
void add_wigner_snapshots(ResultBundle& bundle, const RunConfig& cfg, double t_pi,
                          const State& state) {
    const bool plain = cfg.wants("wigner");
    const bool conditioned = cfg.wants("wigner-conditioned");
    const bool wants_wp = cfg.wants("wp");
    if (!plain && !conditioned && !wants_wp) return;

    if (plain) {
        bundle.grids.push_back(
            {"wigner_osc", t_pi, wigner(reduce_osc(state), cfg.wigner.grid, cfg.wigner.convention)});
    }
    if (conditioned || wants_wp) {
        const auto rho_up = conditioned_osc(state, QubitBranch::Up);
        const auto rho_down = conditioned_osc(state, QubitBranch::Down);
        WignerGrid w_up = wigner(rho_up, cfg.wigner.grid, cfg.wigner.convention);
        WignerGrid w_down = wigner(rho_down, cfg.wigner.grid, cfg.wigner.convention);
        if (wants_wp) {
            bundle.wp.push_back(
                {t_pi, wigner_overlap(w_up, w_down), wigner_overlap_exact(rho_up, rho_down)});
        }
        if (conditioned) {
            WignerGrid prod = w_up;
            for (std::size_t i = 0; i < prod.values.size(); ++i)
                prod.values[i] *= w_down.values[i];
            bundle.grids.push_back({"wigner_up", t_pi, std::move(w_up)});
            bundle.grids.push_back({"wigner_down", t_pi, std::move(w_down)});
            bundle.grids.push_back({"wigner_prod", t_pi, std::move(prod)});
        }
    }
}

}  // namespace

ResultBundle run_experiment(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    ResultBundle bundle;
    bundle.config = cfg;
    bundle.warnings = physics_warnings(cfg);

    const FockTruncation trunc = cfg.truncation();
    const ScaledParams params = cfg.scaled();
    const TimeGrid grid = cfg.time_grid();

    HybridKet psi0 = initial_state(cfg.alpha, trunc);
    {
        const auto rep = check_truncation(psi0, trunc);
        if (!rep.pass) {
            throw TruncationBreached("initial state fails certification (guard population " +
                                     std::to_string(rep.guard_population) + "); enlarge n_max");
        }
    }

    Collector col(cfg, grid.n_samples);

    const bool closed = cfg.gamma == 0.0;
    if (closed) {
        // random-access propagator per model
        std::function<HybridKet(double)> state_at;
        bool rwa_warned = false;
        switch (cfg.model) {
            case ModelKind::Linear:
                state_at = [&](double t) { return linear_state(params, t, trunc); };
                break;
            case ModelKind::Rwa:
                state_at = [&](double t) {
                    bool warn = false;
                    HybridKet psi = rwa_state(params, t, trunc, &warn);
                    if (warn && !rwa_warned) {
                        rwa_warned = true;
                        bundle.warnings.push_back(
                            "rwa_state: neglected {k delta, ...} terms may matter at this horizon "
                            "(k*delta*t*n_max^2 > 0.01)");
                    }
                    return psi;
                };
                break;
            default: {
                OperatorMatrix h = cfg.model == ModelKind::Full
                                       ? build_full_hamiltonian(params, trunc)
                                       : build_ladder_hamiltonian(
                                             params,
                                             cfg.model == ModelKind::LadderNumberState
                                                 ? PhononLadderLevel::NumberStateOnly
                                                 : PhononLadderLevel::UpToTwoPhonon,
                                             trunc);
                auto prop = std::make_shared<UnitaryPropagator>(h, psi0);
                state_at = [prop](double t) { return prop->state_at(t); };
                break;
            }
        }

        for (int i = 0; i < grid.n_samples; ++i) {
            const double t = grid.time_at(i);
            const HybridKet psi = state_at(t);
            const auto rep = check_truncation(psi, trunc);
            SampleDiagnostics diag;
            diag.t = t;
            diag.norm_drift = std::abs(psi.norm() - 1.0);
            diag.guard_population = rep.guard_population;
            double nm = 0.0;
            for (int n = 0; n <= trunc.n_max; ++n)
                nm += n * (std::norm(psi.up()[n]) + std::norm(psi.down()[n]));
            diag.n_mean = nm;
            bundle.diagnostics.push_back(diag);
            if (!rep.pass)
                throw TruncationBreached("guard-band population exceeded tail_tol at t=" +
                                         std::to_string(t) + "; enlarge n_max");
            col.collect(t, psi);
        }
        for (double t_pi : cfg.wigner.times_pi) {
            add_wigner_snapshots(bundle, cfg, t_pi, state_at(t_pi * kPi));
        }
    } else {
        OperatorMatrix h = [&] {
            switch (cfg.model) {
                case ModelKind::Full: return build_full_hamiltonian(params, trunc);
                case ModelKind::LadderNumberState:
                    return build_ladder_hamiltonian(params, PhononLadderLevel::NumberStateOnly,
                                                    trunc);
                case ModelKind::LadderTwoPhonon:
                    return build_ladder_hamiltonian(params, PhononLadderLevel::UpToTwoPhonon,
                                                    trunc);
                case ModelKind::Rwa: return build_rwa_hamiltonian(params, trunc);
                default: throw ConfigError("open-system runs need a Hamiltonian model");
            }
        }();
        const LindbladGenerator gen(params, h);
        const HybridDensity rho0 = HybridDensity::from_ket(psi0);

        // map snapshot times to nearest sample indices
        std::vector<std::pair<int, double>> snap;  // sample index -> t_pi
        for (double t_pi : cfg.wigner.times_pi) {
            const double t = t_pi * kPi;
            int idx = static_cast<int>(std::lround((t - grid.t_start) / grid.dt()));
            idx = std::clamp(idx, 0, grid.n_samples - 1);
            snap.emplace_back(idx, t_pi);
        }

        const DensityObserver obs = [&](int i, double t, const HybridDensity& rho) {
            col.collect(t, rho);
            for (const auto& [idx, t_pi] : snap) {
                if (idx == i) add_wigner_snapshots(bundle, cfg, t_pi, rho);
            }
        };
        EvolutionResult res =
            evolve_lindblad(gen, rho0, grid, cfg.lindblad, trunc, obs, /*keep_stride=*/0);
        bundle.diagnostics = std::move(res.diagnostics);
    }

    bundle.series = col.take();

    if (cfg.wants("plateau")) {
        const TimeSeries* neg = nullptr;
        for (const auto& s : bundle.series)
            if (s.name == "negativity_norm") neg = &s;
        if (neg && neg->t.size() >= 100) {
            // detector works in t (not t/pi): rebuild with raw time
            TimeSeries raw = *neg;
            for (auto& tv : raw.t) tv *= kPi;
            bundle.plateau =
                plateau_detect(raw, cfg.plateau_threshold, cfg.plateau_window_pi * kPi);
            bundle.plateau.t_lo /= kPi;
            bundle.plateau.t_hi /= kPi;
            bundle.plateau.width /= kPi;
            bundle.plateau_computed = true;
        }
    }

    {
        EvolutionResult tmp;
        tmp.diagnostics = bundle.diagnostics;
        bundle.validity = validity_monitor(tmp, params);
    }

    bundle.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return bundle;
}

std::string resolve_out_dir(const RunConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("QNLO_OUT_DIR")) {
        if (*env) return env;
    }
    return "qnlo-out";
}

std::vector<std::string> write_bundle(const ResultBundle& bundle, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const RunConfig& cfg = bundle.config;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto path_of = [&](const std::string& stem) {
        return (fs::path(out_dir) / (cfg.label + "__" + stem)).string();
    };

    if (cfg.format == OutputFormat::Json) {
        const std::string p = (fs::path(out_dir) / (cfg.label + ".json")).string();
        output::write_bundle_json(p, bundle);
        written.push_back(p);
    } else {
        auto series_by_prefix = [&](std::initializer_list<const char*> names) {
            std::vector<const TimeSeries*> cols;
            for (const char* n : names)
                for (const auto& s : bundle.series)
                    if (s.name == n) cols.push_back(&s);
            return cols;
        };
        const auto neg = series_by_prefix({"negativity_raw", "negativity_norm"});
        if (!neg.empty()) {
            const std::string p = path_of("negativity.csv");
            output::write_series_csv(p, cfg, neg);
            written.push_back(p);
        }
        const auto bloch = series_by_prefix({"sx", "sy", "sz"});
        if (!bloch.empty()) {
            const std::string p = path_of("bloch.csv");
            output::write_series_csv(p, cfg, bloch);
            written.push_back(p);
        }
        const auto coh = series_by_prefix({"qubit_coherence"});
        if (!coh.empty()) {
            const std::string p = path_of("coherence.csv");
            output::write_series_csv(p, cfg, coh);
            written.push_back(p);
        }
        const auto sq = series_by_prefix(
            {"phi_star", "var_x_norm", "var_y_norm", "uncertainty_product_norm"});
        if (!sq.empty()) {
            const std::string p = path_of("squeezing.csv");
            output::write_series_csv(p, cfg, sq);
            written.push_back(p);
        }
        for (const auto& g : bundle.grids) {
            std::ostringstream stem;
            stem << g.name << "_t" << output::format_double(g.t_pi) << "pi.csv";
            std::string s = stem.str();
            for (auto& ch : s)
                if (ch == '.') ch = 'p';
            // keep the ".csv" suffix intact
            s.replace(s.size() - 4, 4, ".csv");
            const std::string p = path_of(s);
            output::write_grid_csv(p, cfg, g.grid, g.t_pi);
            written.push_back(p);
        }
        if (!bundle.wp.empty()) {
            TimeSeries wg, we;
            wg.name = "wp_grid";
            we.name = "wp_exact";
            for (const auto& w : bundle.wp) {
                wg.t.push_back(w.t_pi);
                wg.v.push_back(w.grid_value);
                we.t.push_back(w.t_pi);
                we.v.push_back(w.exact_value);
            }
            const std::string p = path_of("wp.csv");
            output::write_series_csv(p, cfg, {&wg, &we});
            written.push_back(p);
        }
        if (bundle.plateau_computed) {
            const std::string p = path_of("plateau.csv");
            std::ofstream out(p, std::ios::binary);
            if (!out) throw Error("cannot write file: " + p);
            for (const auto& line : output::config_metadata(cfg)) out << "# " << line << "\n";
            out << "found,t_lo_pi,t_hi_pi,width_pi,spread\n";
            out << (bundle.plateau.found ? 1 : 0) << "," << output::format_double(bundle.plateau.t_lo)
                << "," << output::format_double(bundle.plateau.t_hi) << ","
                << output::format_double(bundle.plateau.width) << ","
                << output::format_double(bundle.plateau.max_window_spread) << "\n";
            written.push_back(p);
        }
        {
            // diagnostics always written for csv runs
            TimeSeries drift, guard, nmean;
            drift.name = "norm_drift";
            guard.name = "guard_population";
            nmean.name = "n_mean";
            for (const auto& d : bundle.diagnostics) {
                drift.t.push_back(d.t / kPi);
                drift.v.push_back(d.norm_drift);
                guard.v.push_back(d.guard_population);
                nmean.v.push_back(d.n_mean);
            }
            guard.t = drift.t;
            nmean.t = drift.t;
            const std::string p = path_of("diagnostics.csv");
            output::write_series_csv(p, cfg, {&drift, &guard, &nmean});
            written.push_back(p);
        }
    }

    if (cfg.emit_plots) {
        for (const auto& stem :
             {std::string("negativity"), std::string("bloch"), std::string("squeezing")}) {
            std::vector<const TimeSeries*> cols;
            for (const auto& s : bundle.series) {
                if ((stem == "negativity" && s.name.rfind("negativity", 0) == 0) ||
                    (stem == "bloch" && (s.name == "sx" || s.name == "sy" || s.name == "sz")) ||
                    (stem == "squeezing" &&
                     (s.name.rfind("var_", 0) == 0 || s.name == "uncertainty_product_norm")))
                    cols.push_back(&s);
            }
            if (!cols.empty()) {
                const std::string p = path_of(stem + ".svg");
                output::write_line_plot_svg(p, cfg.label + " " + stem, cols);
                written.push_back(p);
            }
        }
        for (const auto& g : bundle.grids) {
            std::ostringstream stem;
            stem << g.name << "_t" << output::format_double(g.t_pi) << "pi";
            std::string s = stem.str();
            for (auto& ch : s)
                if (ch == '.') ch = 'p';
            const std::string p = path_of(s + ".svg");
            output::write_heatmap_svg(p, cfg.label + " " + s, g.grid);
            written.push_back(p);
        }
    }
    return written;
}

}  // namespace qnlo
