#include "qnlo/presets.hpp"

#include <sstream>

namespace qnlo {

namespace {

RunConfig base_config() {
    RunConfig c;
    c.alpha = cd(2.0, 0.0);
    c.n_max = 80;
    c.margin = 5;
    c.tail_tol = 1e-9;
    return c;
}

std::string k_tag(double k) {
    std::ostringstream os;
    os << "k" << k;
    std::string s = os.str();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

std::vector<Preset> build_registry() {
    std::vector<Preset> reg;

    {
        Preset p;
        p.name = "fig1";
        p.description =
            "Negativity over one cycle without nonlinearity: delta=0, alpha=2, "
            "k in {0.1, 0.25, 0.5}, t in [0, 2pi], full numerical model, n_max=80.";
        for (double k : {0.1, 0.25, 0.5}) {
            RunConfig c = base_config();
            c.k = k;
            c.delta = 0.0;
            c.t_end_pi = 2.0;
            c.model = ModelKind::Full;
            c.observables = {"negativity"};
            c.label = "fig1_" + k_tag(k);
            p.runs.push_back(c);
        }
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig2";
        p.description =
            "Bloch-sphere top view of the reduced qubit over one cycle: k=0.5, alpha=2, "
            "delta=0, closed-form linear model, t in [0, 2pi].";
        RunConfig c = base_config();
        c.k = 0.5;
        c.delta = 0.0;
        c.model = ModelKind::Linear;
        c.t_end_pi = 2.0;
        c.observables = {"bloch", "coherence"};
        c.label = "fig2";
        p.runs.push_back(c);
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig3";
        p.description =
            "Wigner snapshots of the reduced oscillator over one cycle: k=0.5, alpha=2, "
            "delta=0, linear model, t/pi in {0, 0.5, 1, 1.5, 2}, alpha-plane grid "
            "[-4.5, 4.5]^2 with 121 points per axis (choices of grid and times are ours).";
        RunConfig c = base_config();
        c.k = 0.5;
        c.delta = 0.0;
        c.model = ModelKind::Linear;
        c.t_end_pi = 2.0;
        c.observables = {"negativity", "wigner"};
        c.wigner.times_pi = {0.0, 0.5, 1.0, 1.5, 2.0};
        c.label = "fig3";
        p.runs.push_back(c);
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig4a";
        p.description =
            "Weak-coupling negativity, short times: k=1/100, delta=1/1000, alpha=2, "
            "t in [0, 8pi]; curves: RWA analytic, full numerical, and the delta=0 case.";
        for (const char* which : {"rwa", "full", "linear"}) {
            RunConfig c = base_config();
            c.k = 0.01;
            c.delta = std::string(which) == "linear" ? 0.0 : 0.001;
            c.t_end_pi = 8.0;
            c.model = std::string(which) == "rwa"     ? ModelKind::Rwa
                      : std::string(which) == "full"  ? ModelKind::Full
                                                      : ModelKind::Linear;
            c.observables = {"negativity"};
            c.label = std::string("fig4a_") + which;
            p.runs.push_back(c);
        }
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig4b";
        p.description =
            "Weak-coupling negativity, long times: k=1/100, delta=1/1000, alpha=2, "
            "t in [0, 100pi] (horizon ours; captures the ~30pi-70pi plateau), "
            "100 samples per 2pi, RWA analytic vs full numerical.";
        for (const char* which : {"rwa", "full"}) {
            RunConfig c = base_config();
            c.k = 0.01;
            c.delta = 0.001;
            c.t_end_pi = 100.0;
            c.samples = 5001;
            c.model = std::string(which) == "rwa" ? ModelKind::Rwa : ModelKind::Full;
            c.observables = {"negativity", "plateau"};
            c.label = std::string("fig4b_") + which;
            p.runs.push_back(c);
        }
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig5";
        p.description =
            "Quadrature squeezing in the weak-coupling regime over the first cycle: "
            "k=1/100, delta=1/1000, alpha=2, full numerical model; variances normalized "
            "to the coherent baseline 1/4.";
        RunConfig c = base_config();
        c.k = 0.01;
        c.delta = 0.001;
        c.t_end_pi = 2.0;
        c.model = ModelKind::Full;
        c.observables = {"squeezing"};
        c.label = "fig5";
        p.runs.push_back(c);
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig6";
        p.description =
            "Strong-coupling negativity: k=0.5, alpha=2, delta in {1/100, 1/1000}, "
            "t in [0, 14pi] (ours); subplot data: delta=1/100 with the phonon-ladder "
            "Hamiltonians (number-state only, up to two-phonon, full).";
        for (double delta : {0.01, 0.001}) {
            RunConfig c = base_config();
            c.k = 0.5;
            c.delta = delta;
            c.t_end_pi = 14.0;
            c.model = ModelKind::Full;
            c.observables = {"negativity", "plateau"};
            c.label = delta == 0.01 ? "fig6_full_d0p01" : "fig6_full_d0p001";
            p.runs.push_back(c);
        }
        for (const char* lvl : {"ladder-ns", "ladder-2ph"}) {
            RunConfig c = base_config();
            c.k = 0.5;
            c.delta = 0.01;
            c.t_end_pi = 14.0;
            c.model = std::string(lvl) == "ladder-ns" ? ModelKind::LadderNumberState
                                                      : ModelKind::LadderTwoPhonon;
            c.observables = {"negativity", "plateau"};
            c.label = std::string("fig6_") + (std::string(lvl) == "ladder-ns" ? "ns" : "2ph") +
                      "_d0p01";
            p.runs.push_back(c);
        }
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig7";
        p.description =
            "Conditioned Wigner functions and their overlap w_p: k=0.5, delta=1/100, "
            "alpha=2, t/pi in {2, 4, 6, 10, 15}; branches kept unnormalized (trace 1/2); "
            "alpha-plane grid [-4.5, 4.5]^2, 121 points per axis (grid ours).";
        RunConfig c = base_config();
        c.k = 0.5;
        c.delta = 0.01;
        c.t_end_pi = 15.0;
        c.samples = 1501;
        c.model = ModelKind::Full;
        c.observables = {"negativity", "wigner-conditioned", "wp"};
        c.wigner.times_pi = {2.0, 4.0, 6.0, 10.0, 15.0};
        c.label = "fig7";
        p.runs.push_back(c);
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig8";
        p.description =
            "Bloch-sphere top view with nonlinearity, two cycles: k=0.5, alpha=2, "
            "t in [0, 4pi], full model; delta in {1/100, 1/1000} (the caption omits "
            "delta; both strong-coupling values are emitted).";
        for (double delta : {0.01, 0.001}) {
            RunConfig c = base_config();
            c.k = 0.5;
            c.delta = delta;
            c.t_end_pi = 4.0;
            c.model = ModelKind::Full;
            c.observables = {"bloch", "coherence"};
            c.label = delta == 0.01 ? "fig8_d0p01" : "fig8_d0p001";
            p.runs.push_back(c);
        }
        reg.push_back(p);
    }
    {
        Preset p;
        p.name = "fig9";
        p.description =
            "Open-system negativity: k=0.5, alpha=2, delta in {1/100, 1/1000}, "
            "gamma in {0, 0.001, 0.01} (gamma values ours; the caption gives none), "
            "t in [0, 10pi], 200 samples per 2pi. gamma=0 runs use the exact unitary "
            "propagator.";
        for (double delta : {0.01, 0.001}) {
            for (double gamma : {0.0, 0.001, 0.01}) {
                RunConfig c = base_config();
                c.k = 0.5;
                c.delta = delta;
                c.gamma = gamma;
                c.t_end_pi = 10.0;
                c.samples = 1001;
                c.model = ModelKind::Full;
                c.observables = {"negativity", "plateau"};
                std::ostringstream label;
                label << "fig9_" << (delta == 0.01 ? "d0p01" : "d0p001") << "_g" << gamma;
                std::string ls = label.str();
                for (auto& ch : ls)
                    if (ch == '.') ch = 'p';
                c.label = ls;
                p.runs.push_back(c);
            }
        }
        reg.push_back(p);
    }

    return reg;
}

}  // namespace

const std::vector<Preset>& preset_registry() {
    static const std::vector<Preset> reg = build_registry();
    return reg;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : preset_registry()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset '" + name + "' (see `qnlo list-presets`)");
}

}  // namespace qnlo
