#include "qnlo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qnlo {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

const std::set<std::string> kKnownObservables = {
    "negativity", "bloch", "coherence", "squeezing", "wigner", "wigner-conditioned",
    "wp",         "plateau"};

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + where + it.key() + "'");
    }
}

double get_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("field " + key + ": expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError("field " + key + ": expected an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError("field " + key + ": expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError("field " + key + ": expected a string");
    return v.get<std::string>();
}

}  // namespace

int RunConfig::resolved_samples() const {
    if (samples > 0) return samples;
    const double span = t_end_pi - t_start_pi;
    return static_cast<int>(std::lround(200.0 * span)) + 1;  // 400 per 2 pi
}

TimeGrid RunConfig::time_grid() const {
    return TimeGrid(t_start_pi * kPi, t_end_pi * kPi, resolved_samples());
}

bool RunConfig::wants(const std::string& observable) const {
    for (const auto& o : observables)
        if (o == observable) return true;
    return false;
}

std::string model_name(ModelKind m) {
    switch (m) {
        case ModelKind::Full: return "full";
        case ModelKind::LadderNumberState: return "ladder-ns";
        case ModelKind::LadderTwoPhonon: return "ladder-2ph";
        case ModelKind::Rwa: return "rwa";
        case ModelKind::Linear: return "linear";
    }
    return "full";
}

namespace {

ModelKind parse_model(const std::string& s) {
    if (s == "full") return ModelKind::Full;
    if (s == "ladder-ns") return ModelKind::LadderNumberState;
    if (s == "ladder-2ph") return ModelKind::LadderTwoPhonon;
    if (s == "rwa") return ModelKind::Rwa;
    if (s == "linear") return ModelKind::Linear;
    throw ConfigError("field model: unknown model '" + s +
                      "' (expected full|ladder-ns|ladder-2ph|rwa|linear)");
}

void validate(const RunConfig& c) {
    if (c.k < 0) throw ConfigError("field k: must be >= 0");
    if (c.delta < 0) throw ConfigError("field delta: must be >= 0");
    if (c.gamma < 0) throw ConfigError("field gamma: must be >= 0");
    if (c.n_max < 1) throw ConfigError("field n_max: must be >= 1");
    if (c.margin < 0) throw ConfigError("field margin: must be >= 0");
    if (c.n_max < c.margin + 1) throw ConfigError("field n_max: must be >= margin + 1");
    if (c.tail_tol <= 0) throw ConfigError("field tail_tol: must be positive");
    if (!(c.t_end_pi > c.t_start_pi))
        throw ConfigError("field t_end_pi: must exceed t_start_pi");
    if (c.samples != 0 && c.samples < 2)
        throw ConfigError("field samples: must be >= 2 (or 0 for automatic)");
    if (c.lindblad.rtol <= 0 || c.lindblad.atol <= 0)
        throw ConfigError("field lindblad: tolerances must be positive");
    if (c.plateau_window_pi <= 0) throw ConfigError("field plateau.window_pi: must be positive");
    if (c.plateau_threshold <= 0) throw ConfigError("field plateau.threshold: must be positive");
    if (c.wigner.grid.nx < 2 || c.wigner.grid.ny < 2)
        throw ConfigError("field wigner: grid needs at least 2x2 points");
    if (!(c.wigner.grid.x_max > c.wigner.grid.x_min) ||
        !(c.wigner.grid.y_max > c.wigner.grid.y_min))
        throw ConfigError("field wigner: grid bounds are inverted");
    for (const auto& o : c.observables) {
        if (!kKnownObservables.count(o))
            throw ConfigError("field observables: unknown observable '" + o + "'");
    }
    if (c.gamma > 0 && c.model == ModelKind::Linear)
        throw ConfigError("field gamma: the linear closed-form model has no open-system variant");
    if (c.label.empty()) throw ConfigError("field label: must not be empty");
}

}  // namespace

std::vector<std::string> physics_warnings(const RunConfig& c) {
    std::vector<std::string> w;
    const ScaledParams p = c.scaled();
    if (p.validity_warning()) {
        std::ostringstream os;
        os << "validity condition delta*<N> << 1 pre-violated: delta*(|alpha|+2k)^2 = "
           << c.delta * std::pow(std::abs(c.alpha) + 2.0 * c.k, 2.0) << " > 0.1";
        w.push_back(os.str());
    }
    const double a = std::abs(c.alpha);
    if (a * a + 6.0 * a > c.n_max) {
        w.push_back("initial coherent state will not fit the truncation (|alpha|^2 + 6|alpha| > n_max)");
    }
    if (c.model == ModelKind::Rwa && std::abs(c.alpha.imag()) > 0) {
        w.push_back("rwa model supports only real alpha and will fail at run time");
    }
    return w;
}

ParsedConfig parse_config(const std::string& text) {
    json doc;
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    static const std::set<std::string> kTop = {
        "k",       "delta",    "alpha",     "gamma",   "n_max",       "margin",
        "tail_tol", "t_start_pi", "t_end_pi", "samples", "model",     "observables",
        "wigner",  "lindblad", "plateau",   "label",   "format",      "emit_plots",
        "out_dir"};
    reject_unknown(doc, kTop, "");

    RunConfig c;
    c.k = get_number(doc, "k", c.k);
    c.delta = get_number(doc, "delta", c.delta);
    if (doc.contains("alpha")) {
        const auto& a = doc.at("alpha");
        if (a.is_number()) {
            c.alpha = cd(a.get<double>(), 0.0);
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            c.alpha = cd(a[0].get<double>(), a[1].get<double>());
        } else {
            throw ConfigError("field alpha: expected a number or [re, im]");
        }
    }
    c.gamma = get_number(doc, "gamma", c.gamma);
    c.n_max = get_int(doc, "n_max", c.n_max);
    c.margin = get_int(doc, "margin", c.margin);
    c.tail_tol = get_number(doc, "tail_tol", c.tail_tol);
    c.t_start_pi = get_number(doc, "t_start_pi", c.t_start_pi);
    c.t_end_pi = get_number(doc, "t_end_pi", c.t_end_pi);
    c.samples = get_int(doc, "samples", c.samples);
    c.model = parse_model(get_string(doc, "model", model_name(c.model)));

    if (doc.contains("observables")) {
        const auto& obs = doc.at("observables");
        if (!obs.is_array()) throw ConfigError("field observables: expected an array of strings");
        c.observables.clear();
        for (const auto& o : obs) {
            if (!o.is_string())
                throw ConfigError("field observables: expected an array of strings");
            c.observables.push_back(o.get<std::string>());
        }
    }

    if (doc.contains("wigner")) {
        const auto& w = doc.at("wigner");
        if (!w.is_object()) throw ConfigError("field wigner: expected an object");
        static const std::set<std::string> kWig = {"x_min", "x_max", "y_min", "y_max",
                                                   "nx",    "ny",    "times_pi", "convention"};
        reject_unknown(w, kWig, "wigner.");
        c.wigner.grid.x_min = get_number(w, "x_min", c.wigner.grid.x_min);
        c.wigner.grid.x_max = get_number(w, "x_max", c.wigner.grid.x_max);
        c.wigner.grid.y_min = get_number(w, "y_min", c.wigner.grid.y_min);
        c.wigner.grid.y_max = get_number(w, "y_max", c.wigner.grid.y_max);
        c.wigner.grid.nx = get_int(w, "nx", c.wigner.grid.nx);
        c.wigner.grid.ny = get_int(w, "ny", c.wigner.grid.ny);
        if (w.contains("times_pi")) {
            const auto& times = w.at("times_pi");
            if (!times.is_array())
                throw ConfigError("field wigner.times_pi: expected an array of numbers");
            c.wigner.times_pi.clear();
            for (const auto& tv : times) {
                if (!tv.is_number())
                    throw ConfigError("field wigner.times_pi: expected an array of numbers");
                c.wigner.times_pi.push_back(tv.get<double>());
            }
        }
        const std::string conv = get_string(w, "convention", "alpha-plane");
        if (conv == "alpha-plane") {
            c.wigner.convention = WignerConvention::AlphaPlane;
        } else if (conv == "quadrature") {
            c.wigner.convention = WignerConvention::Quadrature;
        } else {
            throw ConfigError("field wigner.convention: expected alpha-plane|quadrature");
        }
    }

    if (doc.contains("lindblad")) {
        const auto& l = doc.at("lindblad");
        if (!l.is_object()) throw ConfigError("field lindblad: expected an object");
        static const std::set<std::string> kLind = {"rtol", "atol", "initial_step"};
        reject_unknown(l, kLind, "lindblad.");
        c.lindblad.rtol = get_number(l, "rtol", c.lindblad.rtol);
        c.lindblad.atol = get_number(l, "atol", c.lindblad.atol);
        c.lindblad.initial_step = get_number(l, "initial_step", c.lindblad.initial_step);
    }

    if (doc.contains("plateau")) {
        const auto& p = doc.at("plateau");
        if (!p.is_object()) throw ConfigError("field plateau: expected an object");
        static const std::set<std::string> kPlat = {"window_pi", "threshold"};
        reject_unknown(p, kPlat, "plateau.");
        c.plateau_window_pi = get_number(p, "window_pi", c.plateau_window_pi);
        c.plateau_threshold = get_number(p, "threshold", c.plateau_threshold);
    }

    c.label = get_string(doc, "label", c.label);
    const std::string fmt = get_string(doc, "format", "csv");
    if (fmt == "csv") {
        c.format = OutputFormat::Csv;
    } else if (fmt == "json") {
        c.format = OutputFormat::Json;
    } else {
        throw ConfigError("field format: expected csv|json");
    }
    c.emit_plots = get_bool(doc, "emit_plots", c.emit_plots);
    c.out_dir = get_string(doc, "out_dir", c.out_dir);

    validate(c);
    return {c, physics_warnings(c)};
}

ParsedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json doc;
    doc["k"] = c.k;
    doc["delta"] = c.delta;
    if (c.alpha.imag() == 0.0) {
        doc["alpha"] = c.alpha.real();
    } else {
        doc["alpha"] = {c.alpha.real(), c.alpha.imag()};
    }
    doc["gamma"] = c.gamma;
    doc["n_max"] = c.n_max;
    doc["margin"] = c.margin;
    doc["tail_tol"] = c.tail_tol;
    doc["t_start_pi"] = c.t_start_pi;
    doc["t_end_pi"] = c.t_end_pi;
    doc["samples"] = c.samples;
    doc["model"] = model_name(c.model);
    doc["observables"] = c.observables;
    doc["wigner"] = {{"x_min", c.wigner.grid.x_min},
                     {"x_max", c.wigner.grid.x_max},
                     {"y_min", c.wigner.grid.y_min},
                     {"y_max", c.wigner.grid.y_max},
                     {"nx", c.wigner.grid.nx},
                     {"ny", c.wigner.grid.ny},
                     {"times_pi", c.wigner.times_pi},
                     {"convention", c.wigner.convention == WignerConvention::AlphaPlane
                                        ? "alpha-plane"
                                        : "quadrature"}};
    doc["lindblad"] = {{"rtol", c.lindblad.rtol},
                       {"atol", c.lindblad.atol},
                       {"initial_step", c.lindblad.initial_step}};
    doc["plateau"] = {{"window_pi", c.plateau_window_pi}, {"threshold", c.plateau_threshold}};
    doc["label"] = c.label;
    doc["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
    doc["emit_plots"] = c.emit_plots;
    doc["out_dir"] = c.out_dir;
    return doc.dump(2) + "\n";
}

}  // namespace qnlo
