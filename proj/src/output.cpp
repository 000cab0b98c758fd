#include "qnlo/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qnlo::output {

namespace {

void require_stream(const std::ofstream& out, const std::string& path) {
    if (!out) throw Error("cannot write file: " + path);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[64];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

std::vector<std::string> config_metadata(const RunConfig& cfg) {
    std::vector<std::string> m;
    m.push_back(std::string("generator=") + kVersion);
    m.push_back("label=" + cfg.label);
    m.push_back("model=" + model_name(cfg.model));
    m.push_back("k=" + format_double(cfg.k));
    m.push_back("delta=" + format_double(cfg.delta));
    m.push_back("alpha_re=" + format_double(cfg.alpha.real()));
    m.push_back("alpha_im=" + format_double(cfg.alpha.imag()));
    m.push_back("gamma=" + format_double(cfg.gamma));
    m.push_back("n_max=" + std::to_string(cfg.n_max));
    m.push_back("margin=" + std::to_string(cfg.margin));
    m.push_back("tail_tol=" + format_double(cfg.tail_tol));
    m.push_back("t_start_pi=" + format_double(cfg.t_start_pi));
    m.push_back("t_end_pi=" + format_double(cfg.t_end_pi));
    m.push_back("samples=" + std::to_string(cfg.resolved_samples()));
    m.push_back("t_unit=pi");
    return m;
}

void write_series_csv(const std::string& path, const RunConfig& cfg,
                      const std::vector<const TimeSeries*>& columns) {
    if (columns.empty()) return;
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    for (const auto& line : config_metadata(cfg)) out << "# " << line << "\n";
    out << "t";
    for (const auto* c : columns) out << "," << c->name;
    out << "\n";
    const std::size_t n = columns.front()->t.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << format_double(columns.front()->t[i]);
        for (const auto* c : columns) out << "," << format_double(c->v[i]);
        out << "\n";
    }
}

void write_grid_csv(const std::string& path, const RunConfig& cfg, const WignerGrid& grid,
                    double t_pi) {
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    for (const auto& line : config_metadata(cfg)) out << "# " << line << "\n";
    out << "# t_pi=" << format_double(t_pi) << "\n";
    out << "# convention="
        << (grid.convention == WignerConvention::AlphaPlane ? "alpha-plane" : "quadrature")
        << "\n";
    out << "x,y,W\n";
    const int nx = static_cast<int>(grid.x_axis.size());
    const int ny = static_cast<int>(grid.y_axis.size());
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            out << format_double(grid.x_axis[ix]) << "," << format_double(grid.y_axis[iy]) << ","
                << format_double(grid.value(ix, iy)) << "\n";
        }
    }
}

void write_bundle_json(const std::string& path, const ResultBundle& bundle) {
    nlohmann::json doc;
    doc["generator"] = kVersion;
    doc["config"] = nlohmann::json::parse(serialize_config(bundle.config));
    doc["warnings"] = bundle.warnings;
    for (const auto& s : bundle.series) {
        doc["series"][s.name] = {{"t", s.t}, {"v", s.v}};
    }
    for (const auto& g : bundle.grids) {
        nlohmann::json jg;
        jg["name"] = g.name;
        jg["t_pi"] = g.t_pi;
        jg["x"] = g.grid.x_axis;
        jg["y"] = g.grid.y_axis;
        jg["values"] = g.grid.values;
        jg["convention"] =
            g.grid.convention == WignerConvention::AlphaPlane ? "alpha-plane" : "quadrature";
        doc["grids"].push_back(jg);
    }
    for (const auto& w : bundle.wp) {
        doc["wp"].push_back({{"t_pi", w.t_pi}, {"grid", w.grid_value}, {"exact", w.exact_value}});
    }
    if (bundle.plateau_computed) {
        doc["plateau"] = {{"found", bundle.plateau.found},
                          {"t_lo_pi", bundle.plateau.t_lo},
                          {"t_hi_pi", bundle.plateau.t_hi},
                          {"width_pi", bundle.plateau.width},
                          {"spread", bundle.plateau.max_window_spread}};
    }
    doc["validity"] = {{"max_metric", bundle.validity.max_metric},
                       {"pass", bundle.validity.pass}};
    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << doc.dump(2) << "\n";
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::vector<const TimeSeries*>& curves) {
    if (curves.empty()) return;
    const double w = 720, h = 440, ml = 64, mr = 16, mt = 36, mb = 46;
    Range xr{curves[0]->t.front(), curves[0]->t.back()}, yr{1e300, -1e300};
    for (const auto* c : curves) {
        for (double x : c->t) xr.expand(x);
        for (double y : c->v) {
            yr.lo = std::min(yr.lo, y);
            yr.hi = std::max(yr.hi, y);
        }
    }
    if (yr.hi <= yr.lo) yr.hi = yr.lo + 1.0;
    const double pad = 0.05 * (yr.hi - yr.lo);
    yr.lo -= pad;
    yr.hi += pad;

    auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - yr.lo) / (yr.hi - yr.lo) * (h - mt - mb); };

    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 5.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 5.0;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << h - mb << "\" x2=\"" << px(xv) << "\" y2=\""
            << h - mb + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << svg_num(xv) << "</text>\n";
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
            << py(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << svg_num(yv)
            << "</text>\n";
    }
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">t / pi</text>\n";

    int ci = 0;
    for (const auto* c : curves) {
        const char* color = kPalette[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < c->t.size(); ++i) {
            out << svg_num(px(c->t[i])) << "," << svg_num(py(c->v[i])) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << w - mr - 8 << "\" y=\"" << mt + 16 * (ci + 1)
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << color
            << "\">" << c->name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void write_heatmap_svg(const std::string& path, const std::string& title,
                       const WignerGrid& grid) {
    const int nx = static_cast<int>(grid.x_axis.size());
    const int ny = static_cast<int>(grid.y_axis.size());
    const double cell = std::max(2.0, std::floor(520.0 / std::max(nx, ny)));
    const double ml = 56, mt = 34, mb = 40;
    const double w = ml + nx * cell + 20, h = mt + ny * cell + mb;

    double vmax = 1e-300;
    for (double v : grid.values) vmax = std::max(vmax, std::abs(v));

    std::ofstream out(path, std::ios::binary);
    require_stream(out, path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double v = grid.value(ix, iy) / vmax;  // [-1, 1]
            // diverging map: blue (negative) - white - red (positive)
            const int r = static_cast<int>(255 * (v >= 0 ? 1.0 : 1.0 + v));
            const int g = static_cast<int>(255 * (1.0 - std::abs(v)));
            const int b = static_cast<int>(255 * (v <= 0 ? 1.0 : 1.0 - v));
            // y axis points up
            const double x0 = ml + ix * cell;
            const double y0 = mt + (ny - 1 - iy) * cell;
            out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"rgb(" << r << "," << g << "," << b << ")\"/>\n";
        }
    }
    out << "<text x=\"" << ml << "\" y=\"" << h - 14
        << "\" font-size=\"11\" font-family=\"sans-serif\">x: [" << svg_num(grid.x_axis.front())
        << ", " << svg_num(grid.x_axis.back()) << "]  y: [" << svg_num(grid.y_axis.front()) << ", "
        << svg_num(grid.y_axis.back()) << "]  max|W|=" << format_double(vmax) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace qnlo::output
