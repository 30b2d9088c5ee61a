#include "floq/report.hpp"

#include "floq/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace floq {

std::string fmt12(double v) {
    if (v == 0.0) v = 0.0; // collapse negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
    return out;
}

} // namespace

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series) {
    std::ofstream out = open_out(path);
    const int sites = series.sites;
    out << "# t in units of 1/g; n = period index (-1 when not stroboscopic); "
           "sz_j = <sigma^z_j>; C_j = <sz_j sz_(j+1)> - <sz_j><sz_(j+1)>; "
           "fidelity = |<psi(0)|psi(t)>|^2\n";
    out << "n,t";
    for (int j = 1; j <= sites; ++j) out << ",sz_" << j;
    for (int j = 1; j <= sites - 1; ++j) out << ",C_" << j;
    out << ",fidelity\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << series.period_index[s] << ',' << fmt12(series.times[s]);
        for (double v : series.sz[s]) out << ',' << fmt12(v);
        for (double v : series.corr[s]) out << ',' << fmt12(v);
        out << ',' << (s < series.fidelity_to_initial.size() ? fmt12(series.fidelity_to_initial[s]) : "");
        out << '\n';
    }
}

void write_map_csv(const std::filesystem::path& path, const SusceptibilityMap& map) {
    std::ofstream out = open_out(path);
    out << "# omega in units of g; t in units of 1/g; chi_F from central differences with "
           "delta_omega = "
        << fmt12(map.delta_omega) << "\n";
    out << "omega,t,chi_F\n";
    for (std::size_t io = 0; io < map.omegas.size(); ++io) {
        for (std::size_t it = 0; it < map.times.size(); ++it) {
            out << fmt12(map.omegas[io]) << ',' << fmt12(map.times[it]) << ','
                << fmt12(map.at(io, it)) << '\n';
        }
    }
}

void write_peaks_json(const std::filesystem::path& path, const SusceptibilityMap& map,
                      const std::vector<Peak>& peaks) {
    nlohmann::json j;
    j["delta_omega"] = map.delta_omega;
    j["omega_range"] = {map.omegas.front(), map.omegas.back()};
    j["t_range"] = {map.times.front(), map.times.back()};
    j["peaks"] = nlohmann::json::array();
    for (const Peak& p : peaks) {
        j["peaks"].push_back({{"omega", p.omega}, {"height", p.height}, {"prominence", p.prominence}});
    }
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_magnus_csv(const std::filesystem::path& path, const std::vector<MagnusCheckRow>& rows) {
    std::ofstream out = open_out(path);
    out << "# J0 in units of g; residual = max-norm distance of U(T) from the averaged "
           "effective evolution (rotating frame)\n";
    out << "J0,residual,effective_empty\n";
    for (const auto& r : rows) {
        out << fmt12(r.exchange) << ',' << fmt12(r.residual) << ',' << (r.effective_empty ? 1 : 0)
            << '\n';
    }
}

namespace {

// Monotone dark-to-bright ramp (viridis-like anchor points).
struct Rgb {
    double r, g, b;
};
constexpr Rgb kRamp[] = {
    {0.267, 0.005, 0.329}, {0.275, 0.194, 0.496}, {0.213, 0.359, 0.552}, {0.153, 0.497, 0.558},
    {0.122, 0.632, 0.531}, {0.290, 0.758, 0.428}, {0.622, 0.854, 0.226}, {0.993, 0.906, 0.144}};

std::string ramp_color(double u) {
    u = std::clamp(u, 0.0, 1.0);
    constexpr int n = static_cast<int>(std::size(kRamp)) - 1;
    const double x = u * n;
    const int i = std::min(static_cast<int>(x), n - 1);
    const double f = x - i;
    const auto mix = [&](double a, double b) { return a + f * (b - a); };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround(mix(kRamp[i].r, kRamp[i + 1].r) * 255)),
                  static_cast<int>(std::lround(mix(kRamp[i].g, kRamp[i + 1].g) * 255)),
                  static_cast<int>(std::lround(mix(kRamp[i].b, kRamp[i + 1].b) * 255)));
    return buf;
}

const char* kLineColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                             "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v == 0.0 ? 0.0 : v);
    return buf;
}

struct Frame {
    double x0, y0, w, h; // plot area in pixels
    double xmin, xmax, ymin, ymax;
    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void svg_open(std::ofstream& out, int width, int height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ofstream& out, const Frame& f, const std::string& title,
              const std::string& x_label, const std::string& y_label) {
    out << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w << "\" height=\""
        << f.h << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << xml_escape(title) << "</text>\n";
    out << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << f.y0 + f.h + 38
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(x_label)
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << f.y0 + f.h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 "
        << f.y0 + f.h / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = f.xmin + (f.xmax - f.xmin) * k / 4.0;
        const double fy = f.ymin + (f.ymax - f.ymin) * k / 4.0;
        out << "<text x=\"" << f.px(fx) << "\" y=\"" << f.y0 + f.h + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(fx) << "</text>\n";
        out << "<text x=\"" << f.x0 - 6 << "\" y=\"" << f.py(fy) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(fy)
            << "</text>\n";
    }
}

} // namespace

void svg_heatmap(const std::filesystem::path& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& values) {
    if (xs.empty() || ys.empty() || values.size() != xs.size() * ys.size())
        throw ConfigError("heatmap shape mismatch");
    const int width = 760, height = 560;
    std::ofstream out = open_out(path);
    svg_open(out, width, height);
    Frame f{70, 40, width - 180.0, height - 100.0, xs.front(), xs.back(), ys.front(), ys.back()};
    if (xs.size() == 1) f.xmax = f.xmin + 1.0;
    if (ys.size() == 1) f.ymax = f.ymin + 1.0;

    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    const double cw = f.w / static_cast<double>(xs.size());
    const double ch = f.h / static_cast<double>(ys.size());
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            const double v = values[ix * ys.size() + iy];
            out << "<rect x=\"" << f.x0 + cw * static_cast<double>(ix) << "\" y=\""
                << f.y0 + f.h - ch * static_cast<double>(iy + 1) << "\" width=\"" << cw + 0.5
                << "\" height=\"" << ch + 0.5 << "\" fill=\"" << ramp_color(v / vmax) << "\"/>\n";
        }
    }
    svg_axes(out, f, title, x_label, y_label);

    // colorbar
    const double bx = f.x0 + f.w + 24, bw = 18, bh = f.h;
    for (int k = 0; k < 64; ++k) {
        out << "<rect x=\"" << bx << "\" y=\"" << f.y0 + bh - bh * (k + 1) / 64.0 << "\" width=\""
            << bw << "\" height=\"" << bh / 64.0 + 0.5 << "\" fill=\"" << ramp_color(k / 63.0)
            << "\"/>\n";
    }
    out << "<rect x=\"" << bx << "\" y=\"" << f.y0 << "\" width=\"" << bw << "\" height=\"" << bh
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << bx + bw + 4 << "\" y=\"" << f.y0 + 10
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(vmax) << "</text>\n";
    out << "<text x=\"" << bx + bw + 4 << "\" y=\"" << f.y0 + bh
        << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
    out << "</svg>\n";
}

void svg_lines(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<double>& xs, const std::vector<LineSeries>& series) {
    if (xs.size() < 2 || series.empty()) throw ConfigError("line plot needs >= 2 points");
    const int width = 760, height = 480;
    std::ofstream out = open_out(path);
    svg_open(out, width, height);
    double ymin = 0.0, ymax = 0.0;
    for (const auto& s : series) {
        for (double v : s.ys) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (ymax == ymin) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    Frame f{70, 40, width - 230.0, height - 100.0, xs.front(), xs.back(), ymin - pad, ymax + pad};

    int color = 0;
    double legend_y = f.y0 + 14;
    for (const auto& s : series) {
        if (s.ys.size() != xs.size()) throw ConfigError("line series length mismatch");
        const char* c = kLineColors[color % std::size(kLineColors)];
        out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << f.px(xs[i]) << ',' << f.py(s.ys[i]) << ' ';
        }
        out << "\"/>\n";
        const double lx = f.x0 + f.w + 16;
        out << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\"" << lx + 22
            << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 26 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.name) << "</text>\n";
        legend_y += 16;
        ++color;
    }
    svg_axes(out, f, title, x_label, y_label);
    out << "</svg>\n";
}

} // namespace floq
