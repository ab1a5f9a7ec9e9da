#include "rvfl/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rvfl {

using nlohmann::json;

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: wrong cell count");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(cells[i]);
    }
    body_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: wrong cell count");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("CsvWriter: cannot open " + path);
    out << body_;
}

namespace {

const char* kPalette[] = {"#1b6ca8", "#c23b22", "#2e8540", "#8031a7",
                          "#b8860b", "#00767b", "#d4456a", "#454545"};

double axis_value(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& opt) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");
    double x_min = 1e308, x_max = -1e308, y_min = 1e308, y_max = -1e308;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if ((opt.log_x && x <= 0.0) || (opt.log_y && y <= 0.0))
                throw std::invalid_argument("render_svg: nonpositive value on a log axis");
            x_min = std::min(x_min, axis_value(x, opt.log_x));
            x_max = std::max(x_max, axis_value(x, opt.log_x));
            y_min = std::min(y_min, axis_value(y, opt.log_y));
            y_max = std::max(y_max, axis_value(y, opt.log_y));
        }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;
    const double pad_x = 0.03 * (x_max - x_min), pad_y = 0.06 * (y_max - y_min);
    x_min -= pad_x;
    x_max += pad_x;
    y_min -= pad_y;
    y_max += pad_y;

    const int ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
    auto px = [&](double x) { return ml + (axis_value(x, opt.log_x) - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + ph - (axis_value(y, opt.log_y) - y_min) / (y_max - y_min) * ph; };

    std::string svg;
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
                  opt.width, opt.height, opt.width, opt.height, opt.width, opt.height);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  opt.width / 2, opt.title.c_str());
    svg += buf;

    // frame
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%d\" y=\"%d\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"#333\"/>\n",
                  ml, mt, pw, ph);
    svg += buf;

    // ticks: decades on log axes, 5 linear ticks otherwise
    auto emit_tick_x = [&](double v, const std::string& label) {
        const double x = px(v);
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"middle\">%s</text>\n",
                      x, mt + ph, x, mt + ph + 5.0, x, mt + ph + 18.0, label.c_str());
        svg += buf;
    };
    auto emit_tick_y = [&](double v, const std::string& label) {
        const double y = py(v);
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"end\">%s</text>\n",
                      static_cast<double>(ml) - 5.0, y, static_cast<double>(ml), y,
                      static_cast<double>(ml) - 8.0, y + 4.0, label.c_str());
        svg += buf;
    };
    if (opt.log_x) {
        for (int e = static_cast<int>(std::ceil(x_min)); e <= static_cast<int>(std::floor(x_max)); ++e)
            emit_tick_x(std::pow(10.0, e), "1e" + std::to_string(e));
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double v = x_min + (x_max - x_min) * i / 4.0;
            emit_tick_x(v, fmt(v));
        }
    }
    if (opt.log_y) {
        for (int e = static_cast<int>(std::ceil(y_min)); e <= static_cast<int>(std::floor(y_max)); ++e)
            emit_tick_y(std::pow(10.0, e), "1e" + std::to_string(e));
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double v = y_min + (y_max - y_min) * i / 4.0;
            emit_tick_y(v, fmt(v));
        }
    }

    // axis labels
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"13\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  ml + static_cast<int>(pw) / 2, opt.height - 12, opt.x_label.c_str());
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"18\" y=\"%d\" font-family=\"sans-serif\" font-size=\"13\" "
                  "text-anchor=\"middle\" transform=\"rotate(-90 18 %d)\">%s</text>\n",
                  mt + static_cast<int>(ph) / 2, mt + static_cast<int>(ph) / 2,
                  opt.y_label.c_str());
    svg += buf;

    // series
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string pts;
        for (const auto& [x, y] : series[s].points) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x), py(y));
            pts += buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.8\" "
                      "points=\"%s\"/>\n",
                      color, pts.c_str());
        svg += buf;
        for (const auto& [x, y] : series[s].points) {
            std::snprintf(buf, sizeof(buf),
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.6\" fill=\"%s\"/>\n", px(x),
                          py(y), color);
            svg += buf;
        }
        // legend entry
        const double ly = mt + 14.0 + 16.0 * static_cast<double>(s);
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                      "stroke-width=\"2\"/><text x=\"%.1f\" y=\"%.1f\" "
                      "font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
                      ml + pw - 150.0, ly, ml + pw - 130.0, ly, color, ml + pw - 124.0, ly + 4.0,
                      series[s].label.c_str());
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

void save_svg(const std::vector<SvgSeries>& series, const SvgOptions& options,
              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_svg: cannot open " + path);
    out << render_svg(series, options);
}

std::string make_manifest(const std::string& command, const Config& cfg, std::uint64_t seed,
                          const std::vector<std::string>& outputs) {
    json j;
    j["command"] = command;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a_64(cfg.canonical())));
    j["config_hash"] = hash;
    j["seed"] = seed;
    j["library_version"] = kLibraryVersion;
    j["outputs"] = outputs;
    return j.dump(2);
}

void save_manifest(const std::string& command, const Config& cfg, std::uint64_t seed,
                   const std::vector<std::string>& outputs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_manifest: cannot open " + path);
    out << make_manifest(command, cfg, seed, outputs) << '\n';
}

} // namespace rvfl
