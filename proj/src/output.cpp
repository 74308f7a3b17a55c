#include "crowqed/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "crowqed/config.hpp"

namespace crowqed::io {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";  // fold negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) out += format_number(v);
                    else if constexpr (std::is_same_v<T, long long>) out += std::to_string(v);
                    else if constexpr (std::is_same_v<T, bool>) out += v ? "1" : "0";
                    else out += v;
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-12 * span; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(const LinePlot& plot, int width, int height) {
    const double ml = 70, mr = 20, mt = plot.title.empty() ? 20 : 44, mb = 52;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    Extent ex, ey;
    for (const auto& s : plot.series) {
        for (double v : s.x) ex.include(v);
        for (double v : s.y) ey.include(v);
    }
    if (!std::isfinite(ex.lo) || !std::isfinite(ey.lo)) {
        ex = Extent{0.0, 1.0};
        ey = Extent{0.0, 1.0};
    }
    ex.pad();
    ey.pad();
    const auto sx = [&](double v) { return ml + pw * (v - ex.lo) / (ex.hi - ex.lo); };
    const auto sy = [&](double v) { return mt + ph * (1.0 - (v - ey.lo) / (ey.hi - ey.lo)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!plot.title.empty())
        svg << "<text x=\"" << width / 2.0
            << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
            << plot.title << "</text>\n";

    // axes and ticks
    svg << "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\"/>\n";
    for (double t : nice_ticks(ex.lo, ex.hi)) {
        const double x = sx(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
            << mt + ph + 5 << "\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#222\">" << tick_label(t)
            << "</text>\n";
    }
    for (double t : nice_ticks(ey.lo, ey.hi)) {
        const double y = sy(t);
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
            << "\"/>\n";
        svg << "<text x=\"" << ml - 9 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#222\">" << tick_label(t)
            << "</text>\n";
    }
    svg << "</g>\n";

    if (!plot.x_label.empty())
        svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << plot.x_label << "</text>\n";
    if (!plot.y_label.empty())
        svg << "<text x=\"16\" y=\"" << mt + ph / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 16 "
            << mt + ph / 2 << ")\">" << plot.y_label << "</text>\n";

    for (const auto& s : plot.series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
        if (s.dashed) svg << " stroke-dasharray=\"7,4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            svg << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
        }
        svg << "\"/>\n";
    }

    // legend
    double ly = mt + 12;
    for (const auto& s : plot.series) {
        const double lx = ml + pw - 150;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 28 << "\" y2=\""
            << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\""
            << (s.dashed ? " stroke-dasharray=\"7,4\"" : "") << "/>\n";
        svg << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace crowqed::io
