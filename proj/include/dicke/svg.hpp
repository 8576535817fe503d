#pragma once

// Small self-contained SVG line-chart writer for the --plot output. No
// external assets, fonts or scripts; fixed-format numbers keep the file
// byte-identical across runs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace dicke {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color; // empty picks from the default palette
    bool dashed = false;
};

struct SvgPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

namespace detail {

inline const char* svg_palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

inline std::string svg_num(double v, const char* fmt = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return std::string(buf);
}

inline std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// Tick step of the form {1,2,5} * 10^k closest to range/target from below.
inline double nice_step(double range, int target) {
    if (!(range > 0.0)) return 1.0;
    const double raw = range / double(target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

struct AxisRange {
    double lo, hi;
};

inline AxisRange data_range(const std::vector<SvgSeries>& series, bool y_axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const SvgSeries& s : series) {
        const std::vector<double>& v = y_axis ? s.y : s.x;
        for (double t : v) {
            if (!std::isfinite(t)) continue;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    return AxisRange{lo - (y_axis ? pad : 0.0), hi + pad};
}

} // namespace detail

inline std::string render_svg_chart(const std::vector<SvgPanel>& panels, int width = 840,
                                    int panel_height = 330) {
    using detail::svg_escape;
    using detail::svg_num;

    const int ml = 72, mr = 18, mt = 36, mb = 50;
    const int total_h = panel_height * int(panels.size());
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width)
         + "\" height=\"" + std::to_string(total_h) + "\" viewBox=\"0 0 "
         + std::to_string(width) + " " + std::to_string(total_h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const SvgPanel& panel = panels[pi];
        const double top = double(pi) * panel_height + mt;
        const double bot = double(pi + 1) * panel_height - mb;
        const double left = ml, right = width - mr;
        const detail::AxisRange xr = detail::data_range(panel.series, false);
        const detail::AxisRange yr = detail::data_range(panel.series, true);
        const auto px = [&](double x) {
            return left + (x - xr.lo) / (xr.hi - xr.lo) * (right - left);
        };
        const auto py = [&](double y) {
            return bot - (y - yr.lo) / (yr.hi - yr.lo) * (bot - top);
        };

        out += "<text x=\"" + svg_num(0.5 * (left + right)) + "\" y=\"" + svg_num(top - 14)
             + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
             + svg_escape(panel.title) + "</text>\n";

        // axes box
        out += "<rect x=\"" + svg_num(left) + "\" y=\"" + svg_num(top) + "\" width=\""
             + svg_num(right - left) + "\" height=\"" + svg_num(bot - top)
             + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

        // x ticks
        const double xstep = detail::nice_step(xr.hi - xr.lo, 6);
        for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-12 * xstep;
             t += xstep) {
            const double X = px(t);
            out += "<line x1=\"" + svg_num(X) + "\" y1=\"" + svg_num(bot) + "\" x2=\""
                 + svg_num(X) + "\" y2=\"" + svg_num(top)
                 + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + svg_num(X) + "\" y=\"" + svg_num(bot + 16)
                 + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
                 + svg_num(t, "%.6g") + "</text>\n";
        }
        // y ticks
        const double ystep = detail::nice_step(yr.hi - yr.lo, 5);
        for (double t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-12 * ystep;
             t += ystep) {
            const double Y = py(t);
            out += "<line x1=\"" + svg_num(left) + "\" y1=\"" + svg_num(Y) + "\" x2=\""
                 + svg_num(right) + "\" y2=\"" + svg_num(Y)
                 + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + svg_num(left - 6) + "\" y=\"" + svg_num(Y + 4)
                 + "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
                 + svg_num(t, "%.6g") + "</text>\n";
        }

        // axis labels
        out += "<text x=\"" + svg_num(0.5 * (left + right)) + "\" y=\"" + svg_num(bot + 34)
             + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
             + svg_escape(panel.x_label) + "</text>\n";
        out += "<text x=\"" + svg_num(left - 52) + "\" y=\"" + svg_num(0.5 * (top + bot))
             + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
             + " transform=\"rotate(-90 " + svg_num(left - 52) + " "
             + svg_num(0.5 * (top + bot)) + ")\">" + svg_escape(panel.y_label) + "</text>\n";

        // series
        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const SvgSeries& s = panel.series[si];
            const std::string color =
                s.color.empty() ? detail::svg_palette[si % 8] : s.color;
            std::string pts;
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                pts += svg_num(px(s.x[i])) + "," + svg_num(py(s.y[i])) + " ";
            }
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.6\"";
            if (s.dashed) out += " stroke-dasharray=\"6,4\"";
            out += " points=\"" + pts + "\"/>\n";

            // legend entry
            const double ly = top + 16 + 16 * double(si);
            out += "<line x1=\"" + svg_num(right - 150) + "\" y1=\"" + svg_num(ly - 4)
                 + "\" x2=\"" + svg_num(right - 122) + "\" y2=\"" + svg_num(ly - 4)
                 + "\" stroke=\"" + color + "\" stroke-width=\"2\"";
            if (s.dashed) out += " stroke-dasharray=\"6,4\"";
            out += "/>\n";
            out += "<text x=\"" + svg_num(right - 116) + "\" y=\"" + svg_num(ly)
                 + "\" font-family=\"sans-serif\" font-size=\"11\">" + svg_escape(s.label)
                 + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace dicke
