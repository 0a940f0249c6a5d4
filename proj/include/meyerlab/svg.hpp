#pragma once
/*!
 * \file svg.hpp
 * \brief Minimal self-contained SVG plots: point patterns, interval rows, curves.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace meyerlab::svg {

inline std::string num(double v) {
    char buf[32];
    // Fixed precision keeps files small and byte-stable.
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double width = 800, height = 400, margin = 50;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    double px(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
    double py(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }

    void fit_x(double lo, double hi) {
        if (!(hi > lo)) {
            lo -= 1;
            hi += 1;
        }
        x0 = lo;
        x1 = hi;
    }
    void fit_y(double lo, double hi) {
        if (!(hi > lo)) {
            lo -= 1;
            hi += 1;
        }
        y0 = lo;
        y1 = hi;
    }
};

inline std::string header(const Frame& f, const std::string& comment) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" + num(f.height) +
           "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n";
    out += "<!-- " + escape(comment) + " -->\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(f.width) + "\" height=\"" + num(f.height) + "\" fill=\"white\"/>\n";
    return out;
}

inline std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    std::string out;
    const double bx = f.margin, by = f.height - f.margin, tx = f.width - f.margin, ty = f.margin;
    out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + num(bx) + "\" y1=\"" + num(by) + "\" x2=\"" + num(tx) + "\" y2=\"" + num(by) + "\"/>\n";
    out += "<line x1=\"" + num(bx) + "\" y1=\"" + num(by) + "\" x2=\"" + num(bx) + "\" y2=\"" + num(ty) + "\"/>\n";
    out += "</g>\n";
    out += "<text x=\"" + num(f.width / 2) + "\" y=\"" + num(f.height - 10) + "\" font-size=\"12\" text-anchor=\"middle\">" +
           escape(xlabel) + "</text>\n";
    out += "<text x=\"14\" y=\"" + num(f.height / 2) + "\" font-size=\"12\" transform=\"rotate(-90 14 " + num(f.height / 2) +
           ")\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n";
    auto tick = [&](double v, bool xaxis, const std::string& label) {
        if (xaxis) {
            out += "<text x=\"" + num(f.px(v)) + "\" y=\"" + num(by + 16) + "\" font-size=\"10\" text-anchor=\"middle\">" +
                   escape(label) + "</text>\n";
        } else {
            out += "<text x=\"" + num(bx - 4) + "\" y=\"" + num(f.py(v) + 3) + "\" font-size=\"10\" text-anchor=\"end\">" +
                   escape(label) + "</text>\n";
        }
    };
    char buf[32];
    for (double v : {f.x0, f.x1}) {
        auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
        tick(v, true, std::string(buf, r.ptr));
    }
    for (double v : {f.y0, f.y1}) {
        auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
        tick(v, false, std::string(buf, r.ptr));
    }
    return out;
}

/// One circle per point; 1D sets are drawn on a horizontal line.
inline std::string points_plot(const std::vector<std::vector<double>>& pts, const std::string& comment) {
    Frame f;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool first = true;
    for (const auto& p : pts) {
        const double x = p.empty() ? 0 : p[0];
        const double y = p.size() > 1 ? p[1] : 0;
        if (first) {
            xlo = xhi = x;
            ylo = yhi = y;
            first = false;
        }
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    f.fit_x(xlo, xhi);
    f.fit_y(ylo, yhi);
    std::string out = header(f, comment) + axes(f, "x", pts.empty() || pts[0].size() < 2 ? "" : "y");
    out += "<g class=\"points\" fill=\"steelblue\">\n";
    for (const auto& p : pts) {
        const double x = p.empty() ? 0 : p[0];
        const double y = p.size() > 1 ? p[1] : 0;
        out += "<circle cx=\"" + num(f.px(x)) + "\" cy=\"" + num(f.py(y)) + "\" r=\"2\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

/// Rows of intervals, one row per parameter value, rows ordered as given.
inline std::string interval_rows(const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& rows,
                                 const std::string& comment) {
    Frame f;
    double lo = 0, hi = 1;
    bool first = true;
    for (const auto& [eps, comps] : rows) {
        for (const auto& [a, b] : comps) {
            if (first) {
                lo = a;
                hi = b;
                first = false;
            }
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    f.fit_x(lo, hi);
    f.fit_y(0, static_cast<double>(std::max<std::size_t>(rows.size(), 1)));
    std::string out = header(f, comment) + axes(f, "t", "ladder index (eps)");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double y = f.py(static_cast<double>(i) + 0.5);
        out += "<g class=\"row\" fill=\"darkorange\"><title>eps=" + num(rows[i].first) + "</title>\n";
        for (const auto& [a, b] : rows[i].second) {
            const double x0 = f.px(a), x1 = f.px(b);
            out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y - 4) + "\" width=\"" + num(std::max(x1 - x0, 0.5)) +
                   "\" height=\"8\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

/// One polyline per named curve on log10 axes (non-positive values are clamped).
inline std::string log_curves(const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& curves,
                              const std::string& comment) {
    auto lg = [](double v) { return std::log10(std::max(v, 1e-6)); };
    Frame f;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool first = true;
    for (const auto& [name, pts] : curves) {
        for (const auto& [x, y] : pts) {
            if (first) {
                xlo = xhi = lg(x);
                ylo = yhi = lg(y);
                first = false;
            }
            xlo = std::min(xlo, lg(x));
            xhi = std::max(xhi, lg(x));
            ylo = std::min(ylo, lg(y));
            yhi = std::max(yhi, lg(y));
        }
    }
    f.fit_x(xlo, xhi);
    f.fit_y(ylo, yhi);
    static const char* colors[] = {"steelblue", "darkorange", "seagreen", "crimson", "purple"};
    std::string out = header(f, comment) + axes(f, "log10 parameter", "log10 value");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        std::string pts;
        for (const auto& [x, y] : curves[i].second) pts += num(f.px(lg(x))) + "," + num(f.py(lg(y))) + " ";
        if (!pts.empty()) pts.pop_back();
        out += "<polyline fill=\"none\" stroke=\"" + std::string(colors[i % 5]) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"><title>" + escape(curves[i].first) + "</title></polyline>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace meyerlab::svg
