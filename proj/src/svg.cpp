#include "pushrec/svg.hpp"

#include <algorithm>
#include <cmath>

#include "pushrec/errors.hpp"
#include "pushrec/trial_io.hpp"

namespace pushrec {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = 0, hi = 1;
    double span() const { return hi - lo; }
};

Range padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double c = lo;
        return {c - 1.0, c + 1.0};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

/// Round tick spacing to 1/2/5 x 10^k covering about `count` intervals.
std::vector<double> ticks(const Range& r, int count = 5) {
    const double raw = r.span() / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> out;
    double t = std::ceil(r.lo / step) * step;
    for (; t <= r.hi + 1e-12 * r.span(); t += step) out.push_back(t == 0 ? 0.0 : t);
    return out;
}

std::string fmt(double v) {
    // trim float noise on tick labels
    const double r = std::round(v * 1e9) / 1e9;
    return format_double(r == 0 ? 0.0 : r);
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& opt) {
    if (series.empty()) throw DataError("svg: nothing to plot");
    double xlo = series[0].x.minCoeff(), xhi = series[0].x.maxCoeff();
    double ylo = series[0].y.minCoeff(), yhi = series[0].y.maxCoeff();
    for (const SvgSeries& s : series) {
        if (s.x.size() != s.y.size()) throw DataError("svg: series length mismatch");
        if (s.x.size() == 0) throw DataError("svg: empty series");
        xlo = std::min(xlo, s.x.minCoeff());
        xhi = std::max(xhi, s.x.maxCoeff());
        ylo = std::min(ylo, s.y.minCoeff());
        yhi = std::max(yhi, s.y.maxCoeff());
    }
    const Range rx = padded_range(xlo, xhi), ry = padded_range(ylo, yhi);

    const double ml = 70, mr = 20, mt = opt.title.empty() ? 20 : 45, mb = 55;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
    const auto px = [&](double x) { return ml + (x - rx.lo) / rx.span() * pw; };
    const auto py = [&](double y) { return mt + ph - (y - ry.lo) / ry.span() * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
           "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
           std::to_string(opt.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!opt.title.empty())
        svg += "<text x=\"" + fmt(opt.width / 2.0) +
               "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">" + opt.title + "</text>\n";

    // grid and ticks
    for (double t : ticks(rx)) {
        const double x = px(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(t) + "</text>\n";
    }
    for (double t : ticks(ry)) {
        const double y = py(t);
        svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(ml + pw) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(t) + "</text>\n";
    }
    // axes frame
    svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    if (!opt.x_label.empty())
        svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt + ph + 42) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               opt.x_label + "</text>\n";
    if (!opt.y_label.empty())
        svg += "<text x=\"18\" y=\"" + fmt(mt + ph / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 18 " + fmt(mt + ph / 2) + ")\">" + opt.y_label +
               "</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const SvgSeries& s = series[i];
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string pts;
        for (Eigen::Index k = 0; k < s.x.size(); ++k)
            pts += fmt(px(s.x[k])) + "," + fmt(py(s.y[k])) + " ";
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
        svg += " points=\"" + pts + "\"/>\n";
    }

    // legend
    double ly = mt + 14;
    for (size_t i = 0; i < series.size(); ++i) {
        if (series[i].label.empty()) continue;
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg += "<line x1=\"" + fmt(ml + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
               fmt(ml + 34) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"" +
               (series[i].dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        svg += "<text x=\"" + fmt(ml + 40) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + series[i].label +
               "</text>\n";
        ly += 16;
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace pushrec
