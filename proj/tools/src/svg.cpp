#include "hyperdecay_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hyperdecay::cli {

namespace {

constexpr double W = 640, H = 420, ML = 70, MR = 20, MT = 40, MB = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string loglog_chart_svg(const std::string& title, const std::vector<ChartSeries>& series,
                             const std::string& x_label, const std::string& y_label) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, std::log10(s.x[i]));
            x1 = std::max(x1, std::log10(s.x[i]));
            y0 = std::min(y0, std::log10(s.y[i]));
            y1 = std::max(y1, std::log10(s.y[i]));
        }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";
    if (!(x1 >= x0)) {
        os << "<text x=\"" << W / 2 << "\" y=\"" << H / 2 << "\" text-anchor=\"middle\">no positive data</text>\n</svg>\n";
        return os.str();
    }
    // pad flat ranges so the scale stays finite
    if (x1 - x0 < 1e-9) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-9) y0 -= 0.5, y1 += 0.5;
    const double pw = W - ML - MR, ph = H - MT - MB;
    auto px = [&](double lx) { return ML + (lx - x0) / (x1 - x0) * pw; };
    auto py = [&](double ly) { return MT + (y1 - ly) / (y1 - y0) * ph; };

    os << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    // decade ticks, or the end points when the range spans less than a decade
    auto ticks = [](double a, double b) {
        std::vector<double> t;
        for (double d = std::ceil(a); d <= std::floor(b) && t.size() < 40; d += 1) t.push_back(d);
        if (t.size() < 2) t = {a, b};
        return t;
    };
    for (double d : ticks(x0, x1)) {
        os << "<line x1=\"" << num(px(d)) << "\" y1=\"" << MT + ph << "\" x2=\"" << num(px(d)) << "\" y2=\""
           << MT + ph + 5 << "\" stroke=\"#444\"/>";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", std::pow(10.0, d));
        os << "<text x=\"" << num(px(d)) << "\" y=\"" << MT + ph + 18 << "\" text-anchor=\"middle\">" << buf
           << "</text>\n";
    }
    for (double d : ticks(y0, y1)) {
        os << "<line x1=\"" << ML - 5 << "\" y1=\"" << num(py(d)) << "\" x2=\"" << ML << "\" y2=\"" << num(py(d))
           << "\" stroke=\"#444\"/>";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", std::pow(10.0, d));
        os << "<text x=\"" << ML - 8 << "\" y=\"" << num(py(d) + 4) << "\" text-anchor=\"end\">" << buf
           << "</text>\n";
    }
    os << "<text x=\"" << ML + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << escape(x_label)
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << MT + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << MT + ph / 2 << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* col = kColors[k % 5];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"";
        if (s.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.y[i])) continue;
            os << num(px(std::log10(s.x[i]))) << ',' << num(py(std::log10(s.y[i]))) << ' ';
        }
        os << "\"/>\n";
        const double ly = MT + 16 + 16 * static_cast<double>(k);
        os << "<line x1=\"" << ML + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ML + pw - 130 << "\" y2=\"" << ly
           << "\" stroke=\"" << col << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
           << "/><text x=\"" << ML + pw - 125 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace hyperdecay::cli
