#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sp8d {

/// Minimal self-contained SVG line plots; CSV stays the canonical output.
class LinePlot {
public:
    LinePlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void add_series(const std::string& name, const std::vector<std::pair<double, double>>& pts) {
        series_.push_back({name, pts});
    }

    std::string render() const {
        const double w = 760, h = 520, ml = 80, mr = 180, mt = 50, mb = 60;
        double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
        bool any = false;
        for (const auto& s : series_) {
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (!any) {
                    x0 = x1 = x;
                    y0 = y1 = y;
                    any = true;
                } else {
                    x0 = std::min(x0, x);
                    x1 = std::max(x1, x);
                    y0 = std::min(y0, y);
                    y1 = std::max(y1, y);
                }
            }
        }
        if (!any) {
            x0 = y0 = 0;
            x1 = y1 = 1;
        }
        if (x1 - x0 < 1e-12) x1 = x0 + 1;
        const double pad = 0.05 * (y1 - y0 < 1e-12 ? 1.0 : y1 - y0);
        y0 -= pad;
        y1 += pad;
        const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
        const auto py = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };

        std::ostringstream os;
        os.precision(6);
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
           << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
           << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
              "font-family=\"sans-serif\">"
           << title_ << "</text>\n";
        // axes box and ticks
        os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << w - ml - mr
           << "\" height=\"" << h - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 8; ++i) {
            const double fx = x0 + (x1 - x0) * i / 8.0;
            const double fy = y0 + (y1 - y0) * i / 8.0;
            os << "<line x1=\"" << px(fx) << "\" y1=\"" << h - mb << "\" x2=\"" << px(fx)
               << "\" y2=\"" << h - mb + 5 << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << px(fx) << "\" y=\"" << h - mb + 20
               << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
               << format_num(fx) << "</text>\n"
               << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
               << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
               << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
               << format_num(fy) << "</text>\n"
               << "<line x1=\"" << px(fx) << "\" y1=\"" << mt << "\" x2=\"" << px(fx) << "\" y2=\""
               << h - mb << "\" stroke=\"#dddddd\"/>\n"
               << "<line x1=\"" << ml << "\" y1=\"" << py(fy) << "\" x2=\"" << w - mr << "\" y2=\""
               << py(fy) << "\" stroke=\"#dddddd\"/>\n";
        }
        os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 16
           << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << xlabel_
           << "</text>\n"
           << "<text x=\"20\" y=\"" << (mt + h - mb) / 2
           << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
              "transform=\"rotate(-90 20 "
           << (mt + h - mb) / 2 << ")\">" << ylabel_ << "</text>\n";

        static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
        for (std::size_t si = 0; si < series_.size(); ++si) {
            const char* color = colors[si % 8];
            std::ostringstream path;
            bool first = true;
            for (const auto& [x, y] : series_[si].points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                path << (first ? "M" : " L") << px(x) << " " << py(y);
                first = false;
                os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\""
                   << color << "\"/>\n";
            }
            os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1.5\"/>\n";
            const double ly = mt + 18 + 20 * static_cast<double>(si);
            os << "<line x1=\"" << w - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << w - mr + 34
               << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
               << "<text x=\"" << w - mr + 40 << "\" y=\"" << ly + 4
               << "\" font-size=\"12\" font-family=\"sans-serif\">" << series_[si].name
               << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write plot: " + path);
        out << render();
    }

private:
    static std::string format_num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };

    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
};

}  // namespace sp8d
