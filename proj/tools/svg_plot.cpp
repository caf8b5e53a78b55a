// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace steerlab::tools {

namespace {

constexpr double kPanelWidth = 460.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;
constexpr double kGap = 40.0;

struct CurveStyle {
    const char* id;
    const char* label;
    const char* color;
};

constexpr CurveStyle kCurves[] = {
    {"original", "original", "#c0392b"},
    {"postselected", "post-selected", "#2471a3"},
    {"averaged", "averaged (N=2)", "#e67e22"},
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        const double span = std::max(hi - lo, 1e-3);
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
};

void panel(std::ostringstream& out, const std::vector<SweepRow>& rows, const std::string& metric,
           const std::string& title, double x0) {
    Range xr, yr;
    for (const auto& r : rows) {
        if (r.metric != metric) continue;
        xr.add(r.delta);
        yr.add(r.exact);
        if (std::isfinite(r.mean_reconstructed)) {
            yr.add(r.mean_reconstructed - r.stddev_reconstructed);
            yr.add(r.mean_reconstructed + r.stddev_reconstructed);
        }
    }
    xr.pad();
    yr.pad();
    const double w = kPanelWidth - kMarginLeft - 20.0;
    const double h = kPanelHeight - kMarginTop - kMarginBottom;
    const double left = x0 + kMarginLeft;
    auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * w; };
    auto py = [&](double v) { return kMarginTop + h - (v - yr.lo) / (yr.hi - yr.lo) * h; };

    out << "<g>\n";
    out << "<text x=\"" << num(left + w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<rect x=\"" << num(left) << "\" y=\"" << num(kMarginTop) << "\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kMarginTop + h + 18) << "\" text-anchor=\"middle\""
            << " font-size=\"11\">" << num(xv) << "</text>\n";
        out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\""
            << " font-size=\"11\">" << num(yv) << "</text>\n";
    }
    out << "<text x=\"" << num(left + w / 2) << "\" y=\"" << num(kMarginTop + h + 38)
        << "\" text-anchor=\"middle\" font-size=\"12\">imbalance alpha^2 - beta^2</text>\n";

    int legend = 0;
    for (const auto& style : kCurves) {
        std::vector<const SweepRow*> pts;
        for (const auto& r : rows)
            if (r.metric == metric && r.curve == style.id) pts.push_back(&r);
        std::sort(pts.begin(), pts.end(), [](const SweepRow* a, const SweepRow* b) { return a->delta < b->delta; });
        if (pts.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << style.color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto* p : pts) out << num(px(p->delta)) << ',' << num(py(p->exact)) << ' ';
        out << "\"/>\n";
        for (const auto* p : pts) {
            if (!std::isfinite(p->mean_reconstructed)) continue;
            const double cx = px(p->delta);
            out << "<line x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\""
                << num(py(p->mean_reconstructed - p->stddev_reconstructed)) << "\" y2=\""
                << num(py(p->mean_reconstructed + p->stddev_reconstructed)) << "\" stroke=\"" << style.color
                << "\"/>\n";
            out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(py(p->mean_reconstructed))
                << "\" r=\"3\" fill=\"" << style.color << "\"/>\n";
        }
        const double ly = kMarginTop + 14 + 16 * legend++;
        out << "<line x1=\"" << num(left + 10) << "\" x2=\"" << num(left + 30) << "\" y1=\"" << num(ly) << "\" y2=\""
            << num(ly) << "\" stroke=\"" << style.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(left + 36) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">" << style.label
            << "</text>\n";
    }
    out << "</g>\n";
}

}  // namespace

std::string sweep_to_svg(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    const double width = 2 * kPanelWidth + kGap;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(kPanelHeight)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(kPanelHeight) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    panel(out, rows, "fraction", "singlet-assemblage fraction", 0.0);
    panel(out, rows, "robustness", "steering robustness", kPanelWidth + kGap);
    out << "</svg>\n";
    return out.str();
}

}  // namespace steerlab::tools
