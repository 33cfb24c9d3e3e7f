#pragma once

#include "hcts/classify.hpp"
#include "hcts/cluster.hpp"
#include "hcts/everest.hpp"
#include "hcts/selection.hpp"
#include "hcts/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

// SVG figures for the select, regress and everest reports.
namespace hcts::plots {

namespace detail {

struct Frame {
    double x0, y0, w, h; // pixel box
    double lo_x, hi_x, lo_y, hi_y;

    double px(double v) const { return x0 + (hi_x == lo_x ? 0.5 : (v - lo_x) / (hi_x - lo_x)) * w; }
    double py(double v) const { return y0 + h - (hi_y == lo_y ? 0.5 : (v - lo_y) / (hi_y - lo_y)) * h; }
};

inline void axes(svg::Document& doc, const Frame& f) {
    doc.line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h);
    doc.line(f.x0, f.y0, f.x0, f.y0 + f.h);
}

// Per-class probability histograms over a shared range.
inline std::vector<std::vector<double>> class_histograms(const std::vector<double>& values, const std::vector<Label>& labels,
                                                         double lo, double hi, std::size_t bins) {
    std::vector<std::vector<double>> h(2, std::vector<double>(bins, 0.0));
    std::size_t count[2] = {0, 0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double u = hi > lo ? (values[i] - lo) / (hi - lo) : 0.5;
        const auto b = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(u * static_cast<double>(bins)))));
        h[labels[i]][b] += 1.0;
        ++count[labels[i]];
    }
    for (int c = 0; c < 2; ++c)
        for (auto& v : h[c]) v = count[c] ? v / static_cast<double>(count[c]) : 0.0;
    return h;
}

inline void step_curve(svg::Document& doc, const Frame& f, const std::vector<double>& probs, const svg::Stroke& s) {
    const double width = (f.hi_x - f.lo_x) / static_cast<double>(probs.size());
    std::vector<std::pair<double, double>> pts{{f.px(f.lo_x), f.py(0.0)}};
    for (std::size_t b = 0; b < probs.size(); ++b) {
        const double left = f.lo_x + static_cast<double>(b) * width;
        pts.emplace_back(f.px(left), f.py(probs[b]));
        pts.emplace_back(f.px(left + width), f.py(probs[b]));
    }
    pts.emplace_back(f.px(f.hi_x), f.py(0.0));
    doc.polyline(pts, s);
}

// Leaf order of a dendrogram (left-to-right) with the x slot of every node.
inline std::vector<std::size_t> leaf_order(const Dendrogram& d) {
    const std::size_t n = d.leaves.size();
    std::vector<std::size_t> order;
    if (n == 0) return order;
    std::function<void(std::size_t)> walk = [&](std::size_t node) {
        if (node < n) {
            order.push_back(node);
            return;
        }
        const auto& m = d.merges[node - n];
        walk(static_cast<std::size_t>(m.a));
        walk(static_cast<std::size_t>(m.b));
    };
    walk(n == 1 ? 0 : 2 * n - 2);
    return order;
}

inline std::string grey(double intensity) {
    const int v = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(intensity, 0.0, 1.0))));
    return "rgb(" + std::to_string(v) + "," + std::to_string(v) + "," + std::to_string(255) + ")";
}

} // namespace detail

/// |R| matrix in dendrogram leaf order, dendrogram above it, cluster boxes and
/// a dot on each representative.
inline std::string selection_figure(const ClassificationReport& r) {
    const std::size_t n = r.selected.size();
    if (n == 0) {
        svg::Document doc(420, 60);
        doc.text(10, 35, "No features passed the false discovery rate threshold (" + std::string(to_string(r.status)) + ")");
        return doc.str();
    }
    const double cell = 22.0, left = 300.0, top = 150.0, dendro_h = 120.0;
    svg::Document doc(left + cell * static_cast<double>(n) + 30.0, top + cell * static_cast<double>(n) + 30.0);
    const auto order = detail::leaf_order(r.dendrogram);
    std::vector<std::size_t> slot(n);
    for (std::size_t k = 0; k < n; ++k) slot[order[k]] = k;

    for (std::size_t a = 0; a < n; ++a) {
        const auto i = static_cast<Eigen::Index>(order[a]);
        doc.text(left - 6.0, top + cell * (static_cast<double>(a) + 0.7), r.selected[order[a]], 10.0, "end");
        for (std::size_t b = 0; b < n; ++b) {
            const auto j = static_cast<Eigen::Index>(order[b]);
            doc.rect(left + cell * static_cast<double>(b), top + cell * static_cast<double>(a), cell, cell,
                     detail::grey(r.abs_corr(i, j)));
        }
    }

    // Dendrogram: heights are distances 1 - |R| in [0, 1].
    double max_h = 1e-12;
    for (const auto& m : r.dendrogram.merges) max_h = std::max(max_h, m.height);
    std::vector<double> node_x(2 * n), node_y(2 * n, top - 4.0);
    for (std::size_t k = 0; k < n; ++k) node_x[k] = left + cell * (static_cast<double>(slot[k]) + 0.5);
    for (std::size_t s = 0; s < r.dendrogram.merges.size(); ++s) {
        const auto& m = r.dendrogram.merges[s];
        const double y = top - 4.0 - dendro_h * m.height / max_h;
        const auto a = static_cast<std::size_t>(m.a), b = static_cast<std::size_t>(m.b);
        doc.line(node_x[a], node_y[a], node_x[a], y);
        doc.line(node_x[b], node_y[b], node_x[b], y);
        doc.line(node_x[a], y, node_x[b], y);
        node_x[n + s] = 0.5 * (node_x[a] + node_x[b]);
        node_y[n + s] = y;
    }
    if (r.n_clusters > 1 && r.n_clusters < n) {
        const auto& merges = r.dendrogram.merges;
        const double cut = 0.5 * (merges[n - r.n_clusters - 1].height + merges[n - r.n_clusters].height);
        const double y = top - 4.0 - dendro_h * cut / max_h;
        doc.line(left, y, left + cell * static_cast<double>(n), y, {"black", 1.0, "6,4"});
    }

    // Cluster boxes: each cluster is contiguous in leaf order.
    const svg::Stroke box{"black", 2.0, ""};
    for (std::size_t c = 0; c < r.n_clusters; ++c) {
        std::size_t lo = n, hi = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (static_cast<std::size_t>(r.clusters[k]) == c) {
                lo = std::min(lo, slot[k]);
                hi = std::max(hi, slot[k]);
            }
        const double x = left + cell * static_cast<double>(lo);
        const double y = top + cell * static_cast<double>(lo);
        const double s = cell * static_cast<double>(hi - lo + 1);
        doc.rect(x, y, s, s, "none", &box);
    }
    for (const auto& name : r.representatives) {
        const auto k = static_cast<std::size_t>(std::find(r.selected.begin(), r.selected.end(), name) - r.selected.begin());
        const double c = cell * (static_cast<double>(slot[k]) + 0.5);
        doc.circle(left + c, top + c, 5.0, "orange");
    }
    return doc.str();
}

/// One panel per feature: class-conditional distributions with the learned
/// threshold as a dashed line and the misclassification rate annotated.
inline std::string distribution_figure(const std::vector<std::string>& names,
                                       const std::vector<std::vector<double>>& columns, const std::vector<Label>& labels,
                                       const std::vector<const FeatureScore*>& scores) {
    const double panel_w = 420.0, panel_h = 150.0, pad = 40.0;
    svg::Document doc(panel_w + 2 * pad, (panel_h + pad) * static_cast<double>(std::max<std::size_t>(1, names.size())) + pad);
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto& v = columns[k];
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        if (hi == lo) hi = lo + 1.0;
        const auto h = detail::class_histograms(v, labels, lo, hi, 20);
        double top = 0.0;
        for (const auto& c : h) top = std::max(top, *std::max_element(c.begin(), c.end()));
        const detail::Frame f{pad, pad + static_cast<double>(k) * (panel_h + pad), panel_w, panel_h, lo, hi, 0.0, top * 1.1};
        detail::axes(doc, f);
        detail::step_curve(doc, f, h[0], {"grey", 2.0, ""});
        detail::step_curve(doc, f, h[1], {"black", 2.0, ""});
        const double t = scores[k]->classifier.threshold;
        if (t >= lo && t <= hi) doc.line(f.px(t), f.y0, f.px(t), f.y0 + f.h, {"black", 1.5, "6,4"});
        doc.text(f.x0, f.y0 - 6.0, names[k], 11.0);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * scores[k]->rate);
        doc.text(f.x0 + 6.0, f.y0 + 14.0, buf, 11.0);
        doc.text(f.x0, f.y0 + f.h + 14.0, svg::num(lo), 9.0);
        doc.text(f.x0 + f.w, f.y0 + f.h + 14.0, svg::num(hi), 9.0, "end");
    }
    return doc.str();
}

/// Horizontal bars of R for the strongest correlates.
inline std::string regression_figure(const RegressionReport& r, std::size_t top = 10) {
    const std::size_t n = std::min(top, r.ranking.size());
    const double left = 300.0, bar_h = 20.0, half = 150.0;
    svg::Document doc(left + 2 * half + 40.0, 40.0 + bar_h * static_cast<double>(n) + 30.0);
    const double zero = left + half;
    double max_r = 1e-12;
    for (std::size_t k = 0; k < n; ++k) max_r = std::max(max_r, std::abs(r.ranking[k].r));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& e = r.ranking[k];
        const double y = 30.0 + bar_h * static_cast<double>(k);
        const double w = half * std::abs(e.r) / max_r;
        doc.rect(e.r >= 0 ? zero : zero - w, y + 3.0, w, bar_h - 6.0, e.r >= 0 ? "steelblue" : "indianred");
        doc.text(left - 6.0, y + 14.0, e.name, 10.0, "end");
        doc.text(e.r >= 0 ? zero + w + 4.0 : zero - w - 4.0, y + 14.0, svg::num(e.r), 9.0, e.r >= 0 ? "start" : "end");
    }
    doc.line(zero, 25.0, zero, 35.0 + bar_h * static_cast<double>(n));
    doc.text(zero, 18.0, "R (linear correlation with target)", 11.0, "middle");
    return doc.str();
}

/// Top: distributions of the feature for the event and non-event groups with
/// the group partitions dashed. Bottom: event rate per group, one line per
/// outcome definition.
inline std::string everest_figure(const EverestResult& r, const std::vector<double>& values,
                                  const std::vector<Label>& low_ph) {
    const double pad = 50.0, w = 460.0, h = 170.0;
    svg::Document doc(w + 2 * pad, 2 * h + 3 * pad);
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi == lo) hi = lo + 1.0;
    const auto hist = detail::class_histograms(values, low_ph, lo, hi, 30);
    double peak = 0.0;
    for (const auto& c : hist) peak = std::max(peak, *std::max_element(c.begin(), c.end()));
    const detail::Frame a{pad, pad, w, h, lo, hi, 0.0, peak * 1.1};
    detail::axes(doc, a);
    detail::step_curve(doc, a, hist[0], {"grey", 2.0, ""});
    detail::step_curve(doc, a, hist[1], {"black", 2.0, ""});
    for (double b : r.group_boundaries) doc.line(a.px(b), a.y0, a.px(b), a.y0 + a.h, {"black", 1.0, "5,4"});
    doc.text(a.x0, a.y0 - 8.0, "A  " + r.feature, 12.0);

    double max_rate = 1e-12;
    for (const auto& o : r.outcomes) max_rate = std::max(max_rate, *std::max_element(o.group_rates.begin(), o.group_rates.end()));
    const detail::Frame b{pad, 2 * pad + h, w, h, 1.0, static_cast<double>(r.n_group), 0.0, max_rate * 1.1};
    detail::axes(doc, b);
    const svg::Stroke styles[] = {{"green", 2.0, "8,5"}, {"darkorange", 2.0, ""}, {"royalblue", 2.0, "2,3"}};
    for (std::size_t k = 0; k < r.outcomes.size(); ++k) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t g = 0; g < r.n_group; ++g)
            pts.emplace_back(b.px(static_cast<double>(g + 1)), b.py(r.outcomes[k].group_rates[g]));
        doc.polyline(pts, styles[k % 3]);
        doc.text(b.x0 + 8.0, b.y0 + 14.0 * static_cast<double>(k + 1), r.outcomes[k].name, 10.0);
    }
    doc.text(b.x0, b.y0 - 8.0, "B  event rate per group", 12.0);
    doc.text(b.x0 + b.w, b.y0 + b.h + 16.0, "group (ascending feature value)", 10.0, "end");
    doc.text(b.x0 - 6.0, b.y0 + 4.0, svg::num(max_rate * 1.1), 9.0, "end");
    return doc.str();
}

} // namespace hcts::plots
