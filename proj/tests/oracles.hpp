#pragma once

// Independent reference implementations used by the tests. They share no code
// with the library beyond the standard library, and favour the most literal
// form of each definition over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline double sample_std(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / (n - 1.0));
}

inline bool within(const std::vector<double>& x, std::size_t i, std::size_t j, std::size_t len, double r) {
    for (std::size_t k = 0; k < len; ++k)
        if (std::fabs(x[i + k] - x[j + k]) > r) return false;
    return true;
}

// Pincus: Phi^m - Phi^{m+1}, self-matches counted.
inline double apen(const std::vector<double>& x, std::size_t m, double r_frac) {
    const double r = r_frac * sample_std(x);
    const std::size_t n = x.size();
    auto phi = [&](std::size_t len) {
        const std::size_t count = n - len + 1;
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t c = 0;
            for (std::size_t j = 0; j < count; ++j)
                if (within(x, i, j, len, r)) ++c;
            total += std::log(static_cast<double>(c) / static_cast<double>(count));
        }
        return total / static_cast<double>(count);
    };
    return phi(m) - phi(m + 1);
}

struct SampEnCounts {
    std::size_t a = 0; // matches of length m+1
    std::size_t b = 0; // matches of length m
};

// Richman-Moorman: the first N-m templates, unordered pairs without self-matches.
inline SampEnCounts sampen_counts(const std::vector<double>& x, std::size_t m, double r_frac) {
    const double r = r_frac * sample_std(x);
    const std::size_t count = x.size() - m;
    SampEnCounts c;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            if (within(x, i, j, m, r)) ++c.b;
            if (within(x, i, j, m + 1, r)) ++c.a;
        }
    return c;
}

inline double sampen(const std::vector<double>& x, std::size_t m, double r_frac) {
    const auto c = sampen_counts(x, m, r_frac);
    if (c.a == 0) return std::numeric_limits<double>::infinity();
    return -std::log(static_cast<double>(c.a) / static_cast<double>(c.b));
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// Plug-in mutual information between x_t and x_{t+lag}, counting joint cells
// in a map.
inline double ami(const std::vector<double>& x, std::size_t lag, int n_bins) {
    const double lo = *std::min_element(x.begin(), x.end());
    const double hi = *std::max_element(x.begin(), x.end());
    auto bin = [&](double v) {
        int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * n_bins));
        return std::clamp(b, 0, n_bins - 1);
    };
    const std::size_t pairs = x.size() - lag;
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> left, right;
    for (std::size_t t = 0; t < pairs; ++t) {
        const int a = bin(x[t]), b = bin(x[t + lag]);
        joint[{a, b}] += 1.0;
        left[a] += 1.0;
        right[b] += 1.0;
    }
    const double n = static_cast<double>(pairs);
    double mi = 0.0;
    for (const auto& [cell, c] : joint) {
        const double pxy = c / n;
        mi += pxy * std::log(pxy / ((left[cell.first] / n) * (right[cell.second] / n)));
    }
    return mi;
}

inline double autocorr(const std::vector<double>& x, std::size_t lag) {
    const double n = static_cast<double>(x.size());
    const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) den += (x[t] - mu) * (x[t] - mu);
    for (std::size_t t = 0; t + lag < x.size(); ++t) num += (x[t] - mu) * (x[t + lag] - mu);
    return num / den;
}

struct Pt {
    double x, y;
};

// Gift wrapping: from the lowest-leftmost point, repeatedly pick the point that
// leaves every other point on the left, preferring the farthest on ties.
inline std::vector<Pt> jarvis_hull(const std::vector<Pt>& pts) {
    if (pts.size() < 3) return pts;
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y)) start = i;
    std::vector<Pt> hull;
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        std::size_t next = (cur + 1) % pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double cr = (pts[next].x - pts[cur].x) * (pts[i].y - pts[cur].y) -
                              (pts[next].y - pts[cur].y) * (pts[i].x - pts[cur].x);
            const double dn = std::hypot(pts[next].x - pts[cur].x, pts[next].y - pts[cur].y);
            const double di = std::hypot(pts[i].x - pts[cur].x, pts[i].y - pts[cur].y);
            if (cr < 0 || (cr == 0 && di > dn)) next = i;
        }
        cur = next;
    } while (cur != start && hull.size() <= pts.size());
    return hull;
}

inline double polygon_area(const std::vector<Pt>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return std::fabs(a) / 2.0;
}

inline double hull_area(const std::vector<Pt>& pts) { return polygon_area(jarvis_hull(pts)); }

// Average linkage recomputed from scratch at every step: the distance between
// two clusters is the mean over all leaf pairs, summed afresh.
struct NaiveMerge {
    std::vector<int> left, right; // leaf sets
    double height;
};

inline std::vector<NaiveMerge> naive_upgma(const std::vector<std::vector<double>>& d) {
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < static_cast<int>(d.size()); ++i) clusters.push_back({i});
    std::vector<NaiveMerge> merges;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double s = 0.0;
                for (int a : clusters[i])
                    for (int b : clusters[j]) s += d[a][b];
                const double avg = s / static_cast<double>(clusters[i].size() * clusters[j].size());
                if (avg < best) {
                    best = avg;
                    bi = i;
                    bj = j;
                }
            }
        merges.push_back({clusters[bi], clusters[bj], best});
        auto merged = clusters[bi];
        merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(merged.begin(), merged.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = merged;
    }
    return merges;
}

// Benjamini-Hochberg by the textbook recipe: largest k with p_(k) <= k q / m,
// then everything ranked at or below k.
inline std::vector<std::string> bh(std::vector<std::pair<std::string, double>> p, double q) {
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return a.second < b.second || (a.second == b.second && a.first < b.first);
    });
    const double m = static_cast<double>(p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].second <= static_cast<double>(i + 1) * q / m) k = i + 1;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(p[i].first);
    return out;
}

// Least-squares fit of a*exp(-b*x) by a dense grid with successive refinement.
struct GridFit {
    double a, b, sse;
};

inline GridFit grid_exp_fit(const std::vector<double>& xs, const std::vector<double>& ys, double a_lo, double a_hi,
                            double b_lo, double b_hi) {
    auto sse = [&](double a, double b) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - a * std::exp(-b * xs[i]);
            s += r * r;
        }
        return s;
    };
    GridFit best{a_lo, b_lo, sse(a_lo, b_lo)};
    const int steps = 200;
    for (int round = 0; round < 6; ++round) {
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const double a = a_lo + (a_hi - a_lo) * i / steps;
                const double b = b_lo + (b_hi - b_lo) * j / steps;
                const double s = sse(a, b);
                if (s < best.sse) best = {a, b, s};
            }
        const double da = (a_hi - a_lo) / steps * 4, db = (b_hi - b_lo) / steps * 4;
        a_lo = best.a - da;
        a_hi = best.a + da;
        b_lo = best.b - db;
        b_hi = best.b + db;
    }
    return best;
}

inline std::vector<double> normal_series(std::size_t n, std::uint64_t seed, double mu = 0.0, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mu, sd);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    return x;
}

inline std::vector<double> ar1_series(std::size_t n, std::uint64_t seed, double phi = 0.9) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(n);
    double prev = 0.0;
    for (auto& v : x) {
        prev = phi * prev + dist(rng);
        v = prev;
    }
    return x;
}

} // namespace oracle
