#pragma once

#include "hcts/error.hpp"
#include "hcts/stats.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

// Small nonlinear least-squares fits (Levenberg-Marquardt) for the
// distribution and transition-spectrum features.
namespace hcts {

struct LmOptions {
    double param_tol = 1e-10;
    double sse_tol = 1e-12;
    int max_iterations = 200;
};

template <int P>
struct LmResult {
    Eigen::Matrix<double, P, 1> params;
    double sse;
    int iterations;
    bool converged;
};

/// Minimizes sum_i (f(x_i; p) - y_i)^2. `model(x, p, grad)` returns f and
/// writes df/dp into grad.
template <int P, class Model>
LmResult<P> levenberg_marquardt(const Model& model, std::span<const double> xs, std::span<const double> ys,
                                Eigen::Matrix<double, P, 1> p, const LmOptions& opt = {}) {
    using Vec = Eigen::Matrix<double, P, 1>;
    using Mat = Eigen::Matrix<double, P, P>;
    const std::size_t n = xs.size();

    auto evaluate = [&](const Vec& q, Mat* jtj, Vec* jtr) {
        double sse = 0.0;
        if (jtj) jtj->setZero();
        if (jtr) jtr->setZero();
        Vec grad;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = model(xs[i], q, grad) - ys[i];
            sse += r * r;
            if (jtj) *jtj += grad * grad.transpose();
            if (jtr) *jtr += grad * r;
        }
        return sse;
    };

    Mat jtj;
    Vec jtr;
    double sse = evaluate(p, &jtj, &jtr);
    if (!std::isfinite(sse)) return {p, sse, 0, false};

    double lambda = 1e-3;
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        if (sse == 0.0 || jtr.cwiseAbs().maxCoeff() == 0.0) return {p, sse, iter, true};
        bool accepted = false;
        Vec step;
        while (lambda < 1e20) {
            Mat damped = jtj;
            for (int k = 0; k < P; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
            step = damped.ldlt().solve(-jtr);
            const Vec trial = p + step;
            const double trial_sse = step.allFinite() ? evaluate(trial, nullptr, nullptr)
                                                      : std::numeric_limits<double>::infinity();
            if (std::isfinite(trial_sse) && trial_sse <= sse) {
                // Gain ratio: actual over predicted reduction of the linearized model.
                const double predicted = -(2.0 * step.dot(jtr) + step.dot(jtj * step));
                const double rho = predicted > 0.0 ? (sse - trial_sse) / predicted : 0.0;
                p = trial;
                accepted = true;
                if (rho > 0.75)
                    lambda = std::max(lambda / 3.0, 1e-12);
                else if (rho < 0.25)
                    lambda *= 2.0;
                break;
            }
            lambda *= 10.0;
        }
        // No downhill step at any damping: p is a local minimum to working precision.
        if (!accepted) return {p, sse, iter, true};
        const double previous = sse;
        sse = evaluate(p, &jtj, &jtr);
        if (step.cwiseAbs().maxCoeff() <= opt.param_tol * (1.0 + p.cwiseAbs().maxCoeff()) ||
            previous - sse <= opt.sse_tol * previous)
            return {p, sse, iter, true};
    }
    return {p, sse, opt.max_iterations, false};
}

struct ExpDecayFit {
    double a;
    double b;
    double adj_r2;
    double sse;
};

/// Least-squares fit of y = a * exp(-b * x), with the adjusted coefficient of
/// determination 1 - (1 - R^2)(n - 1)/(n - 3).
inline ExpDecayFit fit_exp_decay(std::span<const double> xs, std::span<const double> ys,
                                 const LmOptions& opt = {}) {
    require(xs.size() == ys.size(), ErrorKind::InvalidArgument, "xs and ys differ in length");
    require(xs.size() >= 4, ErrorKind::InvalidArgument, "exponential fit needs at least 4 points");
    require(!stats::all_equal(ys), ErrorKind::FitDegenerate, "constant data cannot be fit");
    const std::size_t n = xs.size();

    using Vec2 = Eigen::Vector2d;
    const auto model = [](double x, const Vec2& p, Vec2& grad) {
        const double e = std::exp(-p(1) * x);
        grad(0) = e;
        grad(1) = -p(0) * x * e;
        return p(0) * e;
    };

    // Seeds: log-linear regression when the data share one sign, plus a flat start.
    std::vector<Vec2> seeds;
    const bool all_pos = std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; });
    const bool all_neg = std::all_of(ys.begin(), ys.end(), [](double y) { return y < 0.0; });
    if (all_pos || all_neg) {
        const double sign = all_pos ? 1.0 : -1.0;
        std::vector<double> ly(n);
        for (std::size_t i = 0; i < n; ++i) ly[i] = std::log(sign * ys[i]);
        const double mx = stats::mean(xs), my = stats::mean(ly);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (xs[i] - mx) * (ly[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        if (sxx > 0.0) {
            const double slope = sxy / sxx;
            seeds.emplace_back(sign * std::exp(my - slope * mx), -slope);
        }
    }
    seeds.emplace_back(stats::mean(ys), 0.0);

    bool any = false;
    LmResult<2> best{};
    for (const auto& seed : seeds) {
        const auto r = levenberg_marquardt<2>(model, xs, ys, seed, opt);
        if (!r.converged || !std::isfinite(r.sse)) continue;
        if (!any || r.sse < best.sse) best = r;
        any = true;
    }
    require(any, ErrorKind::NumericalFailure, "exponential fit did not converge");

    const double sst = stats::sum_sq_dev(ys, stats::mean(ys));
    const double r2 = 1.0 - best.sse / sst;
    const double nd = static_cast<double>(n);
    const double adj = 1.0 - (1.0 - r2) * (nd - 1.0) / (nd - 3.0);
    return {best.params(0), best.params(1), adj, best.sse};
}

} // namespace hcts
