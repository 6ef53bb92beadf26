#pragma once

#include <Eigen/Core>
#include <cmath>
#include <variant>

#include "pushrec/polyfit.hpp"
#include "pushrec/spline.hpp"

namespace pushrec {

struct SplineMethod {};
struct PolyMethod {
    int degree = 7;
};
using SmoothMethod = std::variant<SplineMethod, PolyMethod>;

/// Smoothed values on an arbitrary evaluation grid.
inline Eigen::VectorXd smooth_eval(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                                   const SmoothMethod& method, const Eigen::VectorXd& grid) {
    Eigen::VectorXd out(grid.size());
    if (std::holds_alternative<SplineMethod>(method)) {
        const auto s = fit_natural_cubic_spline(t, y);
        for (Eigen::Index i = 0; i < grid.size(); ++i) out[i] = s.eval(grid[i]);
    } else {
        const int degree = std::get<PolyMethod>(method).degree;
        const auto p = fit_polynomial(t, y, degree);
        for (Eigen::Index i = 0; i < grid.size(); ++i) out[i] = p.eval(grid[i]);
    }
    return out;
}

/// Uniform grid spanning [t0, t_last]: t0 + k/rate for k = 0..floor(span*rate).
inline Eigen::VectorXd uniform_grid(double t0, double t_last, double rate) {
    if (!(rate > 0)) throw DataError("resample: rate must be positive");
    if (!(t_last >= t0)) throw DataError("resample: empty time range");
    const auto k = static_cast<Eigen::Index>(std::floor((t_last - t0) * rate + 1e-9));
    Eigen::VectorXd grid(k + 1);
    for (Eigen::Index i = 0; i <= k; ++i) grid[i] = t0 + static_cast<double>(i) / rate;
    return grid;
}

struct ResampledSeries {
    Eigen::VectorXd t;
    Eigen::VectorXd y;
};

inline ResampledSeries resample_uniform(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                                        double rate, const SmoothMethod& method) {
    if (t.size() == 0) throw DataError("resample: empty series");
    if (t.size() == 1) {
        // degenerate but legal: a single sample resamples to itself
        return {t, y};
    }
    ResampledSeries out;
    out.t = uniform_grid(t[0], t[t.size() - 1], rate);
    out.y = smooth_eval(t, y, method, out.t);
    return out;
}

}  // namespace pushrec
