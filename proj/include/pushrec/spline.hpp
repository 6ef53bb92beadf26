#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <vector>

#include "pushrec/errors.hpp"

namespace pushrec {

/// Natural cubic interpolating spline.
///
/// Piecewise S_i(x) = a_i + b_i*dx + c_i*dx^2 + d_i*dx^3 with dx = x - x_i,
/// second derivative zero at both end knots. Outside the knot span the
/// spline continues linearly with the end slope.
template <typename Scalar = double>
class NaturalCubicSpline {
public:
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    NaturalCubicSpline() = default;

    const Vec& knots_x() const { return x_; }
    const Vec& knots_y() const { return a_; }
    Eigen::Index interval_count() const { return x_.size() - 1; }

    /// Coefficients (a, b, c, d) of interval i, in powers of (x - x_i).
    Eigen::Matrix<Scalar, 4, 1> coefficients(Eigen::Index i) const {
        return {a_[i], b_[i], c_[i], d_[i]};
    }

    Scalar operator()(Scalar x) const { return eval(x); }

    Scalar eval(Scalar x) const {
        if (x < x_[0]) return a_[0] + slope_front_ * (x - x_[0]);
        const Eigen::Index last = x_.size() - 1;
        if (x > x_[last]) return a_[last] + slope_back_ * (x - x_[last]);
        const Eigen::Index i = interval_for(x);
        const Scalar dx = x - x_[i];
        return a_[i] + dx * (b_[i] + dx * (c_[i] + dx * d_[i]));
    }

    /// First derivative (end slope outside the knot span).
    Scalar deriv(Scalar x) const {
        if (x < x_[0]) return slope_front_;
        if (x > x_[x_.size() - 1]) return slope_back_;
        const Eigen::Index i = interval_for(x);
        const Scalar dx = x - x_[i];
        return b_[i] + dx * (Scalar(2) * c_[i] + Scalar(3) * dx * d_[i]);
    }

    /// Second derivative (zero outside the knot span).
    Scalar second_deriv(Scalar x) const {
        if (x < x_[0] || x > x_[x_.size() - 1]) return Scalar(0);
        const Eigen::Index i = interval_for(x);
        return Scalar(2) * c_[i] + Scalar(6) * (x - x_[i]) * d_[i];
    }

    /// Derivatives evaluated from inside interval i at its right knot;
    /// lets continuity at interior knots be checked from both sides.
    Scalar deriv_from_left(Eigen::Index knot) const {
        const Eigen::Index i = knot - 1;
        const Scalar h = x_[knot] - x_[i];
        return b_[i] + h * (Scalar(2) * c_[i] + Scalar(3) * h * d_[i]);
    }
    Scalar second_deriv_from_left(Eigen::Index knot) const {
        const Eigen::Index i = knot - 1;
        return Scalar(2) * c_[i] + Scalar(6) * (x_[knot] - x_[i]) * d_[i];
    }

    template <typename S>
    friend NaturalCubicSpline<S> fit_natural_cubic_spline(
        const Eigen::Ref<const Eigen::Matrix<S, Eigen::Dynamic, 1>>& x,
        const Eigen::Ref<const Eigen::Matrix<S, Eigen::Dynamic, 1>>& y);

private:
    Eigen::Index interval_for(Scalar x) const {
        // rightmost i with x_[i] <= x, clamped to the last interval
        const Scalar* begin = x_.data();
        const Scalar* end = begin + x_.size();
        Eigen::Index i = std::upper_bound(begin, end, x) - begin - 1;
        return std::clamp<Eigen::Index>(i, 0, x_.size() - 2);
    }

    Vec x_, a_, b_, c_, d_;
    Scalar slope_front_ = 0, slope_back_ = 0;
};

/// Solve the natural-spline tridiagonal system for the knot second
/// derivatives and convert to per-interval coefficients.
template <typename Scalar>
NaturalCubicSpline<Scalar> fit_natural_cubic_spline(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& x,
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& y) {
    const Eigen::Index n = x.size();
    if (n != y.size()) throw DataError("spline: x and y lengths differ");
    if (n < 2) throw DataError("spline: need at least 2 knots");
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (!(x[i] < x[i + 1]))
            throw DataError("spline: knot abscissae must be strictly increasing");

    using Vec = typename NaturalCubicSpline<Scalar>::Vec;
    Vec h(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

    // second derivatives m at the knots; natural: m[0] = m[n-1] = 0
    Vec m = Vec::Zero(n);
    if (n > 2) {
        const Eigen::Index k = n - 2;  // interior unknowns
        Vec diag(k), rhs(k), sub(k), sup(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            diag[i] = Scalar(2) * (h[i] + h[i + 1]);
            sub[i] = h[i];
            sup[i] = h[i + 1];
            rhs[i] = Scalar(6) * ((y[i + 2] - y[i + 1]) / h[i + 1] - (y[i + 1] - y[i]) / h[i]);
        }
        // Thomas algorithm; the system is strictly diagonally dominant
        for (Eigen::Index i = 1; i < k; ++i) {
            const Scalar w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for (Eigen::Index i = k - 1; i >= 1; --i)
            m[i] = (rhs[i - 1] - sup[i - 1] * m[i + 1]) / diag[i - 1];
    }

    NaturalCubicSpline<Scalar> s;
    s.x_ = x;
    s.a_ = y;
    s.b_.resize(n - 1);
    s.c_.resize(n - 1);
    s.d_.resize(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        s.b_[i] = (y[i + 1] - y[i]) / h[i] - h[i] * (Scalar(2) * m[i] + m[i + 1]) / Scalar(6);
        s.c_[i] = m[i] / Scalar(2);
        s.d_[i] = (m[i + 1] - m[i]) / (Scalar(6) * h[i]);
    }
    s.slope_front_ = s.b_[0];
    s.slope_back_ = s.deriv_from_left(n - 1);
    return s;
}

inline NaturalCubicSpline<double> fit_natural_cubic_spline(const Eigen::VectorXd& x,
                                                           const Eigen::VectorXd& y) {
    return fit_natural_cubic_spline<double>(x, y);
}

}  // namespace pushrec
