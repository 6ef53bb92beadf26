#pragma once

#include <Eigen/Dense>

#include "pushrec/errors.hpp"

namespace pushrec {

template <typename Scalar = double>
struct PolyFit {
    int degree = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;  // ascending powers
    Scalar residual_rms = 0;

    Scalar eval(Scalar x) const {
        Scalar v = 0;
        for (Eigen::Index i = coefficients.size() - 1; i >= 0; --i)
            v = v * x + coefficients[i];
        return v;
    }
    Scalar operator()(Scalar x) const { return eval(x); }
};

/// Least-squares fit of an ascending-power polynomial by column-pivoted
/// Householder QR on the Vandermonde matrix (no normal equations).
template <typename Scalar>
PolyFit<Scalar> fit_polynomial(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& x,
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& y, int degree) {
    const Eigen::Index n = x.size();
    if (n != y.size()) throw DataError("polyfit: x and y lengths differ");
    if (degree < 0) throw DataError("polyfit: degree must be non-negative");
    if (n < degree + 1)
        throw DataError("polyfit: need at least degree+1 = " + std::to_string(degree + 1) +
                        " points, got " + std::to_string(n));
    if (degree > 0) {
        bool all_same = true;
        for (Eigen::Index i = 1; i < n && all_same; ++i) all_same = (x[i] == x[0]);
        if (all_same) throw DataError("polyfit: abscissae are all identical");
    }

    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat vander(n, degree + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar p = 1;
        for (int j = 0; j <= degree; ++j) {
            vander(i, j) = p;
            p *= x[i];
        }
    }

    Eigen::ColPivHouseholderQR<Mat> qr(vander);
    if (qr.rank() < degree + 1)
        throw NumericError("polyfit: rank-deficient Vandermonde (rank " +
                           std::to_string(qr.rank()) + "); reduce degree to " +
                           std::to_string(qr.rank() - 1));

    PolyFit<Scalar> fit;
    fit.degree = degree;
    fit.coefficients = qr.solve(y);
    fit.residual_rms = std::sqrt((vander * fit.coefficients - y).squaredNorm() / Scalar(n));
    return fit;
}

inline PolyFit<double> fit_polynomial(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                      int degree) {
    return fit_polynomial<double>(x, y, degree);
}

}  // namespace pushrec
