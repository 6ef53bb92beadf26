#include <doctest.h>

#include <cmath>

#include "pushrec/resample.hpp"

using namespace pushrec;
using Eigen::VectorXd;

TEST_CASE("resampling at the original rate reproduces a uniform series") {
    const int n = 50;
    VectorXd t(n), y(n);
    for (int i = 0; i < n; ++i) {
        t[i] = 0.01 * i;
        y[i] = std::cos(3.0 * t[i]) + 0.2 * t[i];
    }
    const auto r = resample_uniform(t, y, 100.0, SplineMethod{});
    REQUIRE(r.t.size() == n);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(r.t[i] - t[i]) < 1e-12);
        CHECK(std::abs(r.y[i] - y[i]) < 1e-9);
    }
}

TEST_CASE("constant series stays constant under either smoother") {
    VectorXd t(5), y(5);
    t << 0, 0.1, 0.25, 0.5, 1.0;
    y.setConstant(4.2);
    for (const SmoothMethod& m : {SmoothMethod{SplineMethod{}}, SmoothMethod{PolyMethod{3}}}) {
        const auto r = resample_uniform(t, y, 7.0, m);
        for (Eigen::Index i = 0; i < r.y.size(); ++i)
            CHECK(r.y[i] == doctest::Approx(4.2).epsilon(1e-9));
    }
}

TEST_CASE("1 Hz sine upsampled 100 -> 200 Hz tracks the analytic sine") {
    const int n = 101;  // one second inclusive
    VectorXd t(n), y(n);
    for (int i = 0; i < n; ++i) {
        t[i] = i / 100.0;
        y[i] = std::sin(2 * M_PI * t[i]);
    }
    const auto r = resample_uniform(t, y, 200.0, SplineMethod{});
    REQUIRE(r.t.size() == 201);
    double max_err = 0;
    for (Eigen::Index i = 0; i < r.t.size(); ++i)
        max_err = std::max(max_err, std::abs(r.y[i] - std::sin(2 * M_PI * r.t[i])));
    CHECK(max_err <= 1e-3);
}

TEST_CASE("uniform grid spans the original range") {
    const VectorXd g = uniform_grid(1.0, 2.0, 4.0);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 1.0);
    CHECK(g[4] == doctest::Approx(2.0));

    // non-divisible span: last grid point stays inside
    const VectorXd g2 = uniform_grid(0.0, 1.0, 3.0);
    REQUIRE(g2.size() == 4);
    CHECK(g2[3] == doctest::Approx(1.0));

    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0.0), DataError);
}

TEST_CASE("polynomial method reproduces polynomial data exactly") {
    VectorXd t(9), y(9);
    for (int i = 0; i < 9; ++i) {
        t[i] = 0.125 * i;
        y[i] = 1.0 - 2.0 * t[i] + 0.5 * t[i] * t[i];
    }
    const auto r = resample_uniform(t, y, 17.0, PolyMethod{2});
    for (Eigen::Index i = 0; i < r.t.size(); ++i) {
        const double expect = 1.0 - 2.0 * r.t[i] + 0.5 * r.t[i] * r.t[i];
        CHECK(r.y[i] == doctest::Approx(expect).epsilon(1e-10));
    }
}
