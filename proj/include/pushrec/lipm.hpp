#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

#include "pushrec/errors.hpp"
#include "pushrec/types.hpp"

namespace pushrec {

// Linear inverted pendulum in the sagittal plane: the CoM rides at a
// constant height z0, so xddot = omega^2 (x - p) with omega = sqrt(g/z0)
// and p the center of pressure under the stance foot.

struct LipmParams {
    double g = 9.8;     // m/s^2
    double z0 = 1.0;    // m
    double mass = 70.0; // kg
    double omega = std::sqrt(9.8);  // 1/s, cached sqrt(g/z0)

    static LipmParams make(double g, double z0, double mass) {
        if (!(g > 0) || !(z0 > 0) || !(mass > 0))
            throw DataError("lipm: g, z0 and mass must be positive");
        return {g, z0, mass, std::sqrt(g / z0)};
    }

    /// CoM height from subject stature at the standard 0.57 fraction.
    static LipmParams from_subject(const SubjectMeta& meta, double g = 9.8,
                                   double z0_fraction = 0.57) {
        meta.validate();
        return make(g, z0_fraction * meta.height_m, meta.weight_kg);
    }
};

struct PhasePoint {
    double x = 0.0;     // m, CoM ahead of the ankle
    double xdot = 0.0;  // m/s
};

/// Admissible CoP range under the stance foot, relative to the ankle.
struct FootGeometry {
    double cop_min = -0.05;  // m, heel
    double cop_max = 0.15;   // m, toe

    void validate() const {
        if (!(cop_min < cop_max)) throw DataError("foot: cop_min must be < cop_max");
    }
    double mid() const { return 0.5 * (cop_min + cop_max); }
    double clamp(double p) const { return std::min(std::max(p, cop_min), cop_max); }
};

/// The line xdot = omega (cop_max - x) in the phase plane: states below it
/// (and above the mirror line through cop_min) can stop without stepping.
struct DecisionBoundary {
    double omega = 0.0;
    double cop_max = 0.0;

    double xdot_at(double x) const { return omega * (cop_max - x); }
};

enum class Verdict { Recoverable, Fall };

enum class CopPolicy {
    FixedCop,    // hold the CoP where it was before the push
    CaptureCop,  // track the capture point, clamped to the foot
    BangBang     // full toe or full heel, switched on the capture point
};

struct PhaseTrajectory {
    Eigen::VectorXd t;
    Eigen::VectorXd x;
    Eigen::VectorXd xdot;
    Eigen::VectorXd p;
};

struct RecoveryReport {
    Verdict verdict = Verdict::Fall;
    double capture_point = 0.0;   // m
    double boundary_margin = 0.0; // m/s, signed distance inside the recoverable wedge
    PhaseTrajectory trajectory;
};

using CopFunction = std::function<double(double t, const PhasePoint&)>;

inline double capture_point(const LipmParams& params, const PhasePoint& s) {
    return s.x + s.xdot / params.omega;
}

/// Instantaneous horizontal impulse: x unchanged, xdot += J/m.
inline PhasePoint apply_push(const LipmParams& params, const PhasePoint& s, double impulse) {
    if (!std::isfinite(impulse)) throw DataError("push impulse must be finite");
    return {s.x, s.xdot + impulse / params.mass};
}

/// Conserved along constant-CoP trajectories:
/// E = xdot^2/2 - omega^2 (x - p)^2 / 2.
inline double orbital_energy(const LipmParams& params, const PhasePoint& s, double p) {
    const double d = s.x - p;
    return 0.5 * s.xdot * s.xdot - 0.5 * params.omega * params.omega * d * d;
}

inline DecisionBoundary decision_boundary(const LipmParams& params, const FootGeometry& foot) {
    foot.validate();
    return {params.omega, foot.cop_max};
}

/// RK4 trajectory of xddot = omega^2 (x - p(t, state)). The CoP function is
/// responsible for staying within the foot (use FootGeometry::clamp).
PhaseTrajectory simulate_lipm(const LipmParams& params, const PhasePoint& initial,
                              const CopFunction& cop, double dt, double t_end);

/// Closed form for constant CoP: x(t) = p + (x0-p) cosh(wt) + xdot0/w sinh(wt).
inline PhasePoint lipm_closed_form(const LipmParams& params, const PhasePoint& s0, double p,
                                   double t) {
    const double w = params.omega;
    const double c = std::cosh(w * t), sh = std::sinh(w * t);
    return {p + (s0.x - p) * c + s0.xdot / w * sh,
            (s0.x - p) * w * sh + s0.xdot * c};
}

/// Signed margin of the capture point inside [cop_min, cop_max], expressed
/// as a velocity: min over both foot edges of the distance below the edge's
/// boundary line. Non-negative iff the state is capturable without a step.
inline double boundary_margin(const LipmParams& params, const FootGeometry& foot,
                              const PhasePoint& s) {
    const double w = params.omega;
    const double below_toe = w * (foot.cop_max - s.x) - s.xdot;
    const double above_heel = s.xdot - w * (foot.cop_min - s.x);
    return std::min(below_toe, above_heel);
}

/// Recoverable iff the capture point lies inside the foot, boundary
/// inclusive. When recoverable the report carries the stabilizing
/// trajectory with the CoP held at the capture point.
RecoveryReport classify_recovery(const LipmParams& params, const FootGeometry& foot,
                                 const PhasePoint& state, double dt = 1e-3,
                                 double horizon = 3.0);

struct PhaseOptions {
    double dt = 1e-3;
    double t_end = 5.0;
    double escape_radius = 1.0;  // m from the foot midpoint; stops the run
};

/// Push, then simulate under the chosen CoP policy. The verdict is the
/// capture condition against the support the policy can actually use: the
/// full foot for CaptureCop/BangBang, the single held point for FixedCop.
/// The simulation stops early once the CoM escapes the radius.
RecoveryReport phase_trajectory(const LipmParams& params, const FootGeometry& foot,
                                const PhasePoint& initial, double impulse, CopPolicy policy,
                                const PhaseOptions& opts = {});

}  // namespace pushrec
