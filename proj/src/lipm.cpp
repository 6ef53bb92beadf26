#include "pushrec/lipm.hpp"

#include <vector>

namespace pushrec {

PhaseTrajectory simulate_lipm(const LipmParams& params, const PhasePoint& initial,
                              const CopFunction& cop, double dt, double t_end) {
    if (!(dt > 0)) throw DataError("simulate_lipm: dt must be positive");
    if (t_end < 0) throw DataError("simulate_lipm: t_end must be non-negative");

    const double w2 = params.omega * params.omega;
    const auto steps = static_cast<Eigen::Index>(std::llround(t_end / dt));

    PhaseTrajectory out;
    out.t.resize(steps + 1);
    out.x.resize(steps + 1);
    out.xdot.resize(steps + 1);
    out.p.resize(steps + 1);

    PhasePoint s = initial;
    for (Eigen::Index k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (!std::isfinite(s.x) || !std::isfinite(s.xdot))
            throw NumericError("simulate_lipm: non-finite state at t = " + std::to_string(t));
        out.t[k] = t;
        out.x[k] = s.x;
        out.xdot[k] = s.xdot;
        out.p[k] = cop(t, s);
        if (k == steps) break;

        const auto accel = [&](double tt, const PhasePoint& ss) {
            return w2 * (ss.x - cop(tt, ss));
        };
        const double k1x = s.xdot, k1v = accel(t, s);
        const PhasePoint s2{s.x + dt / 2 * k1x, s.xdot + dt / 2 * k1v};
        const double k2x = s2.xdot, k2v = accel(t + dt / 2, s2);
        const PhasePoint s3{s.x + dt / 2 * k2x, s.xdot + dt / 2 * k2v};
        const double k3x = s3.xdot, k3v = accel(t + dt / 2, s3);
        const PhasePoint s4{s.x + dt * k3x, s.xdot + dt * k3v};
        const double k4x = s4.xdot, k4v = accel(t + dt, s4);

        s.x += dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
        s.xdot += dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return out;
}

RecoveryReport classify_recovery(const LipmParams& params, const FootGeometry& foot,
                                 const PhasePoint& state, double dt, double horizon) {
    foot.validate();
    RecoveryReport report;
    report.capture_point = capture_point(params, state);
    report.boundary_margin = boundary_margin(params, foot, state);
    report.verdict = report.boundary_margin >= 0 ? Verdict::Recoverable : Verdict::Fall;
    if (report.verdict == Verdict::Recoverable) {
        const double p = foot.clamp(report.capture_point);
        report.trajectory = simulate_lipm(
            params, state, [p](double, const PhasePoint&) { return p; }, dt, horizon);
    }
    return report;
}

RecoveryReport phase_trajectory(const LipmParams& params, const FootGeometry& foot,
                                const PhasePoint& initial, double impulse, CopPolicy policy,
                                const PhaseOptions& opts) {
    foot.validate();
    if (!(opts.escape_radius > 0))
        throw DataError("phase_trajectory: escape radius must be positive");

    const PhasePoint pushed = apply_push(params, initial, impulse);
    const double p_held = foot.clamp(initial.x);  // pre-push stance CoP

    CopFunction cop;
    switch (policy) {
        case CopPolicy::FixedCop:
            cop = [p_held](double, const PhasePoint&) { return p_held; };
            break;
        case CopPolicy::CaptureCop:
            cop = [&params, foot](double, const PhasePoint& s) {
                return foot.clamp(capture_point(params, s));
            };
            break;
        case CopPolicy::BangBang:
            cop = [&params, foot](double, const PhasePoint& s) {
                return capture_point(params, s) > foot.mid() ? foot.cop_max : foot.cop_min;
            };
            break;
    }

    RecoveryReport report;
    report.capture_point = capture_point(params, pushed);
    if (policy == CopPolicy::FixedCop) {
        // a held CoP stops only states whose capture point is exactly it;
        // +0.0 keeps the marginal case from printing as -0
        report.boundary_margin =
            -std::abs(params.omega * (p_held - pushed.x) - pushed.xdot) + 0.0;
    } else {
        report.boundary_margin = boundary_margin(params, foot, pushed);
    }
    report.verdict = report.boundary_margin >= 0 ? Verdict::Recoverable : Verdict::Fall;

    // simulate for the phase plot, stopping once the CoM escapes
    const double mid = foot.mid();
    PhaseTrajectory full = simulate_lipm(params, pushed, cop, opts.dt, opts.t_end);
    Eigen::Index keep = full.t.size();
    for (Eigen::Index k = 0; k < full.t.size(); ++k) {
        if (std::abs(full.x[k] - mid) > opts.escape_radius) {
            keep = k + 1;
            break;
        }
    }
    report.trajectory.t = full.t.head(keep);
    report.trajectory.x = full.x.head(keep);
    report.trajectory.xdot = full.xdot.head(keep);
    report.trajectory.p = full.p.head(keep);
    return report;
}

}  // namespace pushrec
