#include "pushrec/convert.hpp"

namespace pushrec {

JointCounts zero_correct(const RawTrial& trial, int rest_window) {
    const int n = static_cast<int>(trial.samples.size());
    if (n == 0) throw DataError("cannot zero-correct an empty trial");
    if (rest_window < 1 || rest_window > n)
        throw DataError("rest window must be in [1, sample count], got " +
                        std::to_string(rest_window));
    JointCounts theta0 = JointCounts::Zero();
    for (int k = 0; k < rest_window; ++k)
        for (int c = 0; c < 6; ++c) theta0[c] += trial.samples[k].joint_counts[c];
    return theta0 / static_cast<double>(rest_window);
}

ConvertedTrial convert_trial(const RawTrial& trial, const JointCounts& theta0,
                             const ConversionConfig& cfg) {
    const Eigen::Index n = static_cast<Eigen::Index>(trial.samples.size());

    ConvertedTrial out;
    out.meta = trial.meta;
    out.condition = trial.condition;
    out.sample_rate_hz = trial.sample_rate_hz;

    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) t[i] = trial.samples[i].t;

    for (Joint j : kJoints) {
        for (Side s : kSides) {
            const int c = channel_index(j, s);
            JointSeries& series = out.joints[c];
            series.joint = j;
            series.side = s;
            series.t = t;
            series.angle_deg.resize(n);
            for (Eigen::Index i = 0; i < n; ++i)
                series.angle_deg[i] = counts_to_angle(trial.samples[i].joint_counts[c],
                                                      theta0[c], cfg.angle_scale_deg_per_count);
        }
    }

    out.force.t = t;
    out.force.force_n.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out.force.force_n[i] =
            counts_to_force(trial.samples[i].force_count, cfg.force_scale_n_per_count);

    out.imu.t = t;
    out.imu.accel_g.resize(n, 3);
    out.imu.gyro_dps.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int a = 0; a < 3; ++a) {
            out.imu.accel_g(i, a) =
                counts_to_imu(trial.samples[i].accel_counts[a], cfg.accel_full_scale_g);
            out.imu.gyro_dps(i, a) =
                counts_to_imu(trial.samples[i].gyro_counts[a], cfg.gyro_full_scale_dps);
        }
    }
    return out;
}

}  // namespace pushrec
