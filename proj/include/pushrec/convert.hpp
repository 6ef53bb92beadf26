#pragma once

#include <Eigen/Core>
#include <array>

#include "pushrec/types.hpp"

namespace pushrec {

/// Sensor scale factors. The angle scale defaults to 300/999 deg/count
/// (potentiometer sweep 0..300 deg over the full 0..999 count range);
/// pass 300/100 to follow the legacy printed formula instead.
struct ConversionConfig {
    double angle_scale_deg_per_count = 300.0 / 999.0;
    double force_scale_n_per_count = 9.8 / 1000.0;
    double accel_full_scale_g = 16.0;
    double gyro_full_scale_dps = 2000.0;
};

/// Angle change from rest: (theta - theta0) * scale. Negative results are
/// legal (joint flexed past its rest position).
inline double counts_to_angle(double theta, double theta0,
                              double scale = ConversionConfig{}.angle_scale_deg_per_count) {
    return (theta - theta0) * scale;
}

inline double counts_to_force(double f,
                              double scale = ConversionConfig{}.force_scale_n_per_count) {
    return f * scale;
}

/// Symmetric linear map: count 0 -> -full_scale, 999 -> +full_scale.
inline double counts_to_imu(double count, double full_scale) {
    return -full_scale + count * (2.0 * full_scale / 999.0);
}

using JointCounts = Eigen::Matrix<double, 6, 1>;

/// Rest-position count estimate per joint channel: mean over the first
/// rest_window samples.
JointCounts zero_correct(const RawTrial& trial, int rest_window);

struct ConvertedTrial {
    SubjectMeta meta;
    PushCondition condition;
    double sample_rate_hz = 1.0;
    std::array<JointSeries, 6> joints;  // indexed by channel_index(joint, side)
    ForceSeries force;
    ImuSeries imu;

    const JointSeries& joint(Joint j, Side s) const { return joints[channel_index(j, s)]; }
    JointSeries& joint(Joint j, Side s) { return joints[channel_index(j, s)]; }
};

/// Apply the count-to-unit maps sample-wise over a whole trial.
ConvertedTrial convert_trial(const RawTrial& trial, const JointCounts& theta0,
                             const ConversionConfig& cfg = {});

}  // namespace pushrec
