#include "pushrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pushrec {

namespace {

// Pinned uniform/normal generation so trials are reproducible bit-for-bit
// across platforms (std distributions are not specified exactly).
double uniform01(std::mt19937& rng) {
    return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
}

double normal(std::mt19937& rng) {
    const double u1 = uniform01(rng), u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int quantize(double value, std::mt19937& rng, double noise_rms) {
    if (noise_rms > 0) value += noise_rms * normal(rng);
    const long c = std::lround(value);
    return static_cast<int>(std::clamp(c, 0L, 999L));
}

}  // namespace

RawTrial synthesize_trial(const SubjectMeta& meta, const PushCondition& condition,
                          const PushSpec& push, double noise_rms_counts, std::uint32_t seed,
                          const SynthConfig& cfg) {
    meta.validate();
    if (!(cfg.rate_hz > 0) || !(cfg.duration_s > 0))
        throw DataError("synth: rate and duration must be positive");
    if (noise_rms_counts < 0) throw DataError("synth: noise rms must be non-negative");
    if (push.onset_s < 0) throw DataError("synth: push onset must be non-negative");

    std::mt19937 rng(seed);
    const double coupling = cfg.coupling_range * (2.0 * uniform01(rng) - 1.0);

    // side factors: a right-handed subject recovers with the left side
    double left_factor = 1.0, right_factor = 1.0;
    if (meta.handedness == Handedness::Right) {
        left_factor = cfg.active_side_factor;
        right_factor = cfg.passive_side_factor;
    } else if (meta.handedness == Handedness::Left) {
        left_factor = cfg.passive_side_factor;
        right_factor = cfg.active_side_factor;
    }

    const IdealGait gait(cfg.cycle_s, cfg.gait);
    const double counts_per_deg = 1.0 / cfg.angle_scale_deg_per_count;
    const double counts_per_n = 1.0 / cfg.force_scale_n_per_count;
    const double accel_counts_per_g = 999.0 / (2.0 * cfg.accel_full_scale_g);
    const double gyro_counts_per_dps = 999.0 / (2.0 * cfg.gyro_full_scale_dps);
    const double accel_mid = 999.0 / 2.0, gyro_mid = 999.0 / 2.0;

    const auto response = [&](double t) {
        const double tau = t - push.onset_s;
        if (tau < 0) return 0.0;
        return std::exp(-tau / cfg.response_decay_s) *
               std::sin(2.0 * M_PI * tau / cfg.response_period_s);
    };
    const auto joint_response_deg = [&](Joint j, Side s, double t) {
        const double base = cfg.response_deg_per_ns[static_cast<int>(j)] * push.impulse_ns;
        const double side = (s == Side::Left) ? left_factor : right_factor;
        double couple = 1.0;
        if (j == Joint::Knee) couple = 1.0 + coupling;
        if (j == Joint::Ankle) couple = 1.0 - coupling;
        return base * side * couple * response(t);
    };

    const double force_peak_n =
        cfg.force_pulse_s > 0 ? push.impulse_ns * M_PI / (2.0 * cfg.force_pulse_s) : 0.0;

    RawTrial trial;
    trial.meta = meta;
    trial.condition = condition;

    const auto n = static_cast<long>(std::floor(cfg.duration_s * cfg.rate_hz + 1e-9)) + 1;
    for (long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / cfg.rate_hz;
        RawSample s;
        s.t = t;

        for (Joint j : kJoints) {
            for (Side side : kSides) {
                double deg = joint_response_deg(j, side, t);
                if (condition.stance == Stance::Dynamic) deg += gait.eval_time(j, t);
                const double counts =
                    cfg.rest_counts[static_cast<int>(j)] + deg * counts_per_deg;
                s.joint_counts[channel_index(j, side)] =
                    quantize(counts, rng, noise_rms_counts);
            }
        }

        double force_n = 0.0;
        const double tau = t - push.onset_s;
        if (tau >= 0 && tau <= cfg.force_pulse_s && cfg.force_pulse_s > 0)
            force_n = force_peak_n * std::sin(M_PI * tau / cfg.force_pulse_s);
        s.force_count = quantize(force_n * counts_per_n, rng, noise_rms_counts);

        // the trunk IMU sees gravity on z plus a sagittal push transient
        const double ax_g = cfg.accel_response_g_per_ns * push.impulse_ns * response(t);
        const double gy_dps = cfg.gyro_response_dps_per_ns * push.impulse_ns * response(t);
        s.accel_counts[0] = quantize(accel_mid + ax_g * accel_counts_per_g, rng,
                                     noise_rms_counts);
        s.accel_counts[1] = quantize(accel_mid, rng, noise_rms_counts);
        s.accel_counts[2] = quantize(accel_mid + 1.0 * accel_counts_per_g, rng,
                                     noise_rms_counts);
        s.gyro_counts[0] = quantize(gyro_mid, rng, noise_rms_counts);
        s.gyro_counts[1] = quantize(gyro_mid + gy_dps * gyro_counts_per_dps, rng,
                                    noise_rms_counts);
        s.gyro_counts[2] = quantize(gyro_mid, rng, noise_rms_counts);

        trial.samples.push_back(s);
    }
    trial.sample_rate_hz = RawTrial::derive_rate(trial.samples);
    return trial;
}

}  // namespace pushrec
