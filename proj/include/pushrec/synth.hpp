#pragma once

#include <cstdint>

#include "pushrec/gait.hpp"
#include "pushrec/types.hpp"

namespace pushrec {

struct PushSpec {
    double onset_s = 3.0;
    double impulse_ns = 1.0;  // N*s
};

struct SynthConfig {
    double rate_hz = 100.0;
    double duration_s = 10.0;
    double cycle_s = 1.2;  // gait cycle for dynamic stance

    // rest counts per joint (hip, knee, ankle), both sides
    std::array<double, 3> rest_counts{500.0, 450.0, 470.0};
    GaitAmplitudes gait;  // dynamic-stance waveform amplitudes, degrees

    // push response: damped sinusoid, degrees per N*s of impulse
    std::array<double, 3> response_deg_per_ns{6.0, 12.0, 3.0};  // hip, knee, ankle
    double response_decay_s = 0.4;
    double response_period_s = 0.8;
    // side asymmetry: the side opposite the handedness works harder
    double active_side_factor = 1.35;
    double passive_side_factor = 0.65;
    // per-trial inverse knee/ankle coupling: knee *= 1+u, ankle *= 1-u
    double coupling_range = 0.25;

    double force_pulse_s = 0.3;  // half-sine push-force contact time

    double accel_response_g_per_ns = 0.05;
    double gyro_response_dps_per_ns = 30.0;

    double angle_scale_deg_per_count = 300.0 / 999.0;
    double force_scale_n_per_count = 9.8 / 1000.0;
    double accel_full_scale_g = 16.0;
    double gyro_full_scale_dps = 2000.0;
};

/// Deterministic synthetic trial: ideal gait (dynamic stance) or constant
/// posture (static), a push response whose side asymmetry follows the
/// subject's handedness, additive Gaussian count noise, quantization to
/// [0, 999]. Identical output for identical arguments and seed.
RawTrial synthesize_trial(const SubjectMeta& meta, const PushCondition& condition,
                          const PushSpec& push, double noise_rms_counts, std::uint32_t seed,
                          const SynthConfig& config = {});

}  // namespace pushrec
