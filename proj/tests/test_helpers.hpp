#pragma once

#include <random>
#include <string>

#include "pushrec/types.hpp"

#ifndef PUSHREC_FIXTURE_DIR
#error "PUSHREC_FIXTURE_DIR must be defined by the build"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(PUSHREC_FIXTURE_DIR) + "/" + name;
}

/// Random but always-valid trial for round-trip properties.
inline pushrec::RawTrial random_trial(std::mt19937& rng, int n_samples) {
    using namespace pushrec;
    std::uniform_int_distribution<int> count(0, 999);
    std::uniform_real_distribution<double> dt(0.001, 0.05);
    std::uniform_real_distribution<double> pos(0.1, 100.0);
    std::uniform_int_distribution<int> coin(0, 1);

    RawTrial trial;
    trial.meta.height_m = 1.4 + 0.01 * (rng() % 60);
    trial.meta.weight_kg = 40.0 + (rng() % 80);
    trial.meta.sex = coin(rng) ? Sex::Male : Sex::Female;
    trial.meta.handedness =
        std::array{Handedness::Left, Handedness::Right, Handedness::Unknown}[rng() % 3];
    trial.meta.age_years = 10 + (rng() % 70);
    trial.condition.eyes = coin(rng) ? Eyes::Open : Eyes::Closed;
    trial.condition.lunging = coin(rng) ? Lunging::With : Lunging::Without;
    trial.condition.stance = coin(rng) ? Stance::Static : Stance::Dynamic;

    double t = pos(rng);
    for (int i = 0; i < n_samples; ++i) {
        RawSample s;
        s.t = t;
        t += dt(rng);
        for (int& c : s.joint_counts) c = count(rng);
        s.force_count = count(rng);
        for (int& c : s.accel_counts) c = count(rng);
        for (int& c : s.gyro_counts) c = count(rng);
        trial.samples.push_back(s);
    }
    trial.sample_rate_hz = RawTrial::derive_rate(trial.samples);
    return trial;
}

}  // namespace testutil
