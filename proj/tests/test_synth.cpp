#include <doctest.h>

#include "pushrec/report.hpp"
#include "pushrec/synth.hpp"
#include "pushrec/trial_io.hpp"

using namespace pushrec;

namespace {
const SubjectMeta kRightHanded{1.75, 70.0, Sex::Male, Handedness::Right, 30.0};
const SubjectMeta kLeftHanded{1.75, 70.0, Sex::Male, Handedness::Left, 30.0};
const PushCondition kStatic{Eyes::Closed, Lunging::Without, Stance::Static};
const PushCondition kDynamic{Eyes::Closed, Lunging::Without, Stance::Dynamic};
}  // namespace

TEST_CASE("no noise, no push, static stance: every channel is constant") {
    const RawTrial t = synthesize_trial(kRightHanded, kStatic, {3.0, 0.0}, 0.0, 7);
    REQUIRE(t.samples.size() > 100);
    const RawSample& first = t.samples.front();
    for (const RawSample& s : t.samples) {
        CHECK(s.joint_counts == first.joint_counts);
        CHECK(s.force_count == first.force_count);
        CHECK(s.accel_counts == first.accel_counts);
        CHECK(s.gyro_counts == first.gyro_counts);
    }
    CHECK(first.force_count == 0);
}

TEST_CASE("same seed reproduces the trial byte for byte") {
    const RawTrial a = synthesize_trial(kRightHanded, kDynamic, {3.0, 1.0}, 2.0, 42);
    const RawTrial b = synthesize_trial(kRightHanded, kDynamic, {3.0, 1.0}, 2.0, 42);
    CHECK(serialize_trial(a) == serialize_trial(b));
    const RawTrial c = synthesize_trial(kRightHanded, kDynamic, {3.0, 1.0}, 2.0, 43);
    CHECK(serialize_trial(a) != serialize_trial(c));
}

TEST_CASE("synthetic trials satisfy the trial invariants") {
    for (std::uint32_t seed : {1u, 9u, 77u}) {
        const RawTrial t = synthesize_trial(kLeftHanded, kDynamic, {2.0, 1.5}, 3.0, seed);
        CHECK_NOTHROW(t.validate());
        const RawTrial back = parse_trial(serialize_trial(t));
        CHECK(back.samples == t.samples);
    }
}

TEST_CASE("generated handedness is recovered by the analysis pipeline") {
    const AnalysisConfig config;
    for (std::uint32_t seed = 1; seed <= 10; ++seed) {
        const RawTrial r = synthesize_trial(kRightHanded, kStatic, {3.0, 1.0}, 2.0, seed);
        CHECK(analyze_trial(r, config).handedness.inferred == InferredHand::Right);
        const RawTrial l = synthesize_trial(kLeftHanded, kStatic, {3.0, 1.0}, 2.0, 1000 + seed);
        CHECK(analyze_trial(l, config).handedness.inferred == InferredHand::Left);
    }
}

TEST_CASE("unknown handedness with no push stays indeterminate") {
    const SubjectMeta unknown{1.75, 70.0, Sex::Female, Handedness::Unknown, 25.0};
    const RawTrial t = synthesize_trial(unknown, kStatic, {3.0, 0.0}, 1.0, 5);
    const TrialAnalysis a = analyze_trial(t, AnalysisConfig{});
    CHECK(a.handedness.inferred == InferredHand::Indeterminate);
}

TEST_CASE("the push shows up in the force channel with the right impulse") {
    const SynthConfig cfg;
    const RawTrial t = synthesize_trial(kRightHanded, kStatic, {3.0, 1.0}, 0.0, 11, cfg);
    // trapezoidal integral of the converted force over the pulse
    double impulse = 0.0;
    for (size_t i = 1; i < t.samples.size(); ++i) {
        const double f0 = t.samples[i - 1].force_count * cfg.force_scale_n_per_count;
        const double f1 = t.samples[i].force_count * cfg.force_scale_n_per_count;
        impulse += 0.5 * (f0 + f1) * (t.samples[i].t - t.samples[i - 1].t);
    }
    CHECK(impulse == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("synth validation") {
    CHECK_THROWS_AS(synthesize_trial(kRightHanded, kStatic, {-1.0, 1.0}, 0.0, 1), DataError);
    CHECK_THROWS_AS(synthesize_trial(kRightHanded, kStatic, {3.0, 1.0}, -1.0, 1), DataError);
    SynthConfig bad;
    bad.rate_hz = 0;
    CHECK_THROWS_AS(synthesize_trial(kRightHanded, kStatic, {3.0, 1.0}, 0.0, 1, bad),
                    DataError);
}
