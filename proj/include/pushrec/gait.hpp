#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "pushrec/convert.hpp"
#include "pushrec/types.hpp"

namespace pushrec {

// ---------------------------------------------------------------------------
// Ideal gait signatures: one oscillation in the hip, two humps in the knee,
// two sharper humps in the ankle per cycle.

struct GaitAmplitudes {
    double hip_deg = 20.0;
    double knee_deg = 45.0;
    double ankle_deg = 25.0;

    double operator[](Joint j) const {
        switch (j) {
            case Joint::Hip: return hip_deg;
            case Joint::Knee: return knee_deg;
            case Joint::Ankle: return ankle_deg;
        }
        return 0;
    }
};

/// Reference waveforms over one normalized cycle (phase in [0,1)).
/// Lobe centers/widths are fixed constants; amplitudes scale each joint.
class IdealGait {
public:
    IdealGait(double cycle_s, GaitAmplitudes amplitudes);

    double cycle_s() const { return cycle_s_; }
    const GaitAmplitudes& amplitudes() const { return amps_; }

    /// Waveform value at a phase (wrapped into [0,1)).
    double eval(Joint j, double phase) const;

    /// Value at an absolute time, phase = t / cycle.
    double eval_time(Joint j, double t) const { return eval(j, t / cycle_s_); }

    /// n samples over one cycle at phases k/n.
    Eigen::VectorXd sample(Joint j, int n) const;

private:
    double cycle_s_;
    GaitAmplitudes amps_;
};

inline IdealGait ideal_gait(double cycle_s, GaitAmplitudes amplitudes) {
    return IdealGait(cycle_s, amplitudes);
}

/// Count local maxima of a periodic sampled waveform with topographic
/// prominence at least `prominence`.
int count_peaks(const Eigen::VectorXd& samples, double prominence);

// ---------------------------------------------------------------------------
// Deviation metrics and left/right asymmetry.

struct DeviationMetrics {
    double rms_deviation = 0.0;   // deg, vs the chosen baseline
    double peak_deviation = 0.0;  // deg
    double activity_score = 0.0;  // deg, rms vs the series' own rest window
};

/// Baseline for deviation_metrics: the mean over a leading rest window, or
/// a reference series interpolated onto the series' grid.
struct RestWindowBaseline {
    int window_samples = 10;
};
struct ReferenceBaseline {
    Eigen::VectorXd t;
    Eigen::VectorXd value;
};
using Baseline = std::variant<RestWindowBaseline, ReferenceBaseline>;

DeviationMetrics deviation_metrics(const JointSeries& series, const Baseline& baseline,
                                   int rest_window = 10);

/// Per-joint normalized left/right activity difference in [-1, 1];
/// positive means the left side is more active. Zero when both sides
/// are silent.
struct AsymmetryIndex {
    double hip = 0.0;
    double knee = 0.0;
    double ankle = 0.0;

    double operator[](Joint j) const {
        switch (j) {
            case Joint::Hip: return hip;
            case Joint::Knee: return knee;
            case Joint::Ankle: return ankle;
        }
        return 0;
    }
};

double asymmetry_component(const DeviationMetrics& left, const DeviationMetrics& right);

AsymmetryIndex asymmetry_index(const std::array<DeviationMetrics, 6>& per_channel);

// ---------------------------------------------------------------------------
// Handedness inference: the side opposite the dominant hand works harder, so
// a positive (left-heavy) aggregate points at a right-handed subject.

enum class InferredHand { Left, Right, Indeterminate };

struct JointWeights {
    double hip = 0.3;
    double knee = 0.5;  // the knee dominates push recovery
    double ankle = 0.2;
};

struct HandednessVerdict {
    InferredHand inferred = InferredHand::Indeterminate;
    double confidence = 0.0;  // in [0,1]
    double aggregate = 0.0;   // weighted asymmetry behind the verdict
};

HandednessVerdict infer_handedness(const AsymmetryIndex& indices,
                                   const JointWeights& weights = {}, double threshold = 0.1);

std::string to_string(InferredHand h);

// ---------------------------------------------------------------------------
// Knee/ankle tradeoff.

struct SideActivity {
    double knee = 0.0;
    double ankle = 0.0;
};

struct TradeoffTrial {
    std::optional<double> knee_ankle_ratio_right;
    std::optional<double> knee_ankle_ratio_left;
    int cross_side_sign = 0;  // 2-point rank correlation of (knee, ankle) across sides
};

struct TradeoffReport {
    std::vector<TradeoffTrial> trials;
    // across-trial rank correlation per side; omitted below 3 trials
    std::optional<double> spearman_right;
    std::optional<double> spearman_left;
};

/// activities[trial][side] with side indexed by static_cast<int>(Side).
TradeoffReport knee_ankle_tradeoff(
    const std::vector<std::array<SideActivity, 2>>& activities);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// variable has no rank variance.
double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// ---------------------------------------------------------------------------
// Center-of-pressure asymmetry between the feet.

double cop_asymmetry(const ForceSeries& left_foot, const ForceSeries& right_foot);

/// Swap every left/right channel pair; analysis of the result mirrors all
/// asymmetry indices and flips any non-indeterminate handedness verdict.
RawTrial mirror_trial(const RawTrial& trial);

}  // namespace pushrec
