#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pushrec/convert.hpp"
#include "pushrec/gait.hpp"

namespace pushrec {

inline constexpr int kReportVersion = 1;

struct AnalysisConfig {
    ConversionConfig conversion;
    int rest_window = 10;       // samples for zero correction and activity baseline
    JointWeights weights;       // handedness aggregation
    double threshold = 0.1;     // indeterminate band for the aggregate
};

struct TrialAnalysis {
    std::string source;  // file name or label
    SubjectMeta meta;
    PushCondition condition;
    std::array<DeviationMetrics, 6> metrics;  // by channel_index(joint, side)
    AsymmetryIndex asymmetry;
    HandednessVerdict handedness;
};

struct BatchAnalysis {
    std::vector<TrialAnalysis> trials;
    TradeoffReport tradeoff;
    std::optional<double> cop_asymmetry_index;
};

/// Per-trial analytics on converted series: deviation metrics against the
/// pre-push rest window, left/right asymmetry, handedness inference.
TrialAnalysis analyze_converted(const ConvertedTrial& trial, const AnalysisConfig& config,
                                const std::string& source = "");

/// Zero-correct and convert first, then analyze.
TrialAnalysis analyze_trial(const RawTrial& trial, const AnalysisConfig& config,
                            const std::string& source = "");

BatchAnalysis analyze_batch(const std::vector<TrialAnalysis>& trials,
                            std::optional<double> cop_asymmetry = std::nullopt);

/// Self-describing JSON document, schema versioned by report_version.
std::string report_to_json(const BatchAnalysis& batch, const AnalysisConfig& config);

}  // namespace pushrec
