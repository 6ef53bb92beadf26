#include "pushrec/report.hpp"

#include <algorithm>
#include <json.hpp>

namespace pushrec {

using ordered_json = nlohmann::ordered_json;

TrialAnalysis analyze_converted(const ConvertedTrial& trial, const AnalysisConfig& config,
                                const std::string& source) {
    TrialAnalysis a;
    a.source = source;
    a.meta = trial.meta;
    a.condition = trial.condition;
    for (int c = 0; c < 6; ++c)
        a.metrics[c] = deviation_metrics(trial.joints[c],
                                         RestWindowBaseline{config.rest_window},
                                         config.rest_window);
    a.asymmetry = asymmetry_index(a.metrics);
    a.handedness = infer_handedness(a.asymmetry, config.weights, config.threshold);
    return a;
}

TrialAnalysis analyze_trial(const RawTrial& trial, const AnalysisConfig& config,
                            const std::string& source) {
    const JointCounts theta0 = zero_correct(trial, config.rest_window);
    return analyze_converted(convert_trial(trial, theta0, config.conversion), config, source);
}

BatchAnalysis analyze_batch(const std::vector<TrialAnalysis>& trials,
                            std::optional<double> cop_asymmetry) {
    BatchAnalysis batch;
    batch.trials = trials;
    std::vector<std::array<SideActivity, 2>> activities;
    for (const TrialAnalysis& t : trials) {
        std::array<SideActivity, 2> a{};
        for (Side s : kSides) {
            a[static_cast<int>(s)].knee =
                t.metrics[channel_index(Joint::Knee, s)].activity_score;
            a[static_cast<int>(s)].ankle =
                t.metrics[channel_index(Joint::Ankle, s)].activity_score;
        }
        activities.push_back(a);
    }
    batch.tradeoff = knee_ankle_tradeoff(activities);
    batch.cop_asymmetry_index = cop_asymmetry;
    return batch;
}

namespace {

ordered_json metrics_json(const DeviationMetrics& m) {
    return {{"rms_deviation_deg", m.rms_deviation},
            {"peak_deviation_deg", m.peak_deviation},
            {"activity_score_deg", m.activity_score}};
}

ordered_json trial_json(const TrialAnalysis& t) {
    ordered_json j;
    j["source"] = t.source;
    j["subject"] = {{"height_m", t.meta.height_m},
                    {"weight_kg", t.meta.weight_kg},
                    {"sex", to_string(t.meta.sex)},
                    {"handedness", to_string(t.meta.handedness)},
                    {"age", t.meta.age_years}};
    j["condition"] = {{"eyes", to_string(t.condition.eyes)},
                      {"lunging", to_string(t.condition.lunging)},
                      {"stance", to_string(t.condition.stance)}};
    ordered_json joints;
    for (Joint joint : kJoints)
        for (Side side : kSides)
            joints[to_string(side) + "_" + to_string(joint)] =
                metrics_json(t.metrics[channel_index(joint, side)]);
    j["joints"] = joints;
    j["asymmetry"] = {{"hip", t.asymmetry.hip},
                      {"knee", t.asymmetry.knee},
                      {"ankle", t.asymmetry.ankle}};
    j["handedness"] = {{"inferred", to_string(t.handedness.inferred)},
                       {"confidence", t.handedness.confidence},
                       {"aggregate_asymmetry", t.handedness.aggregate}};
    return j;
}

ordered_json optional_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace

std::string report_to_json(const BatchAnalysis& batch, const AnalysisConfig& config) {
    ordered_json j;
    j["report_version"] = kReportVersion;
    j["config"] = {{"angle_scale_deg_per_count", config.conversion.angle_scale_deg_per_count},
                   {"rest_window_samples", config.rest_window},
                   {"weights", {{"hip", config.weights.hip},
                                {"knee", config.weights.knee},
                                {"ankle", config.weights.ankle}}},
                   {"indeterminate_threshold", config.threshold}};
    ordered_json trials = ordered_json::array();
    for (const TrialAnalysis& t : batch.trials) trials.push_back(trial_json(t));
    j["trials"] = trials;

    // condition taxonomy covered by this batch (of the eight combinations)
    std::vector<std::string> conditions;
    for (const TrialAnalysis& t : batch.trials) {
        const std::string c = to_string(t.condition.eyes) + "," +
                              to_string(t.condition.lunging) + "," +
                              to_string(t.condition.stance);
        if (std::find(conditions.begin(), conditions.end(), c) == conditions.end())
            conditions.push_back(c);
    }
    std::sort(conditions.begin(), conditions.end());
    j["conditions"] = conditions;

    ordered_json tradeoff;
    ordered_json per_trial = ordered_json::array();
    for (const TradeoffTrial& t : batch.tradeoff.trials)
        per_trial.push_back({{"knee_ankle_ratio_right", optional_json(t.knee_ankle_ratio_right)},
                             {"knee_ankle_ratio_left", optional_json(t.knee_ankle_ratio_left)},
                             {"cross_side_sign", t.cross_side_sign}});
    tradeoff["per_trial"] = per_trial;
    tradeoff["spearman_right"] = optional_json(batch.tradeoff.spearman_right);
    tradeoff["spearman_left"] = optional_json(batch.tradeoff.spearman_left);
    j["knee_ankle_tradeoff"] = tradeoff;

    j["cop_asymmetry"] = optional_json(batch.cop_asymmetry_index);
    return j.dump(2) + "\n";
}

}  // namespace pushrec
