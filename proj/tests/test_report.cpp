#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "pushrec/report.hpp"
#include "pushrec/synth.hpp"

using namespace pushrec;
using nlohmann::json;

TEST_CASE("analysis report JSON carries the schema version and all sections") {
    const SubjectMeta meta{1.75, 70.0, Sex::Male, Handedness::Right, 30.0};
    const PushCondition cond{Eyes::Closed, Lunging::Without, Stance::Static};
    const AnalysisConfig config;

    std::vector<TrialAnalysis> trials;
    for (std::uint32_t seed : {1u, 2u, 3u})
        trials.push_back(analyze_trial(
            synthesize_trial(meta, cond, {3.0, 1.0}, 1.0, seed), config,
            "trial_" + std::to_string(seed) + ".csv"));
    const BatchAnalysis batch = analyze_batch(trials, 0.2);

    const std::string text = report_to_json(batch, config);
    const json j = json::parse(text);

    CHECK(j["report_version"] == kReportVersion);
    CHECK(j["config"]["rest_window_samples"] == 10);
    CHECK(j["config"]["weights"]["knee"] == 0.5);
    REQUIRE(j["trials"].size() == 3);
    const json& t0 = j["trials"][0];
    CHECK(t0["source"] == "trial_1.csv");
    CHECK(t0["subject"]["handedness"] == "right");
    CHECK(t0["condition"]["stance"] == "static");
    CHECK(t0["joints"].contains("left_knee"));
    CHECK(t0["joints"]["left_knee"].contains("activity_score_deg"));
    CHECK(t0["handedness"]["inferred"] == "right");
    CHECK(j["knee_ankle_tradeoff"]["per_trial"].size() == 3);
    CHECK(j["knee_ankle_tradeoff"].contains("spearman_left"));
    CHECK(j["cop_asymmetry"] == 0.2);
    REQUIRE(j["conditions"].size() == 1);
    CHECK(j["conditions"][0] == "closed,without,static");
}

TEST_CASE("report JSON is deterministic") {
    const SubjectMeta meta{1.68, 60.0, Sex::Female, Handedness::Left, 22.0};
    const PushCondition cond{Eyes::Open, Lunging::With, Stance::Dynamic};
    const AnalysisConfig config;
    const auto make = [&] {
        std::vector<TrialAnalysis> trials{
            analyze_trial(synthesize_trial(meta, cond, {2.0, 1.0}, 2.0, 9), config, "a.csv")};
        return report_to_json(analyze_batch(trials), config);
    };
    CHECK(make() == make());
}

TEST_CASE("the eight push conditions are distinct and round-trip") {
    std::vector<std::string> seen;
    for (Eyes e : {Eyes::Open, Eyes::Closed})
        for (Lunging l : {Lunging::With, Lunging::Without})
            for (Stance s : {Stance::Static, Stance::Dynamic}) {
                const std::string tag =
                    to_string(e) + "," + to_string(l) + "," + to_string(s);
                CHECK(std::find(seen.begin(), seen.end(), tag) == seen.end());
                seen.push_back(tag);
                CHECK(eyes_from_string(to_string(e)) == e);
                CHECK(lunging_from_string(to_string(l)) == l);
                CHECK(stance_from_string(to_string(s)) == s);
            }
    CHECK(seen.size() == 8);
}

TEST_CASE("batch without cop input reports null asymmetry") {
    const json j = json::parse(report_to_json(analyze_batch({}), AnalysisConfig{}));
    CHECK(j["cop_asymmetry"].is_null());
    CHECK(j["trials"].empty());
    CHECK(j["knee_ankle_tradeoff"]["spearman_left"].is_null());
}
