#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pushrec/errors.hpp"

namespace pushrec {

inline constexpr int kCountMin = 0;
inline constexpr int kCountMax = 999;

enum class Joint { Hip, Knee, Ankle };
enum class Side { Right, Left };
enum class Sex { Male, Female };
enum class Handedness { Left, Right, Unknown };
enum class Eyes { Open, Closed };
enum class Lunging { With, Without };
enum class Stance { Static, Dynamic };

inline constexpr std::array<Joint, 3> kJoints{Joint::Hip, Joint::Knee, Joint::Ankle};
inline constexpr std::array<Side, 2> kSides{Side::Right, Side::Left};

/// Channel index in the trial file column order
/// (rhip, lhip, rknee, lknee, rankle, lankle).
inline constexpr int channel_index(Joint j, Side s) {
    return static_cast<int>(j) * 2 + static_cast<int>(s);
}

std::string to_string(Joint j);
std::string to_string(Side s);
std::string to_string(Sex s);
std::string to_string(Handedness h);
std::string to_string(Eyes e);
std::string to_string(Lunging l);
std::string to_string(Stance s);

// Inverse of to_string; throws DataError on unknown token.
Sex sex_from_string(const std::string& s);
Handedness handedness_from_string(const std::string& s);
Eyes eyes_from_string(const std::string& s);
Lunging lunging_from_string(const std::string& s);
Stance stance_from_string(const std::string& s);

struct SubjectMeta {
    double height_m = 0.0;
    double weight_kg = 0.0;
    Sex sex = Sex::Male;
    Handedness handedness = Handedness::Unknown;
    double age_years = 0.0;

    void validate() const {
        if (!(height_m > 0)) throw DataError("subject height must be positive");
        if (!(weight_kg > 0)) throw DataError("subject weight must be positive");
        if (!(age_years > 0)) throw DataError("subject age must be positive");
    }
};

/// One of the eight push conditions: eyes x lunging x stance.
struct PushCondition {
    Eyes eyes = Eyes::Closed;
    Lunging lunging = Lunging::Without;
    Stance stance = Stance::Static;

    bool operator==(const PushCondition&) const = default;
};

struct RawSample {
    double t = 0.0;                       // seconds
    std::array<int, 6> joint_counts{};    // rhip, lhip, rknee, lknee, rankle, lankle
    int force_count = 0;
    std::array<int, 3> accel_counts{};    // ax, ay, az
    std::array<int, 3> gyro_counts{};     // gx, gy, gz

    bool operator==(const RawSample&) const = default;
};

/// A full captured trial in digital counts, all channels in [0, 999].
struct RawTrial {
    SubjectMeta meta;
    PushCondition condition;
    std::vector<RawSample> samples;
    double sample_rate_hz = 1.0;  // derived from the time column on parse

    void validate() const;

    /// Nominal rate from the time column: (n-1)/span, or 1 Hz for
    /// trials too short to define one.
    static double derive_rate(const std::vector<RawSample>& samples);
};

/// Zero-corrected joint angle series, degrees of change from rest.
struct JointSeries {
    Joint joint = Joint::Hip;
    Side side = Side::Right;
    Eigen::VectorXd t;
    Eigen::VectorXd angle_deg;
};

struct ForceSeries {
    Eigen::VectorXd t;
    Eigen::VectorXd force_n;
};

struct ImuSeries {
    Eigen::VectorXd t;
    Eigen::MatrixX3d accel_g;
    Eigen::MatrixX3d gyro_dps;
};

}  // namespace pushrec
