#include "pushrec/types.hpp"

#include <cmath>
#include <limits>

namespace pushrec {

std::string to_string(Joint j) {
    switch (j) {
        case Joint::Hip: return "hip";
        case Joint::Knee: return "knee";
        case Joint::Ankle: return "ankle";
    }
    return "?";
}

std::string to_string(Side s) { return s == Side::Right ? "right" : "left"; }
std::string to_string(Sex s) { return s == Sex::Male ? "male" : "female"; }

std::string to_string(Handedness h) {
    switch (h) {
        case Handedness::Left: return "left";
        case Handedness::Right: return "right";
        case Handedness::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Eyes e) { return e == Eyes::Open ? "open" : "closed"; }
std::string to_string(Lunging l) { return l == Lunging::With ? "with" : "without"; }
std::string to_string(Stance s) { return s == Stance::Static ? "static" : "dynamic"; }

Sex sex_from_string(const std::string& s) {
    if (s == "male") return Sex::Male;
    if (s == "female") return Sex::Female;
    throw DataError("unknown sex '" + s + "' (expected male|female)");
}

Handedness handedness_from_string(const std::string& s) {
    if (s == "left") return Handedness::Left;
    if (s == "right") return Handedness::Right;
    if (s == "unknown") return Handedness::Unknown;
    throw DataError("unknown handedness '" + s + "' (expected left|right|unknown)");
}

Eyes eyes_from_string(const std::string& s) {
    if (s == "open") return Eyes::Open;
    if (s == "closed") return Eyes::Closed;
    throw DataError("unknown eyes value '" + s + "' (expected open|closed)");
}

Lunging lunging_from_string(const std::string& s) {
    if (s == "with") return Lunging::With;
    if (s == "without") return Lunging::Without;
    throw DataError("unknown lunging value '" + s + "' (expected with|without)");
}

Stance stance_from_string(const std::string& s) {
    if (s == "static") return Stance::Static;
    if (s == "dynamic") return Stance::Dynamic;
    throw DataError("unknown stance value '" + s + "' (expected static|dynamic)");
}

static bool count_ok(int c) { return c >= kCountMin && c <= kCountMax; }

void RawTrial::validate() const {
    meta.validate();
    if (!(sample_rate_hz > 0)) throw DataError("sample rate must be positive");
    double prev_t = -std::numeric_limits<double>::infinity();
    for (const RawSample& s : samples) {
        if (!(s.t > prev_t)) throw DataError("timestamps must be strictly increasing");
        prev_t = s.t;
        for (int c : s.joint_counts)
            if (!count_ok(c)) throw DataError("joint count out of [0,999]");
        if (!count_ok(s.force_count)) throw DataError("force count out of [0,999]");
        for (int c : s.accel_counts)
            if (!count_ok(c)) throw DataError("accel count out of [0,999]");
        for (int c : s.gyro_counts)
            if (!count_ok(c)) throw DataError("gyro count out of [0,999]");
    }
}

double RawTrial::derive_rate(const std::vector<RawSample>& samples) {
    if (samples.size() < 2) return 1.0;
    const double span = samples.back().t - samples.front().t;
    if (!(span > 0)) return 1.0;
    return static_cast<double>(samples.size() - 1) / span;
}

}  // namespace pushrec
