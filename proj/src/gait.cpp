#include "pushrec/gait.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pushrec/spline.hpp"

namespace pushrec {

namespace {

// Raised-cosine lobe of unit height centered at c with support width w.
double hann_lobe(double phase, double center, double width) {
    const double d = phase - center;
    if (std::abs(d) > width / 2) return 0.0;
    return 0.5 * (1.0 + std::cos(2.0 * M_PI * d / width));
}

double wrap_phase(double phase) {
    double p = std::fmod(phase, 1.0);
    if (p < 0) p += 1.0;
    return p;
}

}  // namespace

IdealGait::IdealGait(double cycle_s, GaitAmplitudes amplitudes)
    : cycle_s_(cycle_s), amps_(amplitudes) {
    if (!(cycle_s > 0)) throw DataError("ideal gait: cycle duration must be positive");
    if (amps_.hip_deg < 0 || amps_.knee_deg < 0 || amps_.ankle_deg < 0)
        throw DataError("ideal gait: amplitudes must be non-negative");
}

double IdealGait::eval(Joint j, double phase) const {
    const double p = wrap_phase(phase);
    switch (j) {
        case Joint::Hip:
            return amps_.hip_deg * std::sin(2.0 * M_PI * p);
        case Joint::Knee:
            // stance-flexion hump then the larger swing hump
            return amps_.knee_deg *
                   (0.45 * hann_lobe(p, 0.22, 0.30) + 1.00 * hann_lobe(p, 0.72, 0.36));
        case Joint::Ankle:
            // push-off and landing: narrower, sharper lobes
            return amps_.ankle_deg *
                   (1.00 * hann_lobe(p, 0.48, 0.14) + 0.70 * hann_lobe(p, 0.88, 0.12));
    }
    return 0.0;
}

Eigen::VectorXd IdealGait::sample(Joint j, int n) const {
    if (n < 1) throw DataError("ideal gait: need at least one sample");
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out[k] = eval(j, static_cast<double>(k) / n);
    return out;
}

int count_peaks(const Eigen::VectorXd& samples, double prominence) {
    const Eigen::Index n = samples.size();
    if (n < 3) return 0;
    const auto at = [&](Eigen::Index i) { return samples[((i % n) + n) % n]; };

    const auto norm = [&](Eigen::Index i) { return ((i % n) + n) % n; };
    int peaks = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = at(i);
        if (!(v > at(i - 1)) || !(v >= at(i + 1))) continue;

        // topographic prominence: descend on each side until higher ground;
        // exact ties break by index so twin maxima are not double-counted
        double key_saddle = -std::numeric_limits<double>::infinity();
        for (int dir : {-1, +1}) {
            double low = v;
            bool found_higher = false;
            for (Eigen::Index step = 1; step < n; ++step) {
                const double w = at(i + dir * step);
                if (w > v || (w == v && norm(i + dir * step) < norm(i))) {
                    found_higher = true;
                    break;
                }
                low = std::min(low, w);
            }
            if (found_higher) key_saddle = std::max(key_saddle, low);
        }
        if (key_saddle == -std::numeric_limits<double>::infinity())
            key_saddle = samples.minCoeff();  // the global maximum
        if (v - key_saddle >= prominence) ++peaks;
    }
    return peaks;
}

DeviationMetrics deviation_metrics(const JointSeries& series, const Baseline& baseline,
                                   int rest_window) {
    const Eigen::Index n = series.angle_deg.size();
    if (n == 0) throw DataError("deviation_metrics: empty series");
    if (rest_window < 1 || rest_window > n)
        throw DataError("deviation_metrics: rest window must be in [1, series length]");

    const double rest_mean = series.angle_deg.head(rest_window).mean();

    Eigen::VectorXd dev(n);
    if (std::holds_alternative<RestWindowBaseline>(baseline)) {
        const int w = std::get<RestWindowBaseline>(baseline).window_samples;
        if (w < 1 || w > n)
            throw DataError("deviation_metrics: baseline window must be in [1, series length]");
        dev = series.angle_deg.array() - series.angle_deg.head(w).mean();
    } else {
        const auto& ref = std::get<ReferenceBaseline>(baseline);
        const auto s = fit_natural_cubic_spline(ref.t, ref.value);
        for (Eigen::Index i = 0; i < n; ++i)
            dev[i] = series.angle_deg[i] - s.eval(series.t[i]);
    }

    DeviationMetrics m;
    m.rms_deviation = std::sqrt(dev.squaredNorm() / static_cast<double>(n));
    m.peak_deviation = dev.cwiseAbs().maxCoeff();
    m.activity_score = std::sqrt((series.angle_deg.array() - rest_mean).matrix().squaredNorm() /
                                 static_cast<double>(n));
    return m;
}

double asymmetry_component(const DeviationMetrics& left, const DeviationMetrics& right) {
    const double l = left.activity_score, r = right.activity_score;
    const double sum = l + r;
    if (sum == 0.0) return 0.0;
    return (l - r) / sum;
}

AsymmetryIndex asymmetry_index(const std::array<DeviationMetrics, 6>& per_channel) {
    AsymmetryIndex idx;
    idx.hip = asymmetry_component(per_channel[channel_index(Joint::Hip, Side::Left)],
                                  per_channel[channel_index(Joint::Hip, Side::Right)]);
    idx.knee = asymmetry_component(per_channel[channel_index(Joint::Knee, Side::Left)],
                                   per_channel[channel_index(Joint::Knee, Side::Right)]);
    idx.ankle = asymmetry_component(per_channel[channel_index(Joint::Ankle, Side::Left)],
                                    per_channel[channel_index(Joint::Ankle, Side::Right)]);
    return idx;
}

HandednessVerdict infer_handedness(const AsymmetryIndex& indices, const JointWeights& weights,
                                   double threshold) {
    if (weights.hip < 0 || weights.knee < 0 || weights.ankle < 0)
        throw DataError("handedness: weights must be non-negative");
    const double wsum = weights.hip + weights.knee + weights.ankle;
    if (!(wsum > 0)) throw DataError("handedness: weights must not all be zero");
    if (!(threshold >= 0)) throw DataError("handedness: threshold must be non-negative");

    HandednessVerdict v;
    v.aggregate =
        (weights.hip * indices.hip + weights.knee * indices.knee + weights.ankle * indices.ankle) /
        wsum;
    // left side working harder implicates the right hand, and vice versa
    if (v.aggregate > threshold) v.inferred = InferredHand::Right;
    else if (v.aggregate < -threshold) v.inferred = InferredHand::Left;
    else v.inferred = InferredHand::Indeterminate;
    v.confidence = std::clamp(std::abs(v.aggregate) / (2.0 * threshold), 0.0, 1.0);
    return v;
}

std::string to_string(InferredHand h) {
    switch (h) {
        case InferredHand::Left: return "left";
        case InferredHand::Right: return "right";
        case InferredHand::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return v[a] < v[b]; });
    Eigen::VectorXd ranks(n);
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;  // 1-based average rank of the tie run
        for (Eigen::Index k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw DataError("spearman: length mismatch");
    if (a.size() < 2) throw DataError("spearman: need at least two points");
    const Eigen::VectorXd ra = average_ranks(a), rb = average_ranks(b);
    const Eigen::VectorXd da = ra.array() - ra.mean(), db = rb.array() - rb.mean();
    const double va = da.squaredNorm(), vb = db.squaredNorm();
    if (va == 0.0 || vb == 0.0) return 0.0;  // ties everywhere: 0 by convention
    return da.dot(db) / std::sqrt(va * vb);
}

TradeoffReport knee_ankle_tradeoff(
    const std::vector<std::array<SideActivity, 2>>& activities) {
    TradeoffReport report;
    const auto ratio = [](const SideActivity& s) -> std::optional<double> {
        if (s.ankle == 0.0) return std::nullopt;
        return s.knee / s.ankle;
    };
    for (const auto& trial : activities) {
        const SideActivity& r = trial[static_cast<int>(Side::Right)];
        const SideActivity& l = trial[static_cast<int>(Side::Left)];
        TradeoffTrial t;
        t.knee_ankle_ratio_right = ratio(r);
        t.knee_ankle_ratio_left = ratio(l);
        const double cross = (l.knee - r.knee) * (l.ankle - r.ankle);
        t.cross_side_sign = cross > 0 ? 1 : cross < 0 ? -1 : 0;
        report.trials.push_back(t);
    }
    const auto n = static_cast<Eigen::Index>(activities.size());
    if (n >= 3) {
        for (Side side : kSides) {
            Eigen::VectorXd knee(n), ankle(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                knee[i] = activities[i][static_cast<int>(side)].knee;
                ankle[i] = activities[i][static_cast<int>(side)].ankle;
            }
            const double rho = spearman(knee, ankle);
            (side == Side::Right ? report.spearman_right : report.spearman_left) = rho;
        }
    }
    return report;
}

double cop_asymmetry(const ForceSeries& left_foot, const ForceSeries& right_foot) {
    if (left_foot.force_n.size() == 0 || right_foot.force_n.size() == 0)
        throw DataError("cop_asymmetry: empty force series");
    const double l = left_foot.force_n.mean();
    const double r = right_foot.force_n.mean();
    if (l + r == 0.0) return 0.0;
    return (l - r) / (l + r);
}

RawTrial mirror_trial(const RawTrial& trial) {
    RawTrial out = trial;
    for (RawSample& s : out.samples)
        for (Joint j : kJoints)
            std::swap(s.joint_counts[channel_index(j, Side::Right)],
                      s.joint_counts[channel_index(j, Side::Left)]);
    return out;
}

}  // namespace pushrec
