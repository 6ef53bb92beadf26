#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pushrec/lipm.hpp"
#include "pushrec/report.hpp"
#include "pushrec/resample.hpp"
#include "pushrec/synth.hpp"
#include "pushrec/trial_io.hpp"

namespace pushrec {

// File-level operations behind the CLI subcommands. Each reads and writes
// through the documented formats and nothing else.

struct IngestOptions {
    ConversionConfig conversion;
    int rest_window = 10;
};

/// Raw counts file -> converted-units file.
void run_ingest_file(const std::string& input, const std::string& output,
                     const IngestOptions& opts = {});

struct SmoothOptions {
    SmoothMethod method = SplineMethod{};
    std::optional<double> resample_hz;  // default: evaluate on the original grid
};

/// Smooth every column of a t-leading CSV (generic or converted trial).
void run_smooth_file(const std::string& input, const std::string& output,
                     const SmoothOptions& opts = {});

struct SimulateOptions {
    LipmParams params = LipmParams::make(9.8, 0.98, 50.0);
    FootGeometry foot;
    PhasePoint initial;
    double impulse_ns = 0.0;
    CopPolicy policy = CopPolicy::CaptureCop;
    PhaseOptions phase;
    std::string phase_out;     // CSV t,x,xdot,p ("" = skip)
    std::string boundary_out;  // CSV x,xdot_boundary ("" = skip)
    std::string report_out;    // JSON ("" = skip)
};

RecoveryReport run_simulate(const SimulateOptions& opts);

/// Boundary line samples over [cop_min - 0.3, cop_max + 0.3].
ColumnsFile boundary_columns(const LipmParams& params, const FootGeometry& foot,
                             int points = 101);

ColumnsFile phase_columns(const PhaseTrajectory& traj);

std::string simulate_report_json(const RecoveryReport& report, const SimulateOptions& opts);

struct AnalyzeOptions {
    AnalysisConfig config;
    std::string cop_left;   // optional per-foot force CSV (t,force)
    std::string cop_right;
    int threads = 0;        // 0 = hardware concurrency
};

/// Analyze one or more trial files (raw or converted; mixing the two
/// schemas is an error) and render the JSON report.
BatchAnalysis run_analyze(const std::vector<std::string>& inputs, const std::string& output,
                          const AnalyzeOptions& opts = {});

struct SynthOptions {
    SubjectMeta meta{1.75, 70.0, Sex::Male, Handedness::Right, 30.0};
    PushCondition condition;
    PushSpec push;
    double noise_rms_counts = 0.0;
    std::uint32_t seed = 0;
    SynthConfig config;
};

void run_synth(const SynthOptions& opts, const std::string& output);

enum class PlotKind { Auto, Phase, Series };

struct PlotOptions {
    PlotKind kind = PlotKind::Auto;
    std::string boundary;  // optional boundary CSV for phase plots
    std::string title;
};

void run_plot(const std::string& input, const std::string& output,
              const PlotOptions& opts = {});

/// Run fn(i) for i in [0, count) over a small thread pool; exceptions are
/// rethrown on the caller. Workers only touch disjoint indices.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace pushrec
