#include "pushrec/pipeline.hpp"

#include <atomic>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "pushrec/svg.hpp"
#include "pushrec/trial_io.hpp"

namespace pushrec {

void run_ingest_file(const std::string& input, const std::string& output,
                     const IngestOptions& opts) {
    const RawTrial trial = parse_trial_file(input);
    const JointCounts theta0 = zero_correct(trial, opts.rest_window);
    write_converted_file(output, convert_trial(trial, theta0, opts.conversion));
}

void run_smooth_file(const std::string& input, const std::string& output,
                     const SmoothOptions& opts) {
    ColumnsFile f = read_columns_file(input);
    if (f.header.empty() || f.header[0] != "t")
        throw DataError(input + ": smoothing needs a leading 't' column, got '" +
                        (f.header.empty() ? "" : f.header[0]) + "'");
    const Eigen::VectorXd t = f.data.col(0);

    Eigen::VectorXd grid;
    if (opts.resample_hz) {
        if (t.size() < 2)
            throw DataError(input + ": resampling needs at least two samples");
        grid = uniform_grid(t[0], t[t.size() - 1], *opts.resample_hz);
    } else {
        grid = t;
    }

    // degree cap keeps high-order fits well posed on short records
    SmoothMethod method = opts.method;
    if (std::holds_alternative<PolyMethod>(method)) {
        auto& poly = std::get<PolyMethod>(method);
        poly.degree = std::min<int>(poly.degree,
                                    std::min<int>(15, static_cast<int>(t.size()) - 1));
    }

    Eigen::MatrixXd out(grid.size(), f.data.cols());
    out.col(0) = grid;
    for (Eigen::Index c = 1; c < f.data.cols(); ++c)
        out.col(c) = smooth_eval(t, f.data.col(c), method, grid);

    ColumnsFile result;
    result.preamble = f.preamble;
    result.header = f.header;
    result.data = out;
    write_columns_file(output, result);
}

ColumnsFile phase_columns(const PhaseTrajectory& traj) {
    ColumnsFile f;
    f.header = {"t", "x", "xdot", "p"};
    f.data.resize(traj.t.size(), 4);
    f.data.col(0) = traj.t;
    f.data.col(1) = traj.x;
    f.data.col(2) = traj.xdot;
    f.data.col(3) = traj.p;
    return f;
}

ColumnsFile boundary_columns(const LipmParams& params, const FootGeometry& foot, int points) {
    const DecisionBoundary b = decision_boundary(params, foot);
    ColumnsFile f;
    f.header = {"x", "xdot_boundary"};
    f.data.resize(points, 2);
    const double lo = foot.cop_min - 0.3, hi = foot.cop_max + 0.3;
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        f.data(i, 0) = x;
        f.data(i, 1) = b.xdot_at(x);
    }
    return f;
}

std::string simulate_report_json(const RecoveryReport& report, const SimulateOptions& opts) {
    nlohmann::ordered_json j;
    j["report_version"] = kReportVersion;
    j["params"] = {{"g", opts.params.g},
                   {"z0", opts.params.z0},
                   {"mass", opts.params.mass},
                   {"omega", opts.params.omega}};
    j["foot"] = {{"cop_min", opts.foot.cop_min}, {"cop_max", opts.foot.cop_max}};
    j["push"] = {{"impulse_ns", opts.impulse_ns}};
    j["verdict"] = report.verdict == Verdict::Recoverable ? "recoverable" : "fall";
    j["capture_point_m"] = report.capture_point;
    j["boundary_margin_mps"] = report.boundary_margin;
    j["trajectory_samples"] = report.trajectory.t.size();
    return j.dump(2) + "\n";
}

RecoveryReport run_simulate(const SimulateOptions& opts) {
    const RecoveryReport report = phase_trajectory(opts.params, opts.foot, opts.initial,
                                                   opts.impulse_ns, opts.policy, opts.phase);
    if (!opts.phase_out.empty())
        write_columns_file(opts.phase_out, phase_columns(report.trajectory));
    if (!opts.boundary_out.empty())
        write_columns_file(opts.boundary_out, boundary_columns(opts.params, opts.foot));
    if (!opts.report_out.empty())
        write_text_file(opts.report_out, simulate_report_json(report, opts));
    return report;
}

namespace {

enum class TrialSchema { Raw, Converted };

TrialSchema detect_schema(const std::string& text, const std::string& name) {
    // the data header sits on line 5 of both formats
    size_t pos = 0;
    for (int skip = 0; skip < 4; ++skip) {
        pos = text.find('\n', pos);
        if (pos == std::string::npos)
            throw ParseError(name, skip + 1, "header", "truncated file");
        ++pos;
    }
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string header = text.substr(pos, end - pos);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header == kRawColumnsHeader) return TrialSchema::Raw;
    if (header == kConvertedColumnsHeader) return TrialSchema::Converted;
    throw ParseError(name, 5, "header", "unrecognized data header");
}

ForceSeries read_force_series(const std::string& path) {
    const ColumnsFile f = read_columns_file(path);
    if (f.header.size() < 2 || f.header[0] != "t")
        throw DataError(path + ": expected a t,force CSV");
    ForceSeries s;
    s.t = f.data.col(0);
    s.force_n = f.data.col(1);
    return s;
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min(n, count));
    if (n == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

BatchAnalysis run_analyze(const std::vector<std::string>& inputs, const std::string& output,
                          const AnalyzeOptions& opts) {
    if (inputs.empty()) throw DataError("analyze: no input files");

    std::vector<std::string> texts(inputs.size());
    std::vector<TrialSchema> schemas(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) {
        texts[i] = read_text_file(inputs[i]);
        schemas[i] = detect_schema(texts[i], inputs[i]);
    }
    for (size_t i = 1; i < inputs.size(); ++i)
        if (schemas[i] != schemas[0])
            throw DataError("analyze: mixed schema versions: " + inputs[0] + " is " +
                            (schemas[0] == TrialSchema::Raw ? "raw counts" : "converted") +
                            " but " + inputs[i] + " is not");

    std::vector<TrialAnalysis> trials(inputs.size());
    parallel_for(static_cast<int>(inputs.size()), opts.threads, [&](int i) {
        if (schemas[i] == TrialSchema::Raw) {
            const RawTrial t = parse_trial(texts[i], inputs[i]);
            trials[i] = analyze_trial(t, opts.config, inputs[i]);
        } else {
            const ConvertedTrial t = parse_converted(texts[i], inputs[i]);
            trials[i] = analyze_converted(t, opts.config, inputs[i]);
        }
    });

    std::optional<double> cop;
    if (!opts.cop_left.empty() || !opts.cop_right.empty()) {
        if (opts.cop_left.empty() || opts.cop_right.empty())
            throw DataError("analyze: need both --cop-left and --cop-right");
        cop = cop_asymmetry(read_force_series(opts.cop_left),
                            read_force_series(opts.cop_right));
    }

    const BatchAnalysis batch = analyze_batch(trials, cop);
    if (!output.empty()) write_text_file(output, report_to_json(batch, opts.config));
    return batch;
}

void run_synth(const SynthOptions& opts, const std::string& output) {
    write_trial_file(output, synthesize_trial(opts.meta, opts.condition, opts.push,
                                              opts.noise_rms_counts, opts.seed, opts.config));
}

void run_plot(const std::string& input, const std::string& output, const PlotOptions& opts) {
    const ColumnsFile f = read_columns_file(input);
    PlotKind kind = opts.kind;
    if (kind == PlotKind::Auto) {
        kind = (f.header == std::vector<std::string>{"t", "x", "xdot", "p"})
                   ? PlotKind::Phase
                   : PlotKind::Series;
    }

    std::vector<SvgSeries> series;
    SvgOptions svg_opts;
    svg_opts.title = opts.title.empty() ? input : opts.title;

    if (kind == PlotKind::Phase) {
        if (f.header.size() < 3)
            throw DataError(input + ": phase plot needs t,x,xdot columns");
        series.push_back({"CoM trajectory", f.data.col(1), f.data.col(2), false});
        if (!opts.boundary.empty()) {
            const ColumnsFile b = read_columns_file(opts.boundary);
            if (b.header.size() < 2)
                throw DataError(opts.boundary + ": expected x,xdot_boundary columns");
            series.push_back({"decision boundary", b.data.col(0), b.data.col(1), true});
        }
        svg_opts.x_label = "x (m)";
        svg_opts.y_label = "xdot (m/s)";
    } else {
        if (f.header.size() < 2)
            throw DataError(input + ": need at least one value column");
        for (Eigen::Index c = 1; c < f.data.cols(); ++c)
            series.push_back({f.header[static_cast<size_t>(c)], f.data.col(0), f.data.col(c),
                              false});
        svg_opts.x_label = "t (s)";
        svg_opts.y_label = "value";
    }
    write_text_file(output, render_svg(series, svg_opts));
}

}  // namespace pushrec
